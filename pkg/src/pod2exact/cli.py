"""Command line interface: ``pod2exact {count,exact,verify,kloosterman,checks}``.

Exit codes: 0 success, 1 failed checks, 2 non-convergence (or a usage
error from argparse), 3 mismatch against the oracle.

JSON output is deterministic: ``ms`` is ``null`` unless ``--timing`` is given.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

from .analytic import QuadratureConfig
from .checks import SUITES, run_suite
from .kloosterman import FAMILIES, KloostermanSpec, kloosterman_closed, kloosterman_definition
from .qseries import pod2_count_table
from .rademacher import FAMILY_ORDER, TruncationPolicy, contribution_table, pod2_exact

EXIT_OK, EXIT_FAIL, EXIT_NONCONVERGED, EXIT_MISMATCH = 0, 1, 2, 3

RECORD_KEYS = ("n", "oracle", "estimate", "rounded", "diff", "imag_residual", "converged",
               "per_family", "k_max", "quad_tol", "ms")


def _positive_int(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _nonneg_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s}")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return v


def _precision(s: str) -> int | None:
    if s == "double":
        return None
    if s.startswith("extended:"):
        digits = s.split(":", 1)[1]
        if digits.isdigit() and int(digits) >= 15:
            return int(digits)
    raise argparse.ArgumentTypeError("precision must be 'double' or 'extended:<digits>' with digits >= 15")


def _add_formula_flags(p: argparse.ArgumentParser) -> None:
    d = TruncationPolicy()
    p.add_argument("--kmax", type=_positive_int, default=d.k_max)
    p.add_argument("--quad-tol", type=_positive_float, default=QuadratureConfig().abs_tol)
    p.add_argument("--tail-window", type=_positive_int, default=d.tail_window)
    p.add_argument("--tail-threshold", type=_positive_float, default=d.tail_threshold)
    p.add_argument("--precision", type=_precision, default=None, help="double | extended:<digits>")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="one JSON object per line")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--timing", action="store_true", help="fill the ms field with wall time")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pod2exact", description="Exact formula for pod2(n) and its verification harness.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="pod2(n) from the partition-counting oracle")
    p.add_argument("start", type=_nonneg_int)
    p.add_argument("stop", type=_nonneg_int)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    p = sub.add_parser("exact", help="evaluate the exact formula at one n")
    p.add_argument("n", type=_nonneg_int)
    _add_formula_flags(p)
    p.add_argument("--check", action="store_true", help="exit 2/3 unless converged and equal to the oracle")
    p.add_argument("--table", action="store_true", help="print the per-family, per-k contributions")

    p = sub.add_parser("verify", help="compare the exact formula with the oracle over a range")
    p.add_argument("start", type=_nonneg_int)
    p.add_argument("stop", type=_nonneg_int)
    _add_formula_flags(p)

    p = sub.add_parser("kloosterman", help="evaluate one Kloosterman sum")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("k", type=_positive_int)
    p.add_argument("n", type=int)
    p.add_argument("m", type=int, nargs="?", default=0)
    p.add_argument("v", type=int, nargs="?", default=None, help="required index for x21 families (default 0)")
    form = p.add_mutually_exclusive_group()
    form.add_argument("--definition", dest="form", action="store_const", const="definition")
    form.add_argument("--closed", dest="form", action="store_const", const="closed")
    form.add_argument("--both", dest="form", action="store_const", const="both")

    p = sub.add_parser("checks", help="run verification suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--json", action="store_true")
    return parser


# -- records -----------------------------------------------------------------


def make_record(result, oracle: int, ms: float | None) -> dict:
    per_family = [{"family": fc.family, "re": fc.total.real, "im": fc.total.imag, "abs": abs(fc.total)}
                  for fc in result.per_family]
    return {
        "n": result.n,
        "oracle": oracle,
        "estimate": result.estimate,
        "rounded": result.rounded,
        "diff": result.diff,
        "imag_residual": result.imag_residual,
        "converged": result.converged,
        "per_family": per_family,
        "k_max": result.k_max,
        "quad_tol": result.quad_tol,
        "ms": ms,
    }


def csv_header() -> list[str]:
    cols = [k for k in RECORD_KEYS if k != "per_family"]
    for fam in FAMILY_ORDER:
        cols += [f"{fam}_re", f"{fam}_im", f"{fam}_abs"]
    return cols


def record_to_row(rec: dict) -> list[str]:
    row = []
    for k in RECORD_KEYS:
        if k == "per_family":
            continue
        v = rec[k]
        row.append("" if v is None else repr(v) if isinstance(v, float) else str(v))
    for pf in rec["per_family"]:
        row += [repr(pf["re"]), repr(pf["im"]), repr(pf["abs"])]
    return row


def row_to_record(row: dict) -> dict:
    """Inverse of :func:`record_to_row` for a ``csv.DictReader`` row."""
    rec = {
        "n": int(row["n"]),
        "oracle": int(row["oracle"]),
        "estimate": float(row["estimate"]),
        "rounded": int(row["rounded"]),
        "diff": float(row["diff"]),
        "imag_residual": float(row["imag_residual"]),
        "converged": row["converged"] == "True",
        "per_family": [{"family": f, "re": float(row[f"{f}_re"]), "im": float(row[f"{f}_im"]), "abs": float(row[f"{f}_abs"])}
                       for f in FAMILY_ORDER],
        "k_max": int(row["k_max"]),
        "quad_tol": float(row["quad_tol"]),
        "ms": float(row["ms"]) if row["ms"] else None,
    }
    return {k: rec[k] for k in RECORD_KEYS}


def _bar(x: float) -> str:
    # one mark per decade above 1e-6
    return "#" * max(0, min(30, int(math.log10(x) + 7))) if x > 0 else ""


def _human(rec: dict) -> str:
    status = "converged" if rec["converged"] else "NOT converged"
    lines = [f"n={rec['n']} estimate={rec['estimate']:.10f} rounded={rec['rounded']} oracle={rec['oracle']} "
             f"diff={rec['diff']:.3e} imag={rec['imag_residual']:.2e} k_max={rec['k_max']} {status}"]
    for pf in rec["per_family"]:
        lines.append(f"  {pf['family']} {pf['abs']:12.6e} {_bar(pf['abs'])}")
    return "\n".join(lines)


def _run_one(n: int, args, oracle: int):
    policy = TruncationPolicy(args.kmax, args.tail_window, args.tail_threshold)
    cfg = QuadratureConfig(abs_tol=args.quad_tol, precision=args.precision)
    t = time.perf_counter()
    result = pod2_exact(n, policy, cfg)
    ms = round((time.perf_counter() - t) * 1000, 3) if args.timing else None
    return result, make_record(result, oracle, ms)


def _emit(records: list[dict], args, out) -> None:
    if args.json:
        for r in records:
            out.write(json.dumps(r) + "\n")
    elif args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(csv_header())
        for r in records:
            w.writerow(record_to_row(r))
    else:
        for r in records:
            out.write(_human(r) + "\n")


def _status(records: list[dict]) -> int:
    if any(r["rounded"] != r["oracle"] for r in records):
        return EXIT_MISMATCH
    if any(not r["converged"] for r in records):
        return EXIT_NONCONVERGED
    return EXIT_OK


# -- commands ----------------------------------------------------------------


def cmd_count(args, out) -> int:
    table = pod2_count_table(args.stop)
    rows = [(n, table[n]) for n in range(args.start, args.stop + 1)]
    if args.json:
        for n, c in rows:
            out.write(json.dumps({"n": n, "pod2": c}) + "\n")
    elif args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "pod2"])
        w.writerows(rows)
    else:
        for n, c in rows:
            out.write(f"{n} {c}\n")
    return EXIT_OK


def cmd_exact(args, out) -> int:
    oracle = pod2_count_table(args.n)[args.n]
    result, rec = _run_one(args.n, args, oracle)
    _emit([rec], args, out)
    if args.table or (args.check and (rec["rounded"] != oracle or not rec["converged"])):
        sys.stderr.write(contribution_table(result) + "\n")
    return _status([rec]) if args.check else EXIT_OK


def cmd_verify(args, out) -> int:
    table = pod2_count_table(args.stop)
    records, failed = [], []
    for n in range(args.start, args.stop + 1):
        result, rec = _run_one(n, args, table[n])
        records.append(rec)
        if rec["rounded"] != rec["oracle"] or not rec["converged"]:
            failed.append(result)
    _emit(records, args, out)
    if not (args.json or args.csv):
        out.write(f"summary: {len(records)} values, max diff {max(r['diff'] for r in records):.3e}, "
                  f"max imag {max(r['imag_residual'] for r in records):.3e}, "
                  f"mismatches {sum(r['rounded'] != r['oracle'] for r in records)}, "
                  f"not converged {sum(not r['converged'] for r in records)}\n")
    for result in failed:
        sys.stderr.write(contribution_table(result) + "\n")
    return _status(records)


def cmd_kloosterman(args, out, parser) -> int:
    v = args.v
    if args.family[1] == "2" and v is None:
        v = 0
    try:
        spec = KloostermanSpec(args.family, args.k, args.n, args.m, v)
    except ValueError as exc:
        parser.error(str(exc))
    form = args.form or "definition"
    if form in ("definition", "both"):
        d = kloosterman_definition(spec).value
        out.write(f"definition {d.real:.15g} {d.imag:+.15g}i\n")
    if form in ("closed", "both"):
        c = kloosterman_closed(spec).value
        out.write(f"closed     {c.real:.15g} {c.imag:+.15g}i\n")
    if form == "both":
        out.write(f"diff       {abs(d - c):.3e}\n")
    return EXIT_OK


def cmd_checks(args, out) -> int:
    reports = run_suite(args.suite)
    if args.json:
        summary = {r.suite: {"passed": r.passed, "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                                                            for c in r.checks]} for r in reports}
        out.write(json.dumps(summary) + "\n")
    else:
        for r in reports:
            out.write(f"{'PASS' if r.passed else 'FAIL'} {r.suite} ({len(r.checks)} checks, {r.seconds:.1f}s)\n")
            for c in r.checks:
                if not c.passed:
                    out.write(f"  FAIL {c.name}: {c.detail}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("count", "verify") and args.start > args.stop:
        parser.error("start must not exceed stop")
    if args.command == "count":
        return cmd_count(args, out)
    if args.command == "exact":
        return cmd_exact(args, out)
    if args.command == "verify":
        return cmd_verify(args, out)
    if args.command == "kloosterman":
        return cmd_kloosterman(args, out, parser)
    return cmd_checks(args, out)


if __name__ == "__main__":
    sys.exit(main())
