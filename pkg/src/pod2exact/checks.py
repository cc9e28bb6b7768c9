"""Verification suites shared by the ``checks`` command and the test-suite.

Each suite returns a :class:`SuiteReport`; a suite passes when every one of
its checks passes.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .analytic import QuadratureConfig
from .kloosterman import FAMILIES, KloostermanSpec, identity_3_1_check, kloosterman_phases, v_range, valid_ks
from .modular import eta_phase, omega_multiplier
from .qseries import (
    omega_mock_series,
    pod2_count_table,
    pod2_series_decomposition,
    pod2_series_identity,
    rho_omega_product_side,
    rho_series,
)
from .rademacher import (
    transform_check_omega_even,
    transform_check_omega_odd,
    transform_check_P,
    transform_check_zeta,
)

__all__ = ["CheckResult", "SuiteReport", "SUITES", "run_suite", "TRANSFORM_GRID"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))


def identities_suite(N: int = 200) -> SuiteReport:
    rep = SuiteReport("identities")
    order = N
    oracle = pod2_count_table(order)
    ident = list(pod2_series_identity(order))
    decomp = list(pod2_series_decomposition(order))
    rho_omega = [2 * a + b for a, b in zip(rho_series(order), omega_mock_series(order))]
    rep.add("zeta1*rho == oracle", ident == oracle, f"N={N}")
    rep.add("-zeta1*omega/2 + 3*zeta2/2 == oracle", decomp == oracle, f"N={N}")
    rep.add("2*rho + omega == eta quotient", rho_omega == list(rho_omega_product_side(order)), f"N={N}")
    return rep


def multipliers_suite(k_max: int = 60) -> SuiteReport:
    rep = SuiteReport("multipliers")
    bad = [(h, k) for k in range(1, k_max + 1) for h in range(k) if math.gcd(h, k) == 1
           and omega_multiplier(h, k) != eta_phase(h, k)]
    rep.add("omega_{h,k} == exp(pi i s(h,k))", not bad, f"k<={k_max}, mismatches={bad[:5]}")
    return rep


def kloosterman_suite(k_max: int = 36, nm=(0, 1, 2, 5)) -> SuiteReport:
    rep = SuiteReport("kloosterman")
    for fam in FAMILIES:
        bad, shifted, count = [], [], 0
        for k in valid_ks(fam, k_max):
            vs = range(v_range(k)) if fam[1] == "2" else [None]
            for n in nm:
                for m in nm:
                    for v in vs:
                        spec = KloostermanSpec(fam, k, n, m, v)
                        d = kloosterman_phases(spec, "definition")
                        count += 1
                        if d != kloosterman_phases(spec, "closed"):
                            bad.append((k, n, m, v))
                        if n == m and (d != kloosterman_phases(spec, "definition", shift=1)
                                       or kloosterman_phases(spec, "closed", shift=1) != d):
                            shifted.append((k, n, m, v))
        rep.add(f"{fam} definition == closed", not bad, f"{count} sums, mismatches={bad[:3]}")
        rep.add(f"{fam} h' representative invariance", not shifted, f"mismatches={shifted[:3]}")
    ks = [k for k in range(1, 50) if math.gcd(k, 6) == 1]
    bad31 = [(k, n, m) for k in ks for n in range(6) for m in range(6) if not identity_3_1_check(k, n, m)]
    rep.add("K111 == -K131", not bad31, f"k in {ks[0]}..{ks[-1]}, failures={bad31[:3]}")
    return rep


# (check, arguments, tolerance)
TRANSFORM_GRID = (
    [("P", (0, 1, 1.0), 1e-8), ("P", (1, 2, 1.0), 1e-8), ("P", (1, 3, 0.8), 1e-8), ("P", (5, 12, 0.7 + 0.2j), 1e-8)]
    + [("zeta", (cls, var, h, k, z), 1e-8)
       for cls, h, k, z in [(6, 1, 6, 1.0), (6, 5, 12, 0.9), (2, 1, 2, 1.0), (2, 3, 4, 0.9), (2, 7, 10, 1.1),
                            (3, 1, 3, 1.0), (3, 2, 9, 0.8), (1, 0, 1, 1.0), (1, 2, 5, 0.9), (1, 3, 7, 1.0 + 0.3j)]
       for var in ("zeta1", "zeta2")]
    + [("omega_even", a, 1e-6) for a in [(1, 2, 1.0), (1, 6, 1.0), (1, 4, 1.0), (5, 6, 0.9), (3, 8, 0.9), (1, 2, 0.8 + 0.3j)]]
    + [("omega_odd", a, 1e-6) for a in [(0, 1, 1.0), (1, 3, 1.0), (2, 5, 0.9), (3, 7, 1.0), (2, 5, 0.9 + 0.2j)]]
)

_TRANSFORMS = {
    "P": transform_check_P,
    "zeta": transform_check_zeta,
    "omega_even": transform_check_omega_even,
    "omega_odd": transform_check_omega_odd,
}


def transforms_suite(cfg: QuadratureConfig | None = None) -> SuiteReport:
    rep = SuiteReport("transforms")
    for name, args, tol in TRANSFORM_GRID:
        fn = _TRANSFORMS[name]
        res = fn(*args, cfg) if cfg is not None and name.startswith("omega") else fn(*args)
        rep.add(f"{name}{args}", res < tol, f"residual={res:.3e} tol={tol:g}")
    return rep


SUITES = {
    "identities": identities_suite,
    "multipliers": multipliers_suite,
    "kloosterman": kloosterman_suite,
    "transforms": transforms_suite,
}


def run_suite(name: str) -> list[SuiteReport]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for s in names:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
        t = time.perf_counter()
        rep = SUITES[s]()
        rep.seconds = time.perf_counter() - t
        out.append(rep)
    return out
