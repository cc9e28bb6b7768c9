"""End-to-end acceptance checks, one test per criterion.

Each test records PASS/FAIL and its wall time; the lines are printed in the
terminal summary. Runtime budgets are asserted alongside the numeric checks.
"""
import math
import sys

import numpy as np
import pytest
import scipy.integrate
import scipy.special as sp

from pod2exact.analytic import QuadratureConfig, bessel_I1, bessel_I32, integral_I_final, integral_J_final, quad_finite
from pod2exact.checks import identities_suite, kloosterman_suite, multipliers_suite, transforms_suite
from pod2exact.kloosterman import KloostermanSpec, bound_ratio, v_range, valid_ks
from pod2exact.qseries import partition_series, pod2_count_oracle
from pod2exact.rademacher import TruncationPolicy, contribution_table, p_exact, pod2_exact

pytestmark = pytest.mark.slow


def _brute_pod2(n):
    # largest part even, odd parts repeated at most twice
    def walk(rest, largest):
        if rest == 0:
            return 1
        total = 0
        for p in range(min(rest, largest), 0, -1):
            for mult in range(1, (rest // p if p % 2 == 0 else min(2, rest // p)) + 1):
                total += walk(rest - p * mult, p - 1)
        return total

    if n == 0:
        return 1
    return sum(walk(n - p * mult, p - 1) for p in range(2, n + 1, 2) for mult in range(1, n // p + 1))


@pytest.mark.criterion(1)
def test_criterion_1_oracle(criterion):
    got = [pod2_count_oracle(n) for n in (0, 2, 3, 4, 5, 6)]
    brute = [_brute_pod2(n) for n in range(25)]
    ok = got == [1, 1, 1, 3, 2, 5] and brute == [pod2_count_oracle(n) for n in range(25)]
    ok = ok and criterion.elapsed < 1.0
    criterion(ok, f"pod2(0,2..6)={got}, brute force agrees to n=24")
    assert ok


@pytest.mark.criterion(2)
def test_criterion_2_identities(criterion):
    rep = identities_suite(200)
    ok = rep.passed and criterion.elapsed < 30
    criterion(ok, "; ".join(f"{c.name}: {c.passed}" for c in rep.checks))
    assert ok


@pytest.mark.criterion(3)
def test_criterion_3_multipliers(criterion):
    rep = multipliers_suite(60)
    ok = rep.passed and criterion.elapsed < 10
    criterion(ok, rep.checks[0].detail)
    assert ok


@pytest.mark.criterion(4)
def test_criterion_4_kloosterman(criterion):
    rep = kloosterman_suite(36, (0, 1, 2, 5))
    ok = rep.passed and criterion.elapsed < 60
    failed = [c.name for c in rep.checks if not c.passed]
    criterion(ok, f"{len(rep.checks)} checks over 12 families, failed={failed}")
    assert ok


@pytest.mark.criterion(5)
def test_criterion_5_bound_ratio(criterion):
    ratios = [(bound_ratio(KloostermanSpec("221", k, 1, 0, v)), k, v)
              for k in valid_ks("221", 200) for v in range(v_range(k))]
    worst = max(ratios)
    ok = all(math.isfinite(r) for r, _, _ in ratios)
    criterion(ok, f"max |K|/(n^(1/3) k^(2/3)) for 221, n=1, k<=200: {worst[0]:.4f} at k={worst[1]}, v={worst[2]}")
    assert ok


@pytest.mark.criterion(6)
def test_criterion_6_analytic(criterion):
    cfg = QuadratureConfig(abs_tol=1e-10)
    semi = abs(quad_finite(lambda x: np.sqrt(1 - x * x), cfg).value - math.pi / 2)
    worst_re = 0.0
    for k in (2, 6, 12, 24, 48):
        for b in (math.sqrt(6), 3 * math.sqrt(2)):
            worst_re = max(worst_re, np.max(np.abs(np.real(integral_I_final(b, k, np.arange(max(1, k // 2)), 10, cfg).value))))
    for k in (1, 5, 7, 25, 49):
        worst_re = max(worst_re, np.max(np.abs(np.real(integral_J_final(k, np.arange(k), 10, cfg).value))))
    worst_bessel = 0.0
    for x in (0.1, 1.0, 3.0, 10.0, 25.0):
        rep, _ = scipy.integrate.quad(lambda t: math.exp(x * math.cos(t)) * math.cos(t), 0, math.pi, epsabs=1e-14)
        worst_bessel = max(worst_bessel, abs(bessel_I1(x) - rep / math.pi) / max(1.0, rep / math.pi))
        series = sum((x / 2) ** (2 * m + 1.5) / (math.factorial(m) * math.gamma(m + 2.5)) for m in range(120))
        worst_bessel = max(worst_bessel, abs(bessel_I32(x) - series) / max(1.0, series), abs(bessel_I32(x) - sp.iv(1.5, x)) / max(1.0, series))
    ok = semi < 1e-10 and worst_re <= 10 * cfg.abs_tol and worst_bessel < 1e-9
    criterion(ok, f"semicircle err={semi:.1e}, max |Re integral|={worst_re:.1e}, bessel err={worst_bessel:.1e}")
    assert ok


@pytest.mark.criterion(7)
def test_criterion_7_p_exact(criterion):
    pn = partition_series(1, 200)
    bad = [n for n in range(1, 201) if p_exact(n, max(10, math.ceil(4 * math.sqrt(n)))) != pn[n]]
    ok = not bad and criterion.elapsed < 60
    criterion(ok, f"1<=n<=200, mismatches={bad}")
    assert ok


@pytest.mark.criterion(8)
def test_criterion_8_transforms(criterion):
    rep = transforms_suite()
    worst = {}
    for c in rep.checks:
        kind = c.name.split("(")[0]
        worst[kind] = max(worst.get(kind, 0.0), float(c.detail.split()[0].split("=")[1]))
    ok = rep.passed and criterion.elapsed < 120
    criterion(ok, ", ".join(f"{k} max residual {v:.1e}" for k, v in worst.items()))
    assert ok


@pytest.mark.criterion(9)
def test_criterion_9_pod2_exact(criterion):
    policy = TruncationPolicy(k_max=100)
    cfg = QuadratureConfig(abs_tol=1e-10)
    failures, worst_diff, worst_im = [], 0.0, 0.0
    for n in range(41):
        r = pod2_exact(n, policy, cfg)
        oracle = pod2_count_oracle(n)
        worst_diff, worst_im = max(worst_diff, r.diff), max(worst_im, r.imag_residual)
        if r.rounded != oracle or r.diff >= 0.4 or r.imag_residual >= 1e-6:
            failures.append(n)
            print(f"n={n}: estimate={r.estimate:.6f} oracle={oracle}\n{contribution_table(r)}", file=sys.stderr)
    ok = not failures
    criterion(ok, f"0<=n<=40 at k_max=100, max diff={worst_diff:.3f}, max imag={worst_im:.1e}, failures={failures}")
    assert ok
