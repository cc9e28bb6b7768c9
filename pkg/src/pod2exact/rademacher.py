"""Exact formulas: pod_2(n) from four Kloosterman families, the classical p(n), and transformation checks.

``pod2_exact`` sums, for ``k = 1..k_max``:

* ``gcd(k, 6) = 6``: ``pi / (3 sqrt(3(n+1/2))) k^-2 sum_v (-1)^v K621(v, n) II_{sqrt6,k,v}(n)``
* ``gcd(k, 6) = 2``: ``pi / (9 sqrt(3(n+1/2))) k^-2 sum_v (-1)^v K221(v, n) II_{3sqrt2,k,v}(n)``
  and ``pi / (3 sqrt(2n+1)) K231(n) / k * I_1(2 pi sqrt(2n+1) / (3k))``
* ``gcd(k, 6) = 1``: ``5 pi i / (72 sqrt(3(n+1/2))) k^-2 sum_v K121(v, n) JJ_{k,v}(n)``

Classes with ``gcd(k, 6) = 3`` contribute nothing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .analytic import QuadratureConfig, bessel_I1, bessel_I32, integral_I_final, integral_J_final, mordell_I, mordell_J
from .kloosterman import KloostermanSpec, classical_A, kloosterman_definition, kloosterman_v_table, v_range
from .modular import UnitPhase, canonical_inverse, omega_multiplier
from .qseries import eval_mock_num, eval_product_exp

__all__ = [
    "FAMILY_ORDER",
    "TruncationPolicy",
    "FamilyContribution",
    "ExactResult",
    "pod2_exact",
    "p_exact",
    "p_exact_estimate",
    "contribution_table",
    "transform_check_P",
    "transform_check_zeta",
    "transform_check_omega_even",
    "transform_check_omega_odd",
]

FAMILY_ORDER = ("621", "221", "231", "121")
_FAMILY_CLASS = {"621": 6, "221": 2, "231": 2, "121": 1}


@dataclass(frozen=True)
class TruncationPolicy:
    k_max: int = 100
    tail_window: int = 5
    tail_threshold: float = 1e-2

    def __post_init__(self):
        if self.k_max < 1 or self.tail_window < 1:
            raise ValueError("k_max and tail_window must be positive")
        if not self.tail_threshold > 0:
            raise ValueError("tail_threshold must be positive")


@dataclass(frozen=True)
class FamilyContribution:
    family: str
    ks: tuple[int, ...]
    terms: tuple[complex, ...]

    @property
    def total(self) -> complex:
        return complex(math.fsum(t.real for t in self.terms), math.fsum(t.imag for t in self.terms))


@dataclass(frozen=True)
class ExactResult:
    n: int
    estimate: float
    imag_residual: float
    rounded: int
    per_family: tuple[FamilyContribution, ...]
    k_max: int
    quad_tol: float
    converged: bool
    tail_ok: bool = True
    quad_ok: bool = True
    quad_error: float = 0.0
    largest_k_above_half: int = 0
    block_norms: tuple[float, ...] = field(default=(), repr=False)

    @property
    def diff(self) -> float:
        return abs(self.estimate - self.rounded)


def _sqrt_half(n):
    # sqrt(3 (n + 1/2))
    return math.sqrt(3 * (n + 0.5))


def _family_term(fam: str, k: int, n: int, cfg: QuadratureConfig):
    """One k-block of one family, with its quadrature error and convergence flag."""
    if cfg.precision is not None:
        return _family_term_mp(fam, k, n, cfg)
    if fam == "231":
        K = kloosterman_definition(KloostermanSpec("231", k, n)).value
        s = math.sqrt(2 * n + 1)
        return math.pi / (3 * s) * K / k * bessel_I1(2 * math.pi * s / (3 * k)), 0.0, True
    vs = np.arange(v_range(k))
    K = kloosterman_v_table(fam, k, n)
    if fam == "121":
        res = integral_J_final(k, vs, n, cfg)
        inner = np.sum(K * res.value)
        pref = 5j * math.pi / (72 * _sqrt_half(n))
    else:
        b = math.sqrt(6) if fam == "621" else 3 * math.sqrt(2)
        res = integral_I_final(b, k, vs, n, cfg)
        sign = np.where(vs % 2 == 0, 1.0, -1.0)
        inner = np.sum(sign * K * res.value)
        pref = math.pi / ((3 if fam == "621" else 9) * _sqrt_half(n))
    return complex(pref * inner / (k * k)), res.error, res.converged


def _family_term_mp(fam: str, k: int, n: int, cfg: QuadratureConfig):
    dps = cfg.precision
    with mpmath.workdps(dps):
        pi = mpmath.pi
        sh = mpmath.sqrt(3 * (mpmath.mpf(n) + mpmath.mpf(1) / 2))
        if fam == "231":
            K = kloosterman_definition(KloostermanSpec("231", k, n), dps).value
            s = mpmath.sqrt(2 * n + 1)
            val = pi / (3 * s) * K / k * mpmath.besseli(1, 2 * pi * s / (3 * k))
            return complex(val), 0.0, True
        vs = list(range(v_range(k)))
        Ks = [kloosterman_definition(KloostermanSpec(fam, k, n, 0, v), dps).value for v in vs]
        if fam == "121":
            res = integral_J_final(k, vs, n, cfg)
            inner = mpmath.fsum(a * b for a, b in zip(Ks, res.value))
            pref = 5j * pi / (72 * sh)
        else:
            b = mpmath.sqrt(6) if fam == "621" else 3 * mpmath.sqrt(2)
            res = integral_I_final(b, k, vs, n, cfg)
            inner = mpmath.fsum((-1) ** v * a * c for v, a, c in zip(vs, Ks, res.value))
            pref = pi / ((3 if fam == "621" else 9) * sh)
        return complex(pref * inner / (k * k)), res.error, res.converged


def pod2_exact(n: int, policy: TruncationPolicy = TruncationPolicy(), cfg: QuadratureConfig = QuadratureConfig()) -> ExactResult:
    """Evaluate the exact formula for ``pod_2(n)`` truncated at ``policy.k_max``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    per_family = []
    blocks = np.zeros(policy.k_max + 1, dtype=complex)
    quad_error = 0.0
    quad_ok = True
    for fam in FAMILY_ORDER:
        ks, terms = [], []
        for k in range(1, policy.k_max + 1):
            if math.gcd(k, 6) != _FAMILY_CLASS[fam]:
                continue
            term, err, ok = _family_term(fam, k, n, cfg)
            ks.append(k)
            terms.append(term)
            blocks[k] += term
            quad_error += err * _term_scale(fam, k, n)
            quad_ok &= ok
        per_family.append(FamilyContribution(fam, tuple(ks), tuple(terms)))
    total_re = math.fsum(t.real for f in per_family for t in f.terms)
    total_im = math.fsum(t.imag for f in per_family for t in f.terms)
    rounded = int(round(total_re))
    norms = tuple(float(abs(b)) for b in blocks[1:])
    window = norms[-policy.tail_window:] if policy.k_max >= policy.tail_window else ()
    tail_ok = len(window) == policy.tail_window and all(x < policy.tail_threshold for x in window)
    above = [k for k, x in enumerate(norms, start=1) if x > 0.5]
    converged = abs(total_re - rounded) < 0.4 and abs(total_im) < 1e-6 and tail_ok and quad_ok
    return ExactResult(
        n=n,
        estimate=total_re,
        imag_residual=abs(total_im),
        rounded=rounded,
        per_family=tuple(per_family),
        k_max=policy.k_max,
        quad_tol=cfg.abs_tol,
        converged=converged,
        tail_ok=tail_ok,
        quad_ok=quad_ok,
        quad_error=quad_error,
        largest_k_above_half=max(above, default=0),
        block_norms=norms,
    )


def _term_scale(fam: str, k: int, n: int) -> float:
    # bound on |prefactor * K| multiplying each integral, used to propagate quadrature error
    if fam == "231":
        return 0.0
    pref = {"621": 1 / 3, "221": 1 / 9, "121": 5 / 72}[fam] * math.pi / _sqrt_half(n)
    return pref * v_range(k) * k / (k * k)


def contribution_table(result: ExactResult) -> str:
    """Per-family, per-k contributions as aligned text."""
    lines = [f"n={result.n} estimate={result.estimate:.12f} rounded={result.rounded} imag={result.imag_residual:.3e}",
             f"{'family':>6} {'k':>4} {'re':>22} {'im':>22} {'abs':>12}"]
    for fc in result.per_family:
        for k, t in zip(fc.ks, fc.terms):
            lines.append(f"{fc.family:>6} {k:>4} {t.real:>22.15e} {t.imag:>22.15e} {abs(t):>12.4e}")
        tot = fc.total
        lines.append(f"{fc.family:>6} {'sum':>4} {tot.real:>22.15e} {tot.imag:>22.15e} {abs(tot):>12.4e}")
    return "\n".join(lines)


# -- classical p(n) ----------------------------------------------------------


def p_exact_estimate(n: int, k_max: int | None = None) -> float:
    """Truncated Rademacher series for ``p(n)``; default ``k_max = max(10, ceil(4 sqrt(n)))``."""
    if n < 1:
        raise ValueError("n must be positive")
    if k_max is None:
        k_max = max(10, math.ceil(4 * math.sqrt(n)))
    m = 24 * n - 1
    terms = [classical_A(k, n).value.real / k * bessel_I32(math.pi * math.sqrt(m) / (6 * k)) for k in range(1, k_max + 1)]
    return 2 * math.pi / m**0.75 * math.fsum(terms)


def p_exact(n: int, k_max: int | None = None) -> int:
    """``p(n)`` rounded from the truncated series; raises if the estimate is not near an integer."""
    est = p_exact_estimate(n, k_max)
    r = round(est)
    if abs(est - r) >= 0.4:
        raise ArithmeticError(f"p({n}) estimate {est} is not within 0.4 of an integer; raise k_max")
    return int(r)


# -- transformation checks ---------------------------------------------------
# All checks evaluate both sides at `dps` digits. Fractional powers of q1 are
# taken through the exponent, q1^r = exp(2 pi i r (h' + i/z) / k).

_MORDELL_CFG = QuadratureConfig(abs_tol=1e-12)


def _phase(r, dps):
    return UnitPhase(Fraction(r)).value(dps)


def _w(h, k, z):
    return (h + 1j * z) / k


def _prepare(h, k, z):
    if k < 1 or math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1 with k >= 1, got h={h}, k={k}")
    z = mpmath.mpmathify(z)
    if not mpmath.re(z) > 0:
        raise ValueError("need Re(z) > 0 so that |q| < 1 and |q1| < 1")
    return z


def transform_check_P(h: int, k: int, z, dps: int = 30) -> float:
    """``|P(q) - omega_{h,k} z^{1/2} exp(pi (1/z - z) / (12k)) P(q1)|``."""
    with mpmath.workdps(dps):
        z = _prepare(h, k, z)
        hp = canonical_inverse(h, k).h_prime
        w, w1 = _w(h, k, z), (hp + 1j / z) / k
        lhs = eval_product_exp(1, w)
        rhs = omega_multiplier(h, k).value(dps) * mpmath.sqrt(z) * mpmath.exp(mpmath.pi * (1 / z - z) / (12 * k)) * eval_product_exp(1, w1)
        return float(abs(lhs - rhs))


def _om(h, k):
    return omega_multiplier(h, k).r


def _zeta1_at(w):
    return eval_product_exp(6, w) * eval_product_exp(1, w) / eval_product_exp(3, w)


def _zeta2_at(w):
    return eval_product_exp(3, w) * eval_product_exp(2, w) * eval_product_exp(1, w) / eval_product_exp(6, w) ** 3


def transform_check_zeta(gcd_class: int, variant: str, h: int, k: int, z, dps: int = 30) -> float:
    """Residual of the transformation of ``zeta_1`` or ``zeta_2`` for one gcd class of ``k``."""
    variant = {"1": "zeta1", "2": "zeta2"}.get(str(variant), str(variant))
    if variant not in ("zeta1", "zeta2"):
        raise ValueError(f"unknown variant {variant!r}")
    if math.gcd(k, 6) != gcd_class:
        raise ValueError(f"gcd({k}, 6) != {gcd_class}")
    with mpmath.workdps(dps):
        z = _prepare(h, k, z)
        hp = canonical_inverse(h, k, gcd_class).h_prime
        w, w1 = _w(h, k, z), (hp + 1j / z) / k
        pi, sq = mpmath.pi, mpmath.sqrt(z)
        P = lambda r: eval_product_exp(Fraction(r), w1)
        F = Fraction
        if gcd_class == 6:
            if variant == "zeta1":
                rhs = _phase(_om(h, k // 6) + _om(h, k) - _om(h, k // 3), dps) * sq * mpmath.exp(pi / (3 * k) * (1 / z - z)) * _zeta1_at(w1)
            else:
                rhs = (_phase(_om(h, k // 3) + _om(h, k // 2) + _om(h, k) - 3 * _om(h, k // 6), dps)
                       * mpmath.exp(-pi / k * (1 / z - z)) * _zeta2_at(w1))
        elif gcd_class == 2:
            if variant == "zeta1":
                rhs = (_phase(_om(3 * h, k // 2) + _om(h, k) - _om(3 * h, k), dps) * sq
                       * mpmath.exp(pi / (9 * k * z) - pi * z / (3 * k)) * P(1) * P(F(2, 3)) / P(F(1, 3)))
            else:
                rhs = (_phase(_om(3 * h, k) + _om(h, k // 2) + _om(h, k) - 3 * _om(3 * h, k // 2), dps) / 3
                       * mpmath.exp(pi / (9 * k * z) + pi * z / k) * P(F(1, 3)) * P(2) * P(1) / P(F(2, 3)) ** 3)
        elif gcd_class == 3:
            if variant == "zeta1":
                rhs = (mpmath.sqrt(2) * _phase(_om(2 * h, k // 3) + _om(h, k) - _om(h, k // 3), dps) * sq
                       * mpmath.exp(-pi / (24 * k * z) - pi * z / (3 * k)) * P(1) * P(F(3, 2)) / P(3))
            else:
                rhs = (_phase(_om(h, k // 3) + _om(2 * h, k) + _om(h, k) - 3 * _om(2 * h, k // 3), dps) / 2
                       * mpmath.exp(pi * z / k) * P(3) * P(F(1, 2)) * P(1) / P(F(3, 2)) ** 3)
        elif gcd_class == 1:
            if variant == "zeta1":
                rhs = (mpmath.sqrt(2) * _phase(_om(6 * h, k) + _om(h, k) - _om(3 * h, k), dps) * sq
                       * mpmath.exp(5 * pi / (72 * k * z) - pi * z / (3 * k)) * P(1) * P(F(1, 6)) / P(F(1, 3)))
            else:
                rhs = (_phase(_om(3 * h, k) + _om(2 * h, k) + _om(h, k) - 3 * _om(6 * h, k), dps) / 6
                       * mpmath.exp(pi / (9 * k * z) + pi * z / k) * P(F(1, 3)) * P(F(1, 2)) * P(1) / P(F(1, 6)) ** 3)
        else:
            raise ValueError(f"unknown gcd class {gcd_class}")
        lhs = _zeta1_at(w) if variant == "zeta1" else _zeta2_at(w)
        return float(abs(lhs - rhs))


def _mordell_value(fn, k, v, z, cfg):
    res = fn(k, v, complex(z), cfg)
    if not res.converged:
        raise ArithmeticError(f"Mordell integral did not converge (k={k}, v={v})")
    return mpmath.mpmathify(res.value)


def transform_check_omega_even(h: int, k: int, z, cfg: QuadratureConfig = _MORDELL_CFG, dps: int = 30) -> float:
    """Residual of the even-``k`` transformation of ``omega`` (with the ``I_{k,v}`` Mordell sum)."""
    if k % 2:
        raise ValueError("k must be even")
    with mpmath.workdps(dps):
        z = _prepare(h, k, z)
        inv = canonical_inverse(h, k)
        hp, kp = inv.h_prime, inv.k_prime
        pi = mpmath.pi
        F = Fraction
        q = mpmath.exp(2j * pi * (h + 1j * z) / k)
        q1 = mpmath.exp(2j * pi * (hp + 1j / z) / k)
        sign = _phase(F(hp + 1, 4), dps)  # (-1)^{(h'+1)/2}
        om2 = omega_multiplier(h, k // 2).value(dps)
        first = (1j * sign * _phase(F(-3 * hp * kp, 4) + F(3 * hp - 3 * h, 4 * k), dps) * om2 / mpmath.sqrt(z)
                 * mpmath.exp(-4 * pi / (3 * k * z) + 4 * pi * z / (3 * k)) * eval_mock_num("omega", q1))
        acc = []
        for v in range(k // 2):
            mu = F(2 * v + 1, 2)
            ph = _phase((-6 * hp * mu * mu + 2 * hp * mu) / (2 * k), dps)
            acc.append((-1) ** v * ph * _mordell_value(mordell_I, k, v, z, cfg))
        second = (F(2, k) * sign * _phase(F(-3 * hp * kp, 4) - F(3 * h, 4 * k), dps) * om2 * mpmath.sqrt(z)
                  * mpmath.exp(4 * pi * z / (3 * k)) * mpmath.fsum(acc))
        return float(abs(eval_mock_num("omega", q) - (first - second)))


def transform_check_omega_odd(h: int, k: int, z, cfg: QuadratureConfig = _MORDELL_CFG, dps: int = 30) -> float:
    """Residual of the odd-``k`` transformation of ``omega`` via ``f`` and the ``J_{k,v}`` Mordell sum.

    Uses the class inverse, whose ``h'`` is even.
    """
    if k % 2 == 0:
        raise ValueError("k must be odd")
    with mpmath.workdps(dps):
        z = _prepare(h, k, z)
        hp = canonical_inverse(h, k).h_prime
        pi = mpmath.pi
        F = Fraction
        q = mpmath.exp(2j * pi * (h + 1j * z) / k)
        q1_half = mpmath.exp(1j * pi * (hp + 1j / z) / k)
        c = _phase(F(k - 1, 4) + F(3 * h * k, 4) - F(3 * h, 4 * k), dps) * omega_multiplier(2 * h, k).value(dps)
        first = c / (2 * mpmath.sqrt(2) * mpmath.sqrt(z)) * mpmath.exp(pi / (24 * k * z) + 4 * pi * z / (3 * k)) * eval_mock_num("f", q1_half)
        acc = [_phase(F(-3 * hp * v * v + hp * v, 4 * k), dps) * _mordell_value(mordell_J, k, v, z, cfg) for v in range(k)]
        second = 1j * c * mpmath.exp(4 * pi * z / (3 * k)) / k * mpmath.sqrt(2 * z) * mpmath.fsum(acc)
        return float(abs(eval_mock_num("omega", q) - (first + second)))
