"""The twelve Kloosterman-type sums ``K_k^{[xyz]}`` and the classical ``A_k(n)``.

Each family is available in two independently coded forms:

* the *definition* form multiplies eta multipliers ``omega_{h,k}`` (computed
  from their closed expression in :mod:`pod2exact.modular`) with the
  explicit exponential factors;
* the *closed* form is a single exponential per ``h`` with the multipliers
  already evaluated.

Both produce one exact :class:`~pod2exact.modular.UnitPhase` per ``h``, so
the two forms can be compared summand by summand without rounding.

Family codes are three-digit strings. The first digit is ``gcd(k, 6)``, the
second selects the multiplier product (1 and 2 share one, 3 has its own),
and the families ``x21`` take an extra index ``v``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import mpmath
import numpy as np

from .modular import InverseData, UnitPhase, canonical_inverse, omega_multiplier

__all__ = [
    "FAMILIES",
    "KloostermanSpec",
    "SumValue",
    "kloosterman_phases",
    "kloosterman_definition",
    "kloosterman_closed",
    "kloosterman_v_table",
    "classical_A",
    "identity_3_1_check",
    "bound_ratio",
    "prefactor_phase",
    "valid_ks",
    "v_range",
]

FAMILIES = ("611", "621", "631", "211", "221", "231", "311", "321", "331", "111", "121", "131")
_WITH_V = {"621", "221", "321", "121"}


@dataclass(frozen=True)
class KloostermanSpec:
    family: str
    k: int
    n: int
    m: int = 0
    v: int | None = None

    def __post_init__(self):
        fam = str(self.family)
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
        if self.k < 1:
            raise ValueError("k must be positive")
        cls = math.gcd(self.k, 6)
        if int(fam[0]) != cls:
            raise ValueError(f"family {fam} needs gcd(k, 6) = {fam[0]}, got gcd({self.k}, 6) = {cls}")
        if fam in _WITH_V:
            if self.v is None:
                raise ValueError(f"family {fam} needs v")
            if not 0 <= self.v < v_range(self.k):
                raise ValueError(f"v={self.v} outside 0..{v_range(self.k) - 1}")
        elif self.v is not None:
            raise ValueError(f"family {fam} takes no v")

    @property
    def gcd_class(self) -> int:
        return int(self.family[0])


@dataclass(frozen=True)
class SumValue:
    value: complex
    term_count: int
    max_term_modulus: float = 1.0


def v_range(k: int) -> int:
    """Number of ``v`` values: ``k/2`` for even ``k``, ``k`` for odd ``k``."""
    return k // 2 if k % 2 == 0 else k


def valid_ks(family: str, k_max: int) -> list[int]:
    cls = int(family[0])
    return [k for k in range(1, k_max + 1) if math.gcd(k, 6) == cls]


def _residues(k: int):
    return [0] if k == 1 else [h for h in range(1, k) if math.gcd(h, k) == 1]


def _w(a: int, c: int) -> Fraction:
    return omega_multiplier(a, c).r


F = Fraction

# -- definition forms --------------------------------------------------------
# Each returns the phase (in turns) of the summand for one h.


def _q6(h, k, kind):
    if kind == 1:
        return _w(h, k // 6) + _w(h, k // 2) + _w(h, k) - _w(h, k // 3)
    return _w(h, k // 3) + _w(h, k // 2) + _w(h, k) - 3 * _w(h, k // 6)


def _q2(h, k, kind):
    if kind == 1:
        return _w(3 * h, k // 2) + _w(h, k // 2) + _w(h, k) - _w(3 * h, k)
    return _w(3 * h, k) + _w(h, k // 2) + _w(h, k) - 3 * _w(3 * h, k // 2)


def _q3(h, k, kind):
    if kind == 1:
        return _w(2 * h, k // 3) + _w(2 * h, k) + _w(h, k) - _w(h, k // 3)
    return _w(h, k // 3) + _w(2 * h, k) + _w(h, k) - 3 * _w(2 * h, k // 3)


def _q1(h, k, kind):
    if kind == 1:
        return _w(6 * h, k) + _w(2 * h, k) + _w(h, k) - _w(3 * h, k)
    return _w(3 * h, k) + _w(2 * h, k) + _w(h, k) - 3 * _w(6 * h, k)


def _mu_term(hp, k, v):
    # h' (mu - 3 mu^2) / k with mu = v + 1/2
    mu = v + F(1, 2)
    return hp * (mu - 3 * mu * mu) / k


def _even_x1(q):
    def f(h, inv, k, n, m, v):
        hp, kp = inv.h_prime, inv.k_prime
        return q(h, k, 1) + F(1 + hp - 3 * hp * kp, 4) + F(3 * (hp - h), 4 * k) + _lin(h, hp, k, n, m, q)
    return f


def _even_x2(q):
    def f(h, inv, k, n, m, v):
        hp, kp = inv.h_prime, inv.k_prime
        return q(h, k, 1) + F(1 + hp - 3 * hp * kp, 4) - F(3 * h, 4 * k) + _mu_term(hp, k, v) + _lin(h, hp, k, n, m, q)
    return f


def _any_x3(q):
    def f(h, inv, k, n, m, v):
        return q(h, k, 3) + _lin(h, inv.h_prime, k, n, m, q)
    return f


def _odd_x1(q):
    def f(h, inv, k, n, m, v):
        return F(k + 1, 4) + q(h, k, 1) + F(3 * h * k, 4) - F(3 * h, 4 * k) + _lin(h, inv.h_prime, k, n, m, q)
    return f


def _odd_x2(q):
    def f(h, inv, k, n, m, v):
        hp = inv.h_prime
        return F(k + 1, 4) + q(h, k, 1) + F(3 * k * h, 4) + F(hp * (v - 3 * v * v) - 3 * h, 4 * k) + _lin(h, hp, k, n, m, q)
    return f


# m enters as m h'/d with d = 1, 3, 2, 6 for the classes 6, 2, 3, 1
_M_DIVISOR = {_q6: 1, _q2: 3, _q3: 2, _q1: 6}


def _lin(h, hp, k, n, m, q):
    return (F(-n * h) + F(m * hp, _M_DIVISOR[q])) / k


_DEFINITION: dict[str, Callable] = {
    "611": _even_x1(_q6),
    "621": _even_x2(_q6),
    "631": _any_x3(_q6),
    "211": _even_x1(_q2),
    "221": _even_x2(_q2),
    "231": _any_x3(_q2),
    "311": _odd_x1(_q3),
    "321": _odd_x2(_q3),
    "331": _any_x3(_q3),
    "111": _odd_x1(_q1),
    "121": _odd_x2(_q1),
    "131": _any_x3(_q1),
}

# -- closed forms ------------------------------------------------------------
# (constant phase, h-coefficient, h'-coefficient) as functions of (k, n, m, v);
# the summand is exp(2 pi i (const + (a h + b h') / k)).


def _closed_coeffs(fam: str, k: int, n: int, m: int, v: int | None):
    k2 = k * k
    if fam == "611":
        return F(3, 4), -F(36 * n + 18 - 9 * k - 4 * k2, 36), F(36 * m + 18 + 9 * k + 2 * k2, 36)
    if fam == "621":
        return (F(3, 4), -F(36 * n + 18 - 9 * k - 4 * k2, 36),
                F(36 * m - 18 + 9 * k + 2 * k2 - 108 * v * v - 72 * v, 36))
    if fam == "631":
        return F(0), -F(18 * n + 9 - 2 * k2, 18), F(18 * m + 9 + k2, 18)
    if fam == "211":
        return F(1, 4), -F(36 * n + 18 - 9 * k, 36), F(12 * m + 22 + 9 * k + 2 * k2, 36)
    if fam == "221":
        return (F(1, 4), -F(36 * n + 18 - 9 * k, 36),
                F(12 * m - 14 + 9 * k + 2 * k2 - 108 * v * v - 72 * v, 36))
    if fam == "231":
        return F(1, 2), -F(18 * n + 9 + 9 * k, 18), F(6 * m - 1 + k2, 18)
    if fam == "311":
        return F(0), -F(36 * n + 18 - 22 * k2, 36), F(18 * m + 2 * k2, 36)
    if fam == "321":
        return F(0), -F(36 * n + 18 - 22 * k2, 36), F(18 * m + 2 * k2 - 27 * v * v + 9 * v, 36)
    if fam == "331":
        return F(1, 2) - F(k, 6), -F(18 * n + 9 + k2, 18), F(9 * m + k2, 18)
    if fam == "111":
        return F(1, 2), -F(36 * n + 18 - 18 * k2, 36), F(6 * m - 2 + 2 * k2, 36)
    if fam == "121":
        return F(1, 2), -F(36 * n + 18 - 18 * k2, 36), F(6 * m - 2 + 2 * k2 - 27 * v * v + 9 * v, 36)
    if fam == "131":
        return F(0), -F(2 * n + 1 - k2, 2), F(3 * m - 1 + k2, 18)
    raise ValueError(fam)


def kloosterman_phases(spec: KloostermanSpec, form: str = "definition", shift: int = 0) -> list[UnitPhase]:
    """One exact summand per admissible ``h`` (increasing ``h``).

    ``shift`` replaces every canonical ``h'`` by ``h' + shift * modulus``.
    """
    k, n, m, v = spec.k, spec.n, spec.m, spec.v
    out = []
    if form == "definition":
        fn = _DEFINITION[spec.family]
        for h in _residues(k):
            inv = canonical_inverse(h, k).shifted(shift)
            out.append(UnitPhase(fn(h, inv, k, n, m, v)))
    elif form == "closed":
        const, a, b = _closed_coeffs(spec.family, k, n, m, v)
        for h in _residues(k):
            hp = canonical_inverse(h, k).shifted(shift).h_prime
            out.append(UnitPhase(const + (a * h + b * hp) / k))
    else:
        raise ValueError(f"unknown form {form!r}")
    return out


def prefactor_phase(spec: KloostermanSpec) -> UnitPhase:
    """Constant phase ``c`` of the closed form.

    Pairing ``h`` with ``-h`` (and ``h'`` with ``-h'``) conjugates every
    summand after ``c`` is removed, so ``K / c`` is real.
    """
    return UnitPhase(_closed_coeffs(spec.family, spec.k, spec.n, spec.m, spec.v)[0])


def _accumulate(phases: list[UnitPhase], dps: int | None) -> SumValue:
    if dps is None:
        vals = [p.value() for p in phases]
        total = complex(math.fsum(z.real for z in vals), math.fsum(z.imag for z in vals))
    else:
        with mpmath.workdps(dps):
            total = mpmath.fsum(p.value(dps) for p in phases)
    return SumValue(total, len(phases), 1.0)


def kloosterman_definition(spec: KloostermanSpec, dps: int | None = None) -> SumValue:
    return _accumulate(kloosterman_phases(spec, "definition"), dps)


def kloosterman_closed(spec: KloostermanSpec, dps: int | None = None) -> SumValue:
    return _accumulate(kloosterman_phases(spec, "closed"), dps)


@lru_cache(maxsize=4096)
def _v_table_parts(family: str, k: int, n: int, m: int):
    # base phase per h (v = 0) and the h' residues that carry the v dependence
    hs = _residues(k)
    base, hps = [], []
    for h in hs:
        inv = canonical_inverse(h, k)
        base.append(_DEFINITION[family](h, inv, k, n, m, 0))
        hps.append(inv.h_prime)
    return base, hps


def kloosterman_v_table(family: str, k: int, n: int, m: int = 0) -> np.ndarray:
    """Definition-form values of ``K^{[family]}(v, n, m)`` for every ``v`` at once.

    Phases are combined as exact integers over a common denominator before
    the single conversion to ``complex``.
    """
    if family not in _WITH_V:
        raise ValueError(f"family {family} has no v index")
    KloostermanSpec(family, k, n, m, 0)  # validates the class
    base, hps = _v_table_parts(family, k, n, m)
    vs = np.arange(v_range(k), dtype=np.int64)
    if k % 2 == 0:
        # h'(mu - 3mu^2)/k - h'(1/2 - 3/4)/k  with mu = v + 1/2, in units of 1/(4k)
        g = -12 * vs * vs - 8 * vs
    else:
        g = vs - 3 * vs * vs
    den = math.lcm(4 * k, *(b.denominator for b in base))
    scale = den // (4 * k)
    base_num = np.array([b.numerator * (den // b.denominator) % den for b in base], dtype=np.int64)
    hp_res = np.array([hp % (4 * k) for hp in hps], dtype=np.int64)
    num = (base_num[:, None] + (hp_res[:, None] * g[None, :] % (4 * k)) * scale) % den
    return np.exp(2j * np.pi * num / den).sum(axis=0)


def classical_A(k: int, n: int, dps: int | None = None) -> SumValue:
    """``A_k(n) = sum_h omega_{h,k} exp(-2 pi i n h / k)``."""
    if k < 1:
        raise ValueError("k must be positive")
    phases = [omega_multiplier(h, k) * UnitPhase(F(-n * h, k)) for h in _residues(k)]
    return _accumulate(phases, dps)


def identity_3_1_check(k: int, n: int, m: int = 0, tol: float = 1e-10) -> bool:
    """``K^{[111]}(n, m) == -K^{[131]}(n, m)`` for ``gcd(k, 6) = 1``."""
    if math.gcd(k, 6) != 1:
        raise ValueError(f"gcd({k}, 6) != 1")
    a = kloosterman_definition(KloostermanSpec("111", k, n, m)).value
    b = kloosterman_definition(KloostermanSpec("131", k, n, m)).value
    return abs(a + b) <= tol


def bound_ratio(spec: KloostermanSpec) -> float:
    """``|K| / (n^{1/3} k^{2/3})``: a monitoring statistic for the Weil-type bound."""
    if spec.n < 1:
        raise ValueError("the bound is stated for n >= 1")
    val = kloosterman_definition(spec).value
    return abs(val) / (spec.n ** (1 / 3) * spec.k ** (2 / 3))
