"""Exact modular arithmetic: Kronecker symbols, Dedekind sums, eta multipliers, Farey data.

Roots of unity are kept as exact rationals mod 1 (:class:`UnitPhase`), so
identities between products of multipliers are checked with ``==``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

__all__ = [
    "UnitPhase",
    "InverseData",
    "FareyNeighbors",
    "kronecker_symbol",
    "dedekind_sum",
    "canonical_inverse",
    "inverse_modulus",
    "omega_multiplier",
    "eta_phase",
    "farey_sequence",
    "farey_neighbors",
]


@dataclass(frozen=True)
class UnitPhase:
    """The complex number ``exp(2 pi i r)`` with ``r`` an exact rational in ``[0, 1)``."""

    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r) % 1)

    @classmethod
    def of_sign(cls, s: int) -> UnitPhase:
        if s == 1:
            return cls(Fraction(0))
        if s == -1:
            return cls(Fraction(1, 2))
        raise ValueError(f"{s} is not a sign")

    @classmethod
    def from_pi_multiple(cls, x) -> UnitPhase:
        """``exp(pi i x)``."""
        return cls(Fraction(x) / 2)

    def __mul__(self, other: UnitPhase) -> UnitPhase:
        return UnitPhase(self.r + other.r)

    def __truediv__(self, other: UnitPhase) -> UnitPhase:
        return UnitPhase(self.r - other.r)

    def __pow__(self, e: int) -> UnitPhase:
        return UnitPhase(self.r * e)

    def conjugate(self) -> UnitPhase:
        return UnitPhase(-self.r)

    @property
    def order(self) -> int:
        """Multiplicative order, i.e. the reduced denominator of ``r``."""
        return self.r.denominator

    def __complex__(self) -> complex:
        return self.value()

    def value(self, dps: int | None = None):
        """Complex value; an ``mpmath.mpc`` at ``dps`` digits if given."""
        if dps is None:
            # reduce to [-1/2, 1/2) first so common angles stay exact-ish
            x = self.r if self.r < Fraction(1, 2) else self.r - 1
            return cmath.exp(2j * math.pi * float(x))
        with mpmath.workdps(dps):
            return +mpmath.expjpi(2 * mpmath.mpf(self.r.numerator) / self.r.denominator)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol ``(a | n)`` with the usual extension to even and nonpositive ``n``."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a | n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


@lru_cache(maxsize=None)
def dedekind_sum(h: int, k: int) -> Fraction:
    """``s(h, k) = sum_{mu=1}^{k-1} ((mu/k)) ((h mu/k))`` by direct summation."""
    if k < 1:
        raise ValueError("k must be positive")
    if math.gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} are not coprime")
    return sum((_sawtooth(Fraction(mu, k)) * _sawtooth(Fraction(h * mu, k)) for mu in range(1, k)), Fraction(0))


def eta_phase(h: int, k: int) -> UnitPhase:
    """``exp(pi i s(h, k))``, the Dedekind-sum form of the partition multiplier."""
    return UnitPhase(dedekind_sum(h % k, k) / 2)


@dataclass(frozen=True)
class InverseData:
    """Normalized ``h'`` and ``k'`` with ``h h' + k k' = -1`` for one gcd class of ``k``.

    ========== ================================ ==================
    gcd(k, 6)  congruence on ``h h'``           divisibility of h'
    ========== ================================ ==================
    6          ``== -1 (mod 36k)``              none
    2          ``== -1 (mod 4k)``               ``3 | h'``
    3          ``== -1 (mod k)``                ``2 | h'``
    1          ``== -1 (mod k)``                ``6 | h'``
    ========== ================================ ==================
    """

    h: int
    k: int
    gcd_class: int
    h_prime: int
    k_prime: int

    @property
    def modulus(self) -> int:
        """Period of the admissible ``h'`` (the combined CRT modulus)."""
        return inverse_modulus(self.k, self.gcd_class)

    def shifted(self, t: int = 1) -> InverseData:
        """Another admissible representative, ``h' + t * modulus``."""
        hp = self.h_prime + t * self.modulus
        return InverseData(self.h, self.k, self.gcd_class, hp, -(1 + self.h * hp) // self.k)


_CONGRUENCE_FACTOR = {6: 36, 2: 4, 3: 1, 1: 1}
_DIVISOR = {6: 1, 2: 3, 3: 2, 1: 6}


def inverse_modulus(k: int, gcd_class: int) -> int:
    return _CONGRUENCE_FACTOR[gcd_class] * k * _DIVISOR[gcd_class]


@lru_cache(maxsize=None)
def canonical_inverse(h: int, k: int, gcd_class: int | None = None) -> InverseData:
    """Smallest nonnegative ``h'`` meeting the class congruence and divisibility rule."""
    if k < 1:
        raise ValueError("k must be positive")
    cls = math.gcd(k, 6)
    if gcd_class is not None and gcd_class != cls:
        raise ValueError(f"gcd class {gcd_class} does not match gcd({k}, 6) = {cls}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} are not coprime")
    kstar = _CONGRUENCE_FACTOR[cls] * k
    d = _DIVISOR[cls]
    base = (-pow(h, -1, kstar)) % kstar if kstar > 1 else 0
    hp = next(base + t * kstar for t in range(d) if (base + t * kstar) % d == 0)
    num = 1 + h * hp
    if num % k:
        raise ArithmeticError(f"k' is not integral for h={h}, k={k}, h'={hp}")
    return InverseData(h, k, cls, hp, -num // k)


@lru_cache(maxsize=None)
def _omega(h: int, k: int) -> UnitPhase:
    if k == 1:
        return UnitPhase()
    hp = (-pow(h, -1, k)) % k
    tail = (Fraction(k) - Fraction(1, k)) * (2 * h - hp + h * h * hp) / 12
    if k % 2:
        sign = kronecker_symbol(-h, k)
        expo = -(Fraction(k - 1, 4) + tail)
    else:
        sign = kronecker_symbol(-k, h)
        expo = -(Fraction(2 - h * k - h, 4) + tail)
    return UnitPhase.of_sign(sign) * UnitPhase.from_pi_multiple(expo)


def omega_multiplier(h: int, k: int, inv: InverseData | None = None) -> UnitPhase:
    """The multiplier ``omega_{h,k}`` of ``P(q)`` as an exact 24k-th root of unity.

    ``h`` may be any integer coprime to ``k``; it is reduced mod ``k`` first.
    When ``k`` is odd the odd-``k`` branch is used, otherwise ``h`` is odd and
    the odd-``h`` branch applies. The value depends on ``h'`` only mod ``k``,
    so ``inv`` is accepted for validation but not needed.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if math.gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} are not coprime")
    if inv is not None and (inv.h - h) % k == 0 and (h * inv.h_prime + 1) % k:
        raise ValueError(f"h'={inv.h_prime} is not an inverse of -h mod k")
    return _omega(h % k, k)


def farey_sequence(N: int) -> tuple[Fraction, ...]:
    """``F_N`` from 0/1 to 1/1 via the next-term recurrence."""
    if N < 1:
        raise ValueError("N must be positive")
    a, b, c, d = 0, 1, 1, N
    out = [Fraction(0, 1)]
    while c <= N:
        out.append(Fraction(c, d))
        t = (N + b) // d
        a, b, c, d = c, d, t * c - a, t * d - b
    return tuple(out)


@dataclass(frozen=True)
class FareyNeighbors:
    """``h1/k1 < h/k < h2/k2`` adjacent in ``F_N`` (wrapping around mod 1)."""

    h: int
    k: int
    h1: int
    k1: int
    h2: int
    k2: int

    @property
    def theta_minus(self) -> Fraction:
        return Fraction(1, self.k * (self.k + self.k1))

    @property
    def theta_plus(self) -> Fraction:
        return Fraction(1, self.k * (self.k + self.k2))


def farey_neighbors(h: int, k: int, N: int) -> FareyNeighbors:
    """Neighbours of ``h/k`` in ``F_N``; 0/1 and 1/1 see ``-1/N`` and ``(N+1)/N``."""
    if not (1 <= k <= N and 0 <= h <= k) or math.gcd(h, k) != 1:
        raise ValueError(f"{h}/{k} is not in F_{N}")
    # left neighbour solves h*k1 - h1*k = 1 with N - k < k1 <= N
    if k == 1:
        k1 = k2 = N
        h1, h2 = h * N - 1, h * N + 1
    else:
        k1 = pow(h, -1, k)
        k1 += ((N - k1) // k) * k
        h1 = (h * k1 - 1) // k
        k2 = (-pow(h, -1, k)) % k
        k2 += ((N - k2) // k) * k
        h2 = (h * k2 + 1) // k
    return FareyNeighbors(h, k, h1, k1, h2, k2)
