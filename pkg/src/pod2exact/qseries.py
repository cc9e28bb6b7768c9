"""Exact integer q-series: Pochhammer products, eta-quotients and mock theta functions.

Every series here is a truncated power series in ``q`` with Python ``int``
coefficients, so identities between them can be checked with exact equality.
Fractional powers of ``q`` never occur in :class:`IntSeries`; the numeric
evaluators at the bottom of the module handle those.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Iterable, Mapping, Sequence

import mpmath

__all__ = [
    "IntSeries",
    "PartitionConstraint",
    "series_mul",
    "series_inv",
    "pochhammer_series",
    "partition_series",
    "eta_quotient",
    "rho_series",
    "omega_mock_series",
    "f_mock_series",
    "zeta1_series",
    "zeta2_series",
    "rho_omega_product_side",
    "pod2_series_identity",
    "pod2_series_decomposition",
    "pod2_count_oracle",
    "pod2_count_table",
    "eval_product_num",
    "eval_product_exp",
    "eval_mock_num",
]


@dataclass(frozen=True)
class IntSeries:
    """Power series ``sum c_i q^i`` known exactly for ``0 <= i <= order``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_list(cls, coeffs: Iterable[int], order: int | None = None) -> IntSeries:
        coeffs = list(coeffs)
        if order is not None:
            coeffs = (coeffs + [0] * (order + 1))[: order + 1]
        return cls(tuple(coeffs))

    @classmethod
    def one(cls, order: int) -> IntSeries:
        return cls.from_list([1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> IntSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return IntSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        if isinstance(other, int):
            return IntSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        if not isinstance(other, IntSeries):
            return NotImplemented
        n = min(self.order, other.order) + 1
        return IntSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    __radd__ = __add__

    def __neg__(self):
        return IntSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntSeries(tuple(other * c for c in self.coeffs))
        if not isinstance(other, IntSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return series_inv(self) ** (-e)
        out = IntSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> IntSeries:
        return series_inv(self)


@dataclass(frozen=True)
class PartitionConstraint:
    """Which partitions are counted by :func:`pod2_count_oracle`."""

    largest_part_even: bool = True
    odd_multiplicity_cap: int = 2


def series_mul(a: IntSeries, b: IntSeries) -> IntSeries:
    """Truncated Cauchy product; the result has order ``min(a.order, b.order)``."""
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = [0] * (n + 1)
    for i, x in enumerate(ac[: n + 1]):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * bc[j]
    return IntSeries(tuple(out))


def series_inv(a: IntSeries) -> IntSeries:
    """Multiplicative inverse of a series with constant term +1 or -1."""
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise ValueError(f"series with constant term {c0} has no integral inverse")
    n = a.order
    out = [0] * (n + 1)
    out[0] = c0
    for i in range(1, n + 1):
        s = sum(a.coeffs[j] * out[i - j] for j in range(1, i + 1))
        out[i] = -c0 * s
    return IntSeries(tuple(out))


def _mul_binomial(c: list[int], step: int, sign: int = -1) -> None:
    # c <- c * (1 + sign*q^step), in place
    for i in range(len(c) - 1, step - 1, -1):
        c[i] += sign * c[i - step]


def _div_binomial(c: list[int], step: int, sign: int = -1) -> None:
    # c <- c / (1 + sign*q^step), in place
    for i in range(step, len(c)):
        c[i] -= sign * c[i - step]


def _div_poly(c: list[int], poly: Sequence[tuple[int, int]]) -> None:
    """c <- c / (1 + sum coef*q^exp) for the sparse ``(exp, coef)`` list ``poly``."""
    for i in range(len(c)):
        acc = c[i]
        for e, a in poly:
            if e <= i:
                acc -= a * c[i - e]
        c[i] = acc


@lru_cache(maxsize=256)
def _pochhammer(r: int, order: int) -> IntSeries:
    c = [1] + [0] * order
    j = r
    while j <= order:
        _mul_binomial(c, j)
        j += r
    return IntSeries(tuple(c))


def pochhammer_series(r: int, order: int) -> IntSeries:
    """``(q^r; q^r)_inf`` truncated at ``order``."""
    if r < 1 or order < 0:
        raise ValueError("need r >= 1 and order >= 0")
    return _pochhammer(r, order)


@lru_cache(maxsize=256)
def _partition(r: int, order: int) -> IntSeries:
    c = [1] + [0] * order
    j = r
    while j <= order:
        _div_binomial(c, j)
        j += r
    return IntSeries(tuple(c))


def partition_series(r: int, order: int) -> IntSeries:
    """``P(q^r) = 1/(q^r; q^r)_inf``; for ``r == 1`` the coefficients are p(n)."""
    if r < 1 or order < 0:
        raise ValueError("need r >= 1 and order >= 0")
    return _partition(r, order)


def eta_quotient(exponents: Mapping[int, int], order: int) -> IntSeries:
    """``prod_r (q^r; q^r)_inf ** e_r`` for the mapping ``{r: e_r}``."""
    out = IntSeries.one(order)
    for r, e in sorted(exponents.items()):
        if e > 0:
            out = out * pochhammer_series(r, order) ** e
        elif e < 0:
            out = out * partition_series(r, order) ** (-e)
    return out


def _hypergeometric_sum(order: int, offsets, factors) -> IntSeries:
    """Sum of ``q^offsets(n) / D_n`` with ``D_n = D_{n-1} * factors(n)``.

    ``factors(n)`` lists the polynomial divisors (sparse ``(exp, coef)`` form,
    constant term 1 implied) that are added to the denominator at step ``n``.
    The sum stops at the first ``n`` whose offset exceeds ``order``.
    """
    total = [0] * (order + 1)
    inv_den = [1] + [0] * order
    n = 0
    while True:
        off = offsets(n)
        if off > order:
            break
        for poly in factors(n):
            _div_poly(inv_den, poly)
        for i in range(order + 1 - off):
            total[off + i] += inv_den[i]
        n += 1
    return IntSeries(tuple(total))


@lru_cache(maxsize=32)
def rho_series(order: int) -> IntSeries:
    """Third-order mock theta ``rho(q)``."""
    return _hypergeometric_sum(
        order,
        lambda n: 2 * n * (n + 1),
        lambda n: [((2 * n + 1, 1), (4 * n + 2, 1))],
    )


@lru_cache(maxsize=32)
def omega_mock_series(order: int) -> IntSeries:
    """Third-order mock theta ``omega(q)``; denominators ``(q; q^2)_{n+1}^2``."""
    return _hypergeometric_sum(
        order,
        lambda n: 2 * n * (n + 1),
        lambda n: [((2 * n + 1, -1),)] * 2,
    )


@lru_cache(maxsize=32)
def f_mock_series(order: int) -> IntSeries:
    """Third-order mock theta ``f(q)``; denominators ``(-q; q)_n^2``."""
    return _hypergeometric_sum(
        order,
        lambda n: n * n,
        lambda n: [((n, 1),)] * 2 if n else [],
    )


def zeta1_series(order: int) -> IntSeries:
    return eta_quotient({1: -1, 3: 1, 6: -1}, order)


def zeta2_series(order: int) -> IntSeries:
    return eta_quotient({1: -1, 2: -1, 3: -1, 6: 3}, order)


def rho_omega_product_side(order: int) -> IntSeries:
    """``3 (q^6;q^6)^2 / ((q^3;q^6)^2 (q^2;q^2))``, equal to ``2 rho + omega``."""
    # (q^3; q^6)_inf = (q^3; q^3)_inf / (q^6; q^6)_inf
    return 3 * eta_quotient({2: -1, 3: -2, 6: 4}, order)


def pod2_series_identity(order: int) -> IntSeries:
    """Generating function of pod2 as ``zeta1 * rho``."""
    return zeta1_series(order) * rho_series(order)


def pod2_series_decomposition(order: int) -> IntSeries:
    """Generating function of pod2 as ``-zeta1*omega/2 + 3*zeta2/2``."""
    doubled = 3 * zeta2_series(order) - zeta1_series(order) * omega_mock_series(order)
    odd = [i for i, c in enumerate(doubled) if c % 2]
    if odd:
        raise ArithmeticError(f"non-integral coefficients at exponents {odd[:5]}")
    return IntSeries(tuple(c // 2 for c in doubled))


def _capped_part_step(ways: list[int], p: int, cap: int | None) -> None:
    # allow part p with multiplicity <= cap (None: unbounded), in place
    if cap is None:
        for a in range(p, len(ways)):
            ways[a] += ways[a - p]
        return
    old = ways[:]
    for a in range(p, len(ways)):
        s = 0
        for mult in range(1, cap + 1):
            if mult * p > a:
                break
            s += old[a - mult * p]
        ways[a] += s


@lru_cache(maxsize=1024)
def pod2_count_oracle(n: int, constraint: PartitionConstraint = PartitionConstraint()) -> int:
    """Count partitions of ``n`` by their largest part.

    ``ways[a]`` holds the number of partitions of ``a`` into parts ``<= L`` with
    capped odd multiplicities; a partition with largest part exactly ``L``
    is ``L`` plus a partition of ``n - L`` into parts ``<= L``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    cap = constraint.odd_multiplicity_cap
    ways = [1] + [0] * n
    total = 0
    for part in range(1, n + 1):
        _capped_part_step(ways, part, cap if part % 2 else None)
        if part % 2 == 0 or not constraint.largest_part_even:
            total += ways[n - part]
    return total


def pod2_count_table(order: int) -> list[int]:
    """``[pod2(0), ..., pod2(order)]`` from one shared table of restricted partitions."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    ways = [1] + [0] * order
    out = [1] + [0] * order
    for part in range(1, order + 1):
        before = ways[:]
        _capped_part_step(ways, part, 2 if part % 2 else None)
        if part % 2 == 0:
            for a in range(part, order + 1):
                out[a] += ways[a] - before[a]
    return out


# -- numeric evaluation -----------------------------------------------------

def _is_mp(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def eval_product_num(r: Number | Fraction, t, tol: float | None = None):
    """``P(t^r) = 1/prod_{j>=1} (1 - t^{r j})`` with the principal branch of ``t^r``.

    Works in double precision for Python numbers and at the working
    precision of :mod:`mpmath` for ``mpf``/``mpc`` input.
    """
    mp = _is_mp(t)
    if abs(t) >= 1:
        raise ValueError("need |t| < 1")
    if t == 0:
        return mpmath.mpc(1) if mp else 1.0 + 0j
    if mp:
        base = mpmath.exp(mpmath.mpf(Fraction(r).numerator) / Fraction(r).denominator * mpmath.log(t))
        tol = mpmath.mpf(10) ** (-mpmath.mp.dps - 3) if tol is None else tol
    else:
        base = cmath.exp(float(r) * cmath.log(complex(t)))
        tol = 1e-18 if tol is None else tol
    return _euler_product_inverse(base, tol, mp)


def eval_product_exp(r: Number | Fraction, w, tol: float | None = None):
    """``P(q^r)`` at ``q = e^{2 pi i w}`` with ``q^r := e^{2 pi i r w}`` (``Im w > 0``).

    This fixes the branch of fractional powers through the exponent ``w``
    instead of the principal logarithm of ``q``.
    """
    mp = _is_mp(w)
    if mp:
        r = Fraction(r)
        base = mpmath.exp(2j * mpmath.pi * mpmath.mpf(r.numerator) / r.denominator * w)
        tol = mpmath.mpf(10) ** (-mpmath.mp.dps - 3) if tol is None else tol
    else:
        base = cmath.exp(2j * math.pi * float(r) * complex(w))
        tol = 1e-18 if tol is None else tol
    if abs(base) >= 1:
        raise ValueError("need Im(w) > 0")
    return _euler_product_inverse(base, tol, mp)


def _euler_product_inverse(base, tol, mp: bool):
    prod = mpmath.mpc(1) if mp else 1.0 + 0j
    power = base
    while abs(power) > tol:
        prod *= 1 - power
        power *= base
    return 1 / prod


def eval_mock_num(name: str, q, tol: float | None = None):
    """Numeric value of ``rho``, ``omega`` or ``f`` at ``|q| < 1`` from the defining sums."""
    mp = _is_mp(q)
    if abs(q) >= 1:
        raise ValueError("need |q| < 1")
    one = mpmath.mpc(1) if mp else 1.0 + 0j
    if tol is None:
        tol = mpmath.mpf(10) ** (-mpmath.mp.dps - 3) if mp else 1e-18
    total = 0 * one
    den = one
    n = 0
    while True:
        if name == "rho":
            num = q ** (2 * n * (n + 1))
            den *= 1 + q ** (2 * n + 1) + q ** (4 * n + 2)
        elif name == "omega":
            num = q ** (2 * n * (n + 1))
            den *= (1 - q ** (2 * n + 1)) ** 2
        elif name == "f":
            num = q ** (n * n)
            if n:
                den *= (1 + q**n) ** 2
        else:
            raise ValueError(f"unknown mock theta function {name!r}")
        term = num / den
        total += term
        if abs(num) < tol and n > 1:
            return total
        n += 1
