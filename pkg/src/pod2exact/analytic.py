"""Numerical kernels: Bessel functions, complex tanh, adaptive quadrature and the integrals.

Everything runs in numpy double precision by default. Setting
``QuadratureConfig.precision`` to a number of decimal digits switches the
quadrature and the integrands to mpmath at that working precision.

Integrands may be vector valued: the final-formula integrals are evaluated
for all ``v`` of one ``k`` in a single adaptive pass, sharing the Bessel
weight, with the error test applied to the worst component.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import mpmath
import numpy as np

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "PoleError",
    "bessel_I1",
    "bessel_I32",
    "complex_tanh",
    "quad_finite",
    "integral_I_final",
    "integral_J_final",
    "mordell_I",
    "mordell_J",
    "mordell_cutoff",
]

_SQRT3 = math.sqrt(3.0)
_POLE_TOL = 1e-14


class PoleError(ValueError):
    """Raised when a tanh argument sits on a pole of the integrand."""


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    max_depth: int = 30
    order: int = 15
    substitution: str = "none"  # or "cos"
    precision: int | None = None  # decimal digits for the mpmath path

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be positive")
        if self.order < 2:
            raise ValueError("order must be at least 2")
        if self.substitution not in ("none", "cos"):
            raise ValueError(f"unknown substitution {self.substitution!r}")
        if self.precision is not None and self.precision < 15:
            raise ValueError("extended precision needs at least 15 digits")


@dataclass(frozen=True)
class QuadResult:
    value: object  # complex, ndarray of complex, mpc or list of mpc
    error: float
    converged: bool
    evals: int


# -- special functions -------------------------------------------------------


def bessel_I1(x):
    """``I_1(x)`` by its ascending series, for a scalar or an array of ``x >= 0``."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(~np.isfinite(arr)):
        raise ValueError("bessel_I1 needs finite x >= 0")
    half = arr / 2
    sq = half * half
    term = half.copy()
    total = term.copy()
    m = 0
    while True:
        term = term * sq / ((m + 1) * (m + 2))
        total = total + term
        m += 1
        if np.all(term <= 1e-17 * total):
            break
    return float(total) if np.ndim(x) == 0 else total


def bessel_I32(x: float) -> float:
    """``I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)``."""
    if not x > 0:
        raise ValueError("bessel_I32 needs x > 0")
    if x < 1e-2:
        # cancellation in the closed form; the leading series terms are exact enough
        s = x * x
        return math.sqrt(2 / (math.pi * x)) * (s / 3) * (1 + s / 10 + s * s / 280)
    return math.sqrt(2 / (math.pi * x)) * (math.cosh(x) - math.sinh(x) / x)


def complex_tanh(w):
    """``tanh(w)`` for complex scalars or arrays, stable for large ``|Re w|``."""
    w = np.asarray(w, dtype=complex)
    s = np.where(w.real >= 0, 1.0, -1.0)
    e = np.exp(-2 * s * w)
    den = 1 + e
    if np.any(np.abs(den) < _POLE_TOL):
        raise PoleError("tanh evaluated at a pole")
    out = s * (1 - e) / den
    return complex(out) if out.ndim == 0 else out


def _coth(w):
    t = complex_tanh(w)
    if np.any(np.abs(t) < _POLE_TOL):
        raise PoleError("integrand has a pole on the path (tanh vanishes)")
    return 1 / t


# -- quadrature --------------------------------------------------------------


@lru_cache(maxsize=None)
def _gl(order: int):
    return np.polynomial.legendre.leggauss(order)


@lru_cache(maxsize=None)
def _gl_mp(order: int, dps: int):
    xs0, _ = _gl(order)
    nodes, weights = [], []
    with mpmath.workdps(dps + 10):
        for x0 in xs0:
            x = mpmath.mpf(x0)
            for _ in range(100):
                p, dp = _legendre_and_derivative(order, x)
                step = p / dp
                x -= step
                if abs(step) < mpmath.mpf(10) ** (-(dps + 5)):
                    break
            _, dp = _legendre_and_derivative(order, x)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    return nodes, weights


def _legendre_and_derivative(n, x):
    p0, p1 = mpmath.mpf(1), x
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    return p1, n * (x * p1 - p0) / (x * x - 1)


def quad_finite(f: Callable, cfg: QuadratureConfig = QuadratureConfig(), a: float = -1.0, b: float = 1.0) -> QuadResult:
    """Adaptive Gauss-Legendre over ``[a, b]``.

    Each panel is compared with its two halves; a panel is accepted when the
    difference is below ``abs_tol`` times its share of the interval. Panels
    still open at ``max_depth`` are accepted with ``converged=False``.

    In double mode ``f`` takes a 1-D array of nodes and returns either an
    array of the same length or an ``(len(x), m)`` array. In extended mode it
    takes one ``mpf`` and returns an ``mpc`` or a list of them.
    """
    if cfg.substitution == "cos":
        if (a, b) != (-1.0, 1.0):
            raise ValueError("the cos substitution is only defined on [-1, 1]")
        if cfg.precision is None:
            g = lambda t: _scale_rows(f(np.cos(t)), np.sin(t))
        else:
            g = lambda t: _scale_mp(f(mpmath.cos(t)), mpmath.sin(t))
        a, b = 0.0, math.pi
        if cfg.precision is not None:
            with mpmath.workdps(cfg.precision):
                return _quad_mp(g, cfg, mpmath.mpf(0), +mpmath.pi)
        return _quad_np(g, cfg, a, b)
    if cfg.precision is not None:
        with mpmath.workdps(cfg.precision):
            return _quad_mp(f, cfg, mpmath.mpf(a), mpmath.mpf(b))
    return _quad_np(f, cfg, a, b)


def _scale_rows(vals, s):
    vals = np.asarray(vals)
    return vals * (s if vals.ndim == 1 else s[:, None])


def _scale_mp(val, s):
    if isinstance(val, (list, tuple)):
        return [s * z for z in val]
    return s * val


def _panel_np(f, lo, hi, order):
    xs, ws = _gl(order)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    pts = (mid[:, None] + half[:, None] * xs[None, :]).ravel()
    vals = np.asarray(f(pts), dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("integrand produced a non-finite value")
    matrix = vals.ndim == 2
    vals = vals.reshape(len(lo), order, -1)
    return np.einsum("pom,o->pm", vals, ws) * half[:, None], matrix


def _quad_np(f, cfg, a, b):
    order = cfg.order
    total_width = b - a
    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    whole, matrix = _panel_np(f, lo, hi, order)
    evals = order
    done_lo, done_val, done_err = [], [], []
    frozen_err = 0.0
    converged = True
    for depth in range(cfg.max_depth + 1):
        mid = (lo + hi) / 2
        left, _ = _panel_np(f, lo, mid, order)
        right, _ = _panel_np(f, mid, hi, order)
        evals += 2 * order * len(lo)
        refined = left + right
        err = np.abs(refined - whole).max(axis=1)
        # panels inside their share of the budget are final; the rest are split
        # unless the global error sum already meets the tolerance
        ok = err <= cfg.abs_tol * (hi - lo) / total_width
        if frozen_err + err.sum() <= cfg.abs_tol:
            ok[:] = True
        elif depth == cfg.max_depth:
            ok[:] = True
            converged = False
        frozen_err += err[ok].sum()
        done_lo.append(lo[ok])
        done_val.append(refined[ok])
        done_err.append(err[ok])
        keep = ~ok
        if not keep.any():
            break
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        whole = np.concatenate([left[keep], right[keep]])
    starts = np.concatenate(done_lo)
    vals = np.concatenate(done_val)
    errs = np.concatenate(done_err)
    value = vals[np.argsort(starts, kind="stable")].sum(axis=0)
    out = value if matrix else complex(value[0])
    return QuadResult(out, float(errs.sum()), converged, evals)


def _panel_mp(f, lo, hi, nodes, weights):
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    acc = None
    for x, w in zip(nodes, weights):
        val = f(mid + half * x)
        vec = list(val) if isinstance(val, (list, tuple)) else [val]
        if acc is None:
            acc = [w * z for z in vec]
        else:
            acc = [s + w * z for s, z in zip(acc, vec)]
    return [half * s for s in acc], isinstance(val, (list, tuple))


def _quad_mp(f, cfg, a, b):
    # same schedule as _quad_np, one panel at a time
    nodes, weights = _gl_mp(cfg.order, mpmath.mp.dps)
    width = b - a
    tol = mpmath.mpf(cfg.abs_tol)
    first, vector = _panel_mp(f, a, b, nodes, weights)
    active = [(a, b, first)]
    evals = cfg.order
    pieces: list[tuple] = []
    frozen_err = mpmath.mpf(0)
    converged = True
    for depth in range(cfg.max_depth + 1):
        rows = []
        for lo, hi, whole in active:
            mid = (lo + hi) / 2
            left, _ = _panel_mp(f, lo, mid, nodes, weights)
            right, _ = _panel_mp(f, mid, hi, nodes, weights)
            refined = [l + r for l, r in zip(left, right)]
            err = max(abs(r - w) for r, w in zip(refined, whole))
            rows.append((lo, mid, hi, left, right, refined, err, err <= tol * (hi - lo) / width))
        evals += 2 * cfg.order * len(active)
        finish = frozen_err + mpmath.fsum(r[6] for r in rows) <= tol
        if not finish and depth == cfg.max_depth:
            finish, converged = True, False
        active = []
        for lo, mid, hi, left, right, refined, err, ok in rows:
            if ok or finish:
                pieces.append((lo, refined, err))
                frozen_err += err
            else:
                active += [(lo, mid, left), (mid, hi, right)]
        if not active:
            break
    pieces.sort(key=lambda p: p[0])
    m = len(pieces[0][1])
    value = [mpmath.fsum(p[1][i] for p in pieces) for i in range(m)]
    err = float(mpmath.fsum(p[2] for p in pieces))
    return QuadResult(value if vector else value[0], err, converged, evals)


# -- integrals of the exact formula ------------------------------------------


def _as_vs(v) -> tuple[np.ndarray, bool]:
    scalar = np.ndim(v) == 0
    return np.atleast_1d(np.asarray(v, dtype=np.int64)), scalar


def _final_integral(theta: np.ndarray, slope: float, bessel_scale: float, cfg: QuadratureConfig, scalar: bool):
    """``int_{-1}^{1} sqrt(1-x^2) I_1(s sqrt(1-x^2)) / tanh(i theta_v - slope x) dx`` for every theta_v."""
    if np.any(np.abs(np.sin(theta)) < _POLE_TOL):
        raise PoleError("tanh argument is an integer multiple of i pi at x = 0")
    def f(x):
        r = np.sqrt(np.clip(1 - x * x, 0.0, None))
        wgt = r * bessel_I1(bessel_scale * r)
        return wgt[:, None] * _coth(1j * theta[None, :] - slope * x[:, None])

    res = quad_finite(f, cfg)
    return QuadResult(complex(res.value[0]) if scalar else res.value, res.error, res.converged, res.evals)


def integral_I_final(b: float, k: int, v, n: int, cfg: QuadratureConfig = QuadratureConfig()) -> QuadResult:
    """``II_{b,k,v}(n)``; ``v`` may be a single index or an array of them.

    Integrand ``sqrt(1-x^2) I_1(4 pi sqrt((n+1/2)(1-x^2)) / (b k))``
    over ``tanh(pi i (6v+2)/(3k) - 2 pi x / (sqrt(3) b k))``.
    """
    if not b > 0 or k < 1 or n < 0:
        raise ValueError("need b > 0, k >= 1, n >= 0")
    vs, scalar = _as_vs(v)
    if cfg.precision is not None:
        with mpmath.workdps(cfg.precision + 5):
            bb = mpmath.mpf(b)
            theta = [mpmath.pi * (6 * int(x) + 2) / (3 * k) for x in vs]
            slope = 2 * mpmath.pi / (mpmath.sqrt(3) * bb * k)
            scale = 4 * mpmath.pi * mpmath.sqrt(mpmath.mpf(2 * n + 1) / 2) / (bb * k)
        _check_theta(theta)
        return _final_integral_mp(theta, slope, scale, cfg, scalar)
    theta = math.pi * (6 * vs + 2) / (3 * k)
    slope = 2 * math.pi / (_SQRT3 * b * k)
    scale = 4 * math.pi * math.sqrt(n + 0.5) / (b * k)
    return _final_integral(theta, slope, scale, cfg, scalar)


def integral_J_final(k: int, v, n: int, cfg: QuadratureConfig = QuadratureConfig()) -> QuadResult:
    """``JJ_{k,v}(n)``; ``v`` may be a single index or an array of them.

    Integrand ``sqrt(1-x^2) I_1(pi sqrt(5 (n+1/2)(1-x^2)) / (3k))``
    over ``tanh(pi i (v - 1/6)/k - sqrt(5) pi x / (6 sqrt(3) k))``.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1, n >= 0")
    vs, scalar = _as_vs(v)
    if cfg.precision is not None:
        with mpmath.workdps(cfg.precision + 5):
            theta = [mpmath.pi * (6 * int(x) - 1) / (6 * k) for x in vs]
            slope = mpmath.sqrt(5) * mpmath.pi / (6 * mpmath.sqrt(3) * k)
            scale = mpmath.pi * mpmath.sqrt(5 * mpmath.mpf(2 * n + 1) / 2) / (3 * k)
        _check_theta(theta)
        return _final_integral_mp(theta, slope, scale, cfg, scalar)
    theta = math.pi * (6 * vs - 1) / (6 * k)
    slope = math.sqrt(5) * math.pi / (6 * _SQRT3 * k)
    scale = math.pi * math.sqrt(5 * (n + 0.5)) / (3 * k)
    return _final_integral(theta, slope, scale, cfg, scalar)


def _check_theta(theta):
    if any(abs(mpmath.sin(t)) < _POLE_TOL for t in theta):
        raise PoleError("tanh argument is an integer multiple of i pi at x = 0")


def _final_integral_mp(theta, slope, scale, cfg, scalar):
    with mpmath.workdps(cfg.precision):
        def g(x):
            r = mpmath.sqrt(max(1 - x * x, 0))
            wgt = r * mpmath.besseli(1, scale * r)
            return [wgt * mpmath.coth(mpmath.mpc(0, t) - slope * x) for t in theta]

        res = quad_finite(g, cfg)
    return QuadResult(res.value[0] if scalar else res.value, res.error, res.converged, res.evals)


# -- Mordell-type integrals --------------------------------------------------


def mordell_cutoff(k: int, z: complex, abs_tol: float) -> float:
    """``X`` with ``|exp(-6 pi z X^2 / k)| = abs_tol / 10``."""
    re = complex(z).real
    if not re > 0:
        raise ValueError("Mordell integrals need Re(z) > 0")
    return math.sqrt(k * math.log(10 / abs_tol) / (6 * math.pi * re))


def _mordell(theta_num: int, theta_den: int, k: int, z, cfg: QuadratureConfig, X: float | None) -> QuadResult:
    # int_R exp(-6 pi z x^2 / k) / tanh(pi i theta - 2 pi z x / k) dx,  theta = theta_num / theta_den
    if k < 1:
        raise ValueError("k must be positive")
    if X is None:
        X = mordell_cutoff(k, complex(z), cfg.abs_tol)
    if cfg.precision is None:
        zc = complex(z)
        theta = math.pi * theta_num / theta_den

        def f(x):
            return np.exp(-6 * math.pi * zc * x * x / k) * _coth(1j * theta - 2 * math.pi * zc * x / k)

        return quad_finite(f, cfg, -X, X)
    with mpmath.workdps(cfg.precision):
        zm = mpmath.mpmathify(z)
        theta = mpmath.pi * theta_num / theta_den

        def g(x):
            return mpmath.exp(-6 * mpmath.pi * zm * x * x / k) * mpmath.coth(mpmath.mpc(0, theta) - 2 * mpmath.pi * zm * x / k)

        return quad_finite(g, cfg, -X, X)


def mordell_I(k: int, v: int, z, cfg: QuadratureConfig = QuadratureConfig(), X: float | None = None) -> QuadResult:
    """``I_{k,v}(z)``: tanh argument ``pi i (6v+2)/(3k) - 2 pi z x / k``."""
    return _mordell(6 * v + 2, 3 * k, k, z, cfg, X)


def mordell_J(k: int, v: int, z, cfg: QuadratureConfig = QuadratureConfig(), X: float | None = None) -> QuadResult:
    """``J_{k,v}(z)``: tanh argument ``pi i (v - 1/6)/k - 2 pi z x / k``."""
    return _mordell(6 * v - 1, 6 * k, k, z, cfg, X)
