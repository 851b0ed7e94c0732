"""Shared numerical kernels: bracketed roots, golden-section search, W_{-1}
and log-space binomial probabilities."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln

from laststop.errors import DomainError, MaxIterations, NoSignChange

INV_E = math.exp(-1.0)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def find_root(
    f: Callable[[float], float],
    bracket: tuple[float, float],
    tol: float = 1e-13,
    maxiter: int = 200,
) -> float:
    """Root of ``f`` inside ``bracket``.

    Brent's method (bisection safeguarded by secant and inverse quadratic
    steps). An endpoint where ``f`` is exactly zero is returned as is.

    Raises
    ------
    NoSignChange
        If ``f(a)`` and ``f(b)`` have the same strict sign.
    MaxIterations
        If ``maxiter`` iterations do not shrink the bracket below ``tol``.
    """
    a, b = float(bracket[0]), float(bracket[1])
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if not (math.isfinite(fa) and math.isfinite(fb)) or (fa > 0) == (fb > 0):
        raise NoSignChange(f"no sign change on [{a}, {b}]: f={fa}, {fb}")
    try:
        return brentq(f, a, b, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=maxiter)
    except RuntimeError as exc:
        raise MaxIterations(str(exc)) from exc


def scan_bracket(
    f: Callable[[float], float], lo: float, hi: float, points: int = 64
) -> tuple[float, float]:
    """First sub-interval of an even grid on ``[lo, hi]`` where ``f`` changes sign."""
    xs = np.linspace(lo, hi, points)
    prev_x, prev_f = xs[0], f(xs[0])
    if prev_f == 0.0:
        return prev_x, prev_x
    for x in xs[1:]:
        fx = f(x)
        if fx == 0.0 or (fx > 0) != (prev_f > 0):
            return prev_x, x
        prev_x, prev_f = x, fx
    raise NoSignChange(f"no sign change on grid over [{lo}, {hi}]")


def maximize_1d(
    f: Callable[[float], float],
    interval: tuple[float, float],
    tol: float = 1e-10,
    maxiter: int = 500,
) -> float:
    """Abscissa of the maximum of a unimodal ``f`` by golden-section search."""
    a, b = float(interval[0]), float(interval[1])
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    else:
        raise MaxIterations(f"golden section did not reach width {tol}")
    # the interior estimate can lose to an endpoint when f is monotone
    x = 0.5 * (a + b)
    best = max((f(x), x), (f(interval[0]), interval[0]), (f(interval[1]), interval[1]))
    return float(best[1])


def lambert_w_m1(x: float, rtol: float = 1e-15, maxiter: int = 50) -> float:
    """Lower real branch W_{-1}(x) for -1/e <= x < 0, so that w*exp(w) = x, w <= -1."""
    x = float(x)
    if not (-INV_E - 1e-16 <= x < 0.0):
        raise DomainError(f"W_{{-1}} is defined on [-1/e, 0), got {x}")
    r = 2.0 * (math.e * x + 1.0)
    if r <= 0.0:
        return -1.0
    if x < -0.25:
        # branch-point series in s = -sqrt(2(ex+1))
        s = -math.sqrt(r)
        w = -1.0 + s - s * s / 3.0 + 11.0 / 72.0 * s**3
    else:
        lx = math.log(-x)
        w = lx - math.log(-lx) if lx < -1.0 else lx
    for _ in range(maxiter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= rtol * abs(w):
            break
    return min(w, -1.0)


def log_binom_coef(n, k):
    """log C(n, k) via log-gamma; accepts arrays."""
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


def binom_pmf(k, n, prob):
    """Binomial(n, prob) mass at ``k``, computed in log space.

    Handles ``prob`` in {0, 1} and returns 0 outside ``0 <= k <= n``.
    Arguments broadcast.
    """
    k, n, prob = np.broadcast_arrays(
        np.asarray(k, dtype=float), np.asarray(n, dtype=float), np.asarray(prob, dtype=float)
    )
    out = np.zeros(k.shape)
    inside = (k >= 0) & (k <= n)
    with np.errstate(divide="ignore", invalid="ignore"):
        lp = np.where(k > 0, k * np.log(prob), 0.0)
        lq = np.where(n - k > 0, (n - k) * np.log1p(-prob), 0.0)
        logpmf = log_binom_coef(n, k) + lp + lq
    ok = inside & np.isfinite(logpmf)
    out[ok] = np.exp(logpmf[ok])
    return out if out.ndim else float(out)
