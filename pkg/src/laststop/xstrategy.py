"""The x-strategy in continuous time with uniform arrivals.

``n`` trials arrive at the order statistics of ``n`` uniforms on [0, 1]. The
strategy ignores everything before time ``x`` and then applies a threshold
rule to the trials still to come, whose count is Binomial(n, 1 - x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from laststop.errors import EqualCaseRequired, ParamError
from laststop.model import ModelParams
from laststop.numerics import binom_pmf, find_root, maximize_1d
from laststop.success import w_closed
from laststop.thresholds import discrete_optimum

LN2 = math.log(2.0)


@dataclass(frozen=True)
class XStrategyResult:
    n: int
    p: float
    x_star: float
    p_star: float
    p_tilde: float
    beta_n: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class XStrategyAsymptotic:
    x_approx: float
    p_star_approx: float
    p_tilde_approx: float


@dataclass(frozen=True)
class UnequalXStrategy:
    c_d: int
    x_star: float
    p_at_x_star: float


def _check_equal(n: int, p: float) -> None:
    if n < 1:
        raise ParamError(f"n must be >= 1, got {n}")
    if not 0.0 < p < 0.5:
        raise ParamError(f"need 0 < p < 1/2, got {p}")


def success_prob_x(n: int, p: float, x: float) -> float:
    """Equal-case success of waiting until ``x`` then taking the first mark."""
    _check_equal(n, p)
    if not 0.0 <= x <= 1.0:
        raise ParamError(f"x must lie in [0, 1], got {x}")
    q = 1.0 - p
    return 2.0 * ((q + p * x) ** n - (2.0 * q - 1.0 + 2.0 * p * x) ** n)


def success_prob_x_diagonal(model: ModelParams, n: int, x: float) -> float:
    """Success of taking the first mark of either sign after ``x``, any ``p >= p'``.

    Reduces to :func:`success_prob_x` when ``p == p'``.
    """
    p, pp = model.p, model.pprime
    a = (x + (1 - x) * model.q) ** n
    b = (x + (1 - x) * model.qprime) ** n
    c = (x + (1 - x) * model.qtilde) ** n
    return (p * p * (a - c) + pp * pp * (b - c)) / (p * pp)


def _beta(n: int) -> float:
    return 2.0 ** (1.0 / (n - 1))


def _beta_minus_one(n: int) -> float:
    return math.expm1(LN2 / (n - 1))


def p_star(n: int) -> float:
    """Optimal equal-case success probability; the same for every admissible p."""
    return 2.0 * math.exp((1 - n) * math.log1p(2.0 * _beta_minus_one(n)))


def p_tilde(n: int) -> float:
    """Largest ``p`` for which the optimal waiting time is 0."""
    bm1 = _beta_minus_one(n)
    return bm1 / (1.0 + 2.0 * bm1)


def x_star(n: int, p: float) -> float:
    """Optimal waiting time, clamped at 0 for ``p <= p_tilde(n)``."""
    b = _beta(n)
    q = 1.0 - p
    x = (-q + 2.0 * b * q - b) / (1.0 - q - 2.0 * b + 2.0 * b * q)
    return max(0.0, x)


def xstrategy_exact(n: int, p: float) -> XStrategyResult:
    if n < 2:
        raise ParamError(f"n must be >= 2, got {n}")
    _check_equal(n, p)
    return XStrategyResult(n, p, x_star(n, p), p_star(n), p_tilde(n), _beta(n))


def xstrategy_asymptotic(n: int, p: float) -> XStrategyAsymptotic:
    """Large-``n`` expansions, truncated after the 1/n^2 terms."""
    c = LN2 * (-2.0 + 3.0 * LN2)
    x = 1.0 - LN2 / (n * p) + c / (2.0 * p * n * n)
    ps = 0.5 + LN2**2 / (2.0 * n) + LN2**2 * (2.0 - 2.0 * LN2 + LN2**2) / (4.0 * n * n)
    pt = LN2 / n - c / (2.0 * n * n)
    return XStrategyAsymptotic(x, ps, pt)


def success_prob_small_p(n: int, y: float) -> float:
    """Success at ``x = 0`` with ``p = y / n``, expanded to order 1/n^2."""
    e1, e2 = math.exp(-y), math.exp(-2.0 * y)
    t0 = 2.0 * e1 - 2.0 * e2
    t1 = (-e1 * y**2 + 4.0 * e2 * y**2) / n
    t2 = (2.0 * e1 * (-(y**3) / 3.0 + y**4 / 8.0) - 2.0 * e2 * (-8.0 / 3.0 * y**3 + 2.0 * y**4)) / n**2
    return t0 + t1 + t2


def _unequal_terms(model: ModelParams, n: int, c_d: int) -> np.ndarray:
    # W(ell) for ell = 0..n: -1 accepted at once, +1 once c_d trials remain
    out = np.empty(n + 1)
    for ell in range(n + 1):
        d = ell - 1
        out[ell] = w_closed(model, c_d, d) if d >= c_d else w_closed(model, d, d)
    return out


def success_prob_x_unequal(model: ModelParams, n: int, c_d: int, x: float) -> float:
    """x-strategy success for ``p > p'`` using the discrete +1 threshold ``c_d``.

    Direct finite sum over the number of trials left after ``x``.
    """
    if not 0.0 <= x <= 1.0:
        raise ParamError(f"x must lie in [0, 1], got {x}")
    ell = np.arange(n + 1)
    weights = binom_pmf(ell, n, 1.0 - x)
    return math.fsum(weights * _unequal_terms(model, n, c_d))


def _bernstein_slope(coef: np.ndarray, n: int, x: float) -> float:
    # d/dx sum_k a_k C(n,k) x^k (1-x)^(n-k), with a_k indexed by powers of x
    k = np.arange(n)
    return n * math.fsum(np.diff(coef) * binom_pmf(k, n - 1, x))


def x_star_unequal(model: ModelParams, n: int, c_d: int | None = None) -> UnequalXStrategy:
    """Optimal waiting time for the unequal case at horizon ``n``.

    ``c_d`` defaults to the discrete optimum of the threshold problem.
    """
    if model.is_equal_case:
        raise EqualCaseRequired("x_star_unequal needs p > pprime; use xstrategy_exact")
    if c_d is None:
        c_d = discrete_optimum(model).c_d
    terms = _unequal_terms(model, n, c_d)
    by_power = terms[::-1]  # a_k multiplies x^k (1-x)^(n-k), i.e. ell = n - k

    def value(x: float) -> float:
        return math.fsum(binom_pmf(np.arange(n + 1), n, 1.0 - x) * terms)

    x = maximize_1d(value, (0.0, 1.0), tol=1e-9)
    if 0.0 < x < 1.0:
        lo, hi = max(0.0, x - 1e-6), min(1.0, x + 1e-6)
        slope = lambda t: _bernstein_slope(by_power, n, t)  # noqa: E731
        if slope(lo) > 0.0 > slope(hi):
            x = find_root(slope, (lo, hi), tol=1e-15)
    return UnequalXStrategy(c_d, x, value(x))
