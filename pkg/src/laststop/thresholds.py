"""Optimal thresholds: continuous stationary point, equal-case closed forms,
diagonal-constrained optimum, discrete optimum and tie loci."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from laststop.errors import InvalidArgs, NumericalError, ParamError
from laststop.model import ModelParams, new_model
from laststop.numerics import find_root, maximize_1d
from laststop.success import w_closed, w_diag

ROOT_TOL = 1e-13
C_UP = 500.0


def phi1_raw(p: float, pp: float, C: float) -> float:
    q, qp, qt = 1.0 - p, 1.0 - pp, 1.0 - p - pp
    lq, lqp, lqt = math.log(q), math.log(qp), math.log(qt)
    return (
        -qt * (p * p + pp * pp) * (lqt - lqp) * math.exp(C * lqt)
        + p * p * q * (lq - lqp) * math.exp(C * lq)
        - pp * pp * p * math.exp(C * lqp)
    )


def phi2_raw(p: float, pp: float, C: float) -> float:
    q, qp, qt = 1.0 - p, 1.0 - pp, 1.0 - p - pp
    lq, lqp, lqt = math.log(q), math.log(qp), math.log(qt)
    bracket = -p * q * math.exp(C * lq) / (pp * pp) + qt * (p * p + pp * pp) / (pp * pp * p) * math.exp(
        C * lqt
    )
    return bracket * math.exp(-C * lqp) + (-p + lqp * C * p - qp * lqp) / (lqp * p)


def phi1(model: ModelParams, C: float) -> float:
    """Stationarity function in ``C``; the continuous optimum ``C*`` is its root.

    Proportional to dw/dC with a positive factor, so ``phi1 > 0`` means
    raising ``C`` still helps. Does not involve ``D``.
    """
    return phi1_raw(model.p, model.pprime, C)


def phi2(model: ModelParams, C: float) -> float:
    """The ``D`` solving dw/dD = 0 at a given ``C``."""
    return phi2_raw(model.p, model.pprime, C)


class DiscreteOptimum(NamedTuple):
    c_d: int
    d_d: int
    w: float


@dataclass(frozen=True)
class EqualCaseOptima:
    c_eq_star: float
    d_eq_star: float
    c_diag_star: float


@dataclass(frozen=True)
class ThresholdSolution:
    """Continuous, practical and discrete thresholds for one model.

    ``c_star`` is the clamped value actually used; ``c_clamped`` records that
    the stationary root was negative (or absent). ``d_star`` follows the
    practical column of the region table. ``c_diag`` is the optimum of the
    diagonal strategy ``C = D`` and is reported alongside, not substituted.
    """

    c_star: float
    c_clamped: bool
    d_star: float
    c_diag: float
    c_discrete: int
    d_discrete: int
    w_continuous: float
    w_discrete: float
    region: object  # regions.RegionClass; typed loosely to avoid the import cycle

    def to_dict(self) -> dict:
        return {
            "c_star": self.c_star,
            "c_clamped": self.c_clamped,
            "d_star": self.d_star,
            "c_diag": self.c_diag,
            "c_discrete": self.c_discrete,
            "d_discrete": self.d_discrete,
            "w_continuous": self.w_continuous,
            "w_discrete": self.w_discrete,
            "region": self.region.row.name,
        }


def c_star_root(model: ModelParams) -> float | None:
    """Positive root of ``phi1``, or ``None`` when ``phi1(0) <= 0``."""
    if phi1(model, 0.0) <= 0.0:
        return None
    hi = 1.0
    while phi1(model, hi) >= 0.0:
        hi *= 2.0
        if hi > C_UP:
            raise NumericalError(f"phi1 keeps its sign up to C={C_UP} for {model}")
    return find_root(lambda c: phi1(model, c), (0.0, hi), tol=ROOT_TOL)


def continuous_optimum(model: ModelParams) -> tuple[float, float, float]:
    """Practical continuous optimum ``(c_star, d_star, w_continuous)``.

    ``c_star`` is clamped to 0 when ``phi1(0) <= 0``; ``d_star`` is
    ``max(0, c_star, phi2(c_star))``.
    """
    root = c_star_root(model)
    c = 0.0 if root is None else root
    d = max(0.0, c, phi2(model, c))
    return c, d, w_closed(model, c, d)


def _equal_logs(p: float | None, eps: float | None) -> tuple[float, float, float]:
    # returns (p, ln q, ln qtilde); eps parameterises p = 1/2 - eps without cancellation
    if eps is not None:
        if not 0.0 < eps < 0.5:
            raise ParamError(f"eps must lie in (0, 1/2), got {eps}")
        return 0.5 - eps, math.log(0.5 + eps), math.log(2.0 * eps)
    if p is None or not 0.0 < p < 0.5:
        raise ParamError(f"equal case needs 0 < p < 1/2, got {p}")
    return p, math.log1p(-p), math.log1p(-2.0 * p)


def equal_case_optima(p: float | None = None, *, eps: float | None = None) -> EqualCaseOptima:
    """Closed-form optima when ``p == p'``.

    Pass either ``p`` or ``eps`` (meaning ``p = 1/2 - eps``); the latter keeps
    full relative precision when ``eps`` is far below double resolution of p.
    """
    p, lq, lqt = _equal_logs(p, eps)
    gap = lq - lqt  # ln(q / qtilde) > 0
    # C_eq = ln(qtilde * 2 p^2 (ln q - ln qtilde) / p^3) / ln(q / qtilde)
    c_eq = (lqt + math.log(2.0 * gap / p)) / gap
    d_eq = _phi2_eq(p, lq, lqt, c_eq)
    c_diag = -(math.log(lq / lqt) + gap) / gap
    return EqualCaseOptima(c_eq, d_eq, c_diag)


def _phi2_eq(p: float, lq: float, lqt: float, C: float) -> float:
    return (
        -p + p * lq * C - 2.0 * lq + 2.0 * lq * p + 2.0 * lq * math.exp(-C * lq + (C + 1.0) * lqt)
    ) / (p * lq)


def phi2_eq(p: float, C: float) -> float:
    """``phi2`` specialised to ``p == p'``."""
    p, lq, lqt = _equal_logs(p, None)
    return _phi2_eq(p, lq, lqt, C)


def _dw_diag(p: float, pp: float, C: float) -> float:
    q, qp, qt = 1.0 - p, 1.0 - pp, 1.0 - p - pp
    lq, lqp, lqt = math.log(q), math.log(qp), math.log(qt)
    a, b, c = math.exp((C + 1) * lq), math.exp((C + 1) * lqp), math.exp((C + 1) * lqt)
    return (p * p * (a * lq - c * lqt) + pp * pp * (b * lqp - c * lqt)) / (pp * p)


def diag_optimum(model: ModelParams) -> float:
    """Maximiser over ``C >= 0`` of the diagonal strategy ``w(C, C)``.

    Golden-section search, then polished on the derivative so that the
    result carries full double precision rather than sqrt(eps).
    """
    p, pp = model.p, model.pprime
    if _dw_diag(p, pp, 0.0) <= 0.0:
        return 0.0
    hi = 1.0
    while _dw_diag(p, pp, hi) > 0.0:
        hi *= 2.0
        if hi > C_UP:
            raise NumericalError("diagonal success keeps increasing")
    c = maximize_1d(lambda t: w_diag(p, pp, t), (0.0, hi), tol=1e-9)
    lo, up = max(0.0, c - 1e-6), min(hi, c + 1e-6)
    try:
        return find_root(lambda t: _dw_diag(p, pp, t), (lo, up), tol=ROOT_TOL)
    except NumericalError:
        return c


def discrete_optimum(model: ModelParams, radius: int = 2) -> DiscreteOptimum:
    """Best integer thresholds ``0 <= C <= D`` near the continuous optimum.

    Scans the window ``[floor(c)-r, ceil(c)+r] x [floor(d)-r, ceil(d)+r]``
    around ``(c_star, d_star)``, plus the same window around the diagonal
    optimum when the practical optimum sits on the diagonal. Ties go to the
    smaller ``C``, then the smaller ``D``.
    """
    c, d, _ = continuous_optimum(model)
    centres = [(c, d)]
    if d == c:
        cd = diag_optimum(model)
        centres.append((cd, cd))
    cands: set[tuple[int, int]] = set()
    for cc, dd in centres:
        for ci in range(math.floor(cc) - radius, math.ceil(cc) + radius + 1):
            for di in range(math.floor(dd) - radius, math.ceil(dd) + radius + 1):
                if 0 <= ci <= di:
                    cands.add((ci, di))
    best = None
    for ci, di in sorted(cands):
        val = w_closed(model, ci, di)
        if best is None or val > best[2]:
            best = (ci, di, val)
    return DiscreteOptimum(*best)


def tie_point(
    pprime: float,
    pair_a: tuple[int, int],
    pair_b: tuple[int, int],
    bracket: tuple[float, float],
) -> float:
    """The ``p`` (at fixed ``pprime``) where two integer strategies tie."""
    if tuple(pair_a) == tuple(pair_b):
        raise InvalidArgs("identical strategies tie everywhere")

    def diff(p: float) -> float:
        m = new_model(p, pprime)
        return w_closed(m, *pair_a) - w_closed(m, *pair_b)

    return find_root(diff, bracket, tol=1e-16)


def solve_thresholds(model: ModelParams, radius: int = 2) -> ThresholdSolution:
    """Everything about the thresholds of one model in a single record."""
    from laststop.regions import classify

    root = c_star_root(model)
    c, d, w_cont = continuous_optimum(model)
    disc = discrete_optimum(model, radius)
    return ThresholdSolution(
        c_star=c,
        c_clamped=root is None,
        d_star=d,
        c_diag=diag_optimum(model),
        c_discrete=disc.c_d,
        d_discrete=disc.d_d,
        w_continuous=w_cont,
        w_discrete=disc.w,
        region=classify(model),
    )
