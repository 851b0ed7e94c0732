"""Boundary curves in the (p, p') square and the region classifier.

Curves are level sets of the stationarity functions:

* ``gamma1``: ``phi1(0) = 0`` (the continuous ``C*`` reaches 0),
* ``gamma2``: ``phi2(0) = 0`` (``D*`` at ``C = 0`` reaches 0),
* ``gammaC``: ``phi1(cfix) = 0`` for a fixed ``cfix`` (``cfix = -0.3`` is the
  fourth curve of the classical figure),
* ``gamma3``: ``phi1(C) = 0`` together with ``phi2(C) = C``.

Each curve is solved for ``p'`` at given ``p``; above a curve the
corresponding function is negative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from laststop.errors import InvalidArgs, NoSignChange, NumericalError
from laststop.model import ModelParams
from laststop.numerics import find_root, scan_bracket
from laststop.thresholds import ROOT_TOL, c_star_root, phi1_raw, phi2_raw

EDGE = 1e-12
EQ_TOL = 1e-12


class RegionRow(enum.Enum):
    """Rows of the region table, named by the sign pattern they encode."""

    C_NEG_PHI2_NEG = 1
    C_NEG_PHI2_ZERO = 2
    C_NEG_PHI2_POS = 3
    C_ZERO_PHI2_NEG = 4
    C_ZERO_PHI2_ZERO = 5
    C_ZERO_PHI2_POS = 6
    C_POS_PHI2_NEG = 7
    C_POS_PHI2_ZERO = 8
    C_POS_BELOW_DIAG = 9
    C_POS_ABOVE_DIAG = 10


@dataclass(frozen=True)
class RegionClass:
    row: RegionRow
    practical_c: float
    practical_d: float
    phi1_at_0: float
    phi2_at_0: float


def _defining(kind: str, cfix: float | None):
    if kind == "gamma1":
        return lambda p, pp: phi1_raw(p, pp, 0.0)
    if kind == "gamma2":
        return lambda p, pp: phi2_raw(p, pp, 0.0)
    if kind == "gammaC":
        if cfix is None:
            raise InvalidArgs("gammaC needs cfix")
        return lambda p, pp: phi1_raw(p, pp, cfix)
    raise InvalidArgs(f"unknown curve kind {kind!r}")


def gamma_curve(kind: str, p: float, cfix: float | None = None) -> float:
    """``p'`` on the requested curve at abscissa ``p``.

    Raises
    ------
    NumericalError
        If ``p`` is outside the curve's domain (no root in ``p'``).
    """
    f = _defining(kind, cfix)
    lo, hi = EDGE, min(p, 1.0 - p) - EDGE
    if hi <= lo:
        raise NoSignChange(f"empty p' range at p={p}")
    a, b = scan_bracket(lambda pp: f(p, pp), lo, hi)
    if a == b:
        return a
    return find_root(lambda pp: f(p, pp), (a, b), tol=ROOT_TOL)


def _zero_edge_coefficient(kind: str, cfix: float | None):
    # sign-carrying leading term of the defining function as p' -> 0
    if kind == "gamma2":
        return lambda p: 1.0 - p  # phi2(0) ~ (1 - p) / p'
    c = 0.0 if kind == "gamma1" else cfix

    return lambda p: 1.0 + (c + 1.0) * math.log1p(-p)  # phi1(C) ~ p' p^2 q^C (1 + (C+1) ln q)


def gamma_endpoints(kind: str, cfix: float | None = None) -> tuple[tuple[float, float], tuple[float, float]]:
    """The two extremal points of a curve: where it meets ``p' = p`` and ``p' = 0``."""
    f = _defining(kind, cfix)
    diag = lambda p: f(p, p)  # noqa: E731
    a, b = scan_bracket(diag, 1e-3, 0.5 - 1e-9, points=200)
    p_diag = a if a == b else find_root(diag, (a, b), tol=1e-15)
    coef = _zero_edge_coefficient(kind, cfix)
    p_zero = find_root(coef, (0.5, 1.0), tol=1e-15) if kind == "gamma2" else find_root(
        coef, (0.5, 1.0 - 1e-15), tol=1e-15
    )
    return (p_diag, p_diag), (p_zero, 0.0)


def gamma3(p: float) -> tuple[float, float]:
    """Point of the third curve at ``p``: returns ``(p', C)``.

    For each trial ``p'`` the interior root ``C`` of ``phi1`` is found, then
    ``phi2(C) - C`` is driven to zero in ``p'``.
    """

    def c_of(pp: float) -> float:
        root = c_star_root(ModelParams(p, pp))
        return 0.0 if root is None else root

    def g(pp: float) -> float:
        c = c_of(pp)
        return phi2_raw(p, pp, c) - c

    hi = min(p, 1.0 - p) - EDGE
    try:
        hi = min(hi, gamma_curve("gamma1", p))
    except NumericalError:
        pass
    g_hi = g(hi)
    if abs(g_hi) <= 1e-10:
        return hi, c_of(hi)
    a, b = scan_bracket(g, 1e-6, hi)
    pp = a if a == b else find_root(g, (a, b), tol=ROOT_TOL)
    return pp, c_of(pp)


def p_bullet() -> tuple[float, float]:
    """Common point of ``gamma1`` and ``gamma2`` (where ``gamma3`` also ends)."""
    (lo, _), (hi, _) = gamma_endpoints("gamma1")

    def diff(p: float) -> float:
        return gamma_curve("gamma1", p) - gamma_curve("gamma2", p)

    a, b = scan_bracket(diff, lo + 1e-6, hi - 1e-6)
    p = find_root(diff, (a, b), tol=1e-15)
    return p, gamma_curve("gamma1", p)


def _sign(x: float) -> int:
    if abs(x) <= EQ_TOL:
        return 0
    return 1 if x > 0 else -1


def classify(model: ModelParams) -> RegionClass:
    """Locate ``model`` in the region table and return its practical ``(C*, D*)``."""
    f1 = phi1_raw(model.p, model.pprime, 0.0)
    f2 = phi2_raw(model.p, model.pprime, 0.0)
    s1, s2 = _sign(f1), _sign(f2)
    if s1 <= 0:
        base = {-1: 1, 0: 4}[s1]
        row = RegionRow(base + (s2 + 1))
        d = f2 if s2 > 0 else 0.0
        return RegionClass(row, 0.0, d, f1, f2)
    c = c_star_root(model)
    if c is None:  # |phi1(0)| below EQ_TOL but positive: root is at 0 to tolerance
        c = 0.0
    d = phi2_raw(model.p, model.pprime, c)
    if d - c > EQ_TOL:
        return RegionClass(RegionRow.C_POS_ABOVE_DIAG, c, d, f1, f2)
    row = {-1: RegionRow.C_POS_PHI2_NEG, 0: RegionRow.C_POS_PHI2_ZERO, 1: RegionRow.C_POS_BELOW_DIAG}[s2]
    return RegionClass(row, c, c, f1, f2)
