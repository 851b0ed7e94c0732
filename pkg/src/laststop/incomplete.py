"""x-strategy with incomplete information (equal case p = p').

When ``n`` or ``p`` is unknown, the optimal waiting time ``x_n* ~ 1 - ln2/(np)``
is replaced by a plug-in estimate built from the counts observed so far:
``m`` arrivals and ``k`` nonzero marks up to the current time ``x``. The
estimates are ``n ~ m/x`` and ``p ~ k/(2m)``. Solving ``x = x_n*(estimate)``
for ``x`` gives a crossing time; the rule commits once the clock passes it.

The analytic side approximates the law of the crossing count ``m*`` and the
resulting success probability.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from laststop.errors import InvalidArgs, ParamError
from laststop.numerics import binom_pmf
from laststop.xstrategy import x_star

LN2 = math.log(2.0)
CONFINEMENT_FLOOR = 0.5


class CrossingCase(enum.Enum):
    P_KNOWN = "pknown"  # p known, n unknown
    N_KNOWN = "nknown"  # n known, p unknown
    BOTH_UNKNOWN = "none"

    @classmethod
    def parse(cls, value: "CrossingCase | str") -> "CrossingCase":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise InvalidArgs(f"unknown case {value!r}; expected pknown, nknown or none") from None


@dataclass(frozen=True)
class ObservationState:
    x: float
    m: int
    k: int

    def __post_init__(self) -> None:
        if not (0 <= self.k <= self.m):
            raise InvalidArgs(f"need 0 <= k <= m, got m={self.m}, k={self.k}")
        if not 0.0 <= self.x <= 1.0:
            raise InvalidArgs(f"time must lie in [0, 1], got {self.x}")


# crossing-time curves (time as a function of counts) and their inverses


def g_time(m, p):
    """p known: crossing time for ``m`` arrivals."""
    return m * p / (m * p + LN2)


def f_count(x, p):
    """p known: arrival count on the crossing curve at time ``x``."""
    return LN2 * x / (p * (1.0 - x))


def u_time(n, p_est):
    """n known: crossing time for an estimated ``p``."""
    return 1.0 - LN2 / (n * p_est)


def h_prob(n, x):
    """n known: estimated ``p`` on the crossing curve at time ``x``."""
    return LN2 / (n * (1.0 - x))


def v_time(k):
    """Nothing known: crossing time for ``k`` nonzero marks."""
    return k / (k + 2.0 * LN2)


def w_count(x):
    """Nothing known: nonzero-mark count on the crossing curve at time ``x``."""
    return 2.0 * LN2 * x / (1.0 - x)


def _require(case: CrossingCase, n_known, p_known) -> None:
    if case is CrossingCase.P_KNOWN and p_known is None:
        raise InvalidArgs("case pknown needs p_known")
    if case is CrossingCase.N_KNOWN and n_known is None:
        raise InvalidArgs("case nknown needs n_known")


def crossing_time(
    case: CrossingCase | str,
    m: int,
    k: int,
    n_known: int | None = None,
    p_known: float | None = None,
) -> float:
    """Plug-in crossing time for frozen counts, ``inf`` when the estimate is undefined."""
    case = CrossingCase.parse(case)
    _require(case, n_known, p_known)
    if case is CrossingCase.P_KNOWN:
        return g_time(m, p_known) if m > 0 else math.inf
    if k == 0:
        return math.inf
    if case is CrossingCase.N_KNOWN:
        return u_time(n_known, k / (2.0 * m))
    return v_time(k)


def stop_boundary(
    case: CrossingCase | str,
    state: ObservationState,
    n_known: int | None = None,
    p_known: float | None = None,
    floor: float = CONFINEMENT_FLOOR,
) -> float:
    """Earliest time ``>= state.x`` at which the rule commits if counts stay frozen.

    Never earlier than ``floor``. Returns ``inf`` when no estimate exists yet
    (no arrivals for ``pknown``, no nonzero mark otherwise).
    """
    t = crossing_time(case, state.m, state.k, n_known, p_known)
    if math.isinf(t):
        return t
    return max(state.x, t, floor)


def count_dist(n: int, m, x):
    """Law of the arrival count at time ``x``: Binomial(n, x) at ``m``."""
    return binom_pmf(m, n, x)


def joint_dist(n: int, m, k, x, p: float):
    """Joint law of (arrivals, nonzero marks) at time ``x``, equal case."""
    return binom_pmf(m, n, x) * binom_pmf(k, m, 2.0 * p)


@dataclass(frozen=True)
class MStarDistribution:
    """Approximate law of the crossing count over ``mu = 0..n``.

    ``phi`` is unnormalised unless requested; ``raw_mass`` always reports the
    unnormalised total. ``mu_min`` is the smallest count carrying an included
    term.
    """

    case: CrossingCase
    mu: np.ndarray
    phi: np.ndarray
    raw_mass: float
    mu_min: int


def _check(n: int, p: float) -> None:
    if n < 1:
        raise ParamError(f"n must be >= 1, got {n}")
    if not 0.0 < p < 0.5:
        raise ParamError(f"need 0 < p < 1/2, got {p}")


def mstar_dist(
    case: CrossingCase | str,
    n: int,
    p: float,
    *,
    normalize: bool = False,
    floor: float = CONFINEMENT_FLOOR,
    k_offset: int = 0,
) -> MStarDistribution:
    """Approximate law of ``m*`` given that the rule has just crossed.

    Terms whose crossing time falls outside ``(floor, 1)`` are dropped. For
    the two cases driven by ``k``, ``k_offset`` evaluates the crossing time
    at ``k + k_offset`` marks instead of ``k`` (default 0, the literal rule).
    """
    case = CrossingCase.parse(case)
    _check(n, p)
    mu = np.arange(n + 1)
    if case is CrossingCase.P_KNOWN:
        t = g_time(mu.astype(float), p)
        keep = (t > floor) & (t < 1.0)
        phi = np.where(keep, binom_pmf(mu, n, np.clip(t, 0.0, 1.0)), 0.0)
    else:
        mm, kk = np.meshgrid(mu, mu, indexing="ij")
        valid = (kk >= 1) & (kk <= mm)
        ke = (kk + k_offset).astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            if case is CrossingCase.N_KNOWN:
                t = u_time(n, ke / (2.0 * mm))
            else:
                t = v_time(ke)
        keep = valid & (t > floor) & (t < 1.0)
        tt = np.where(keep, t, 0.5)
        terms = np.where(keep, joint_dist(n, mm, kk, tt, p), 0.0)
        phi = terms.sum(axis=1)
    raw = float(math.fsum(phi))
    nz = np.flatnonzero(phi > 0)
    mu_min = int(nz[0]) if nz.size else n
    if normalize and raw > 0:
        phi = phi / raw
    return MStarDistribution(case, mu, phi, raw, mu_min)


def classic_count_dist(n: int, p: float) -> np.ndarray:
    """Arrival-count law at the complete-information optimum ``x_n*``."""
    return count_dist(n, np.arange(n + 1), x_star(n, p))


def analytic_success(
    case: CrossingCase | str,
    n: int,
    p: float,
    *,
    mu_min: int | None = None,
    floor: float = CONFINEMENT_FLOOR,
    k_offset: int = 0,
) -> float:
    """Approximate success of the crossing strategy: sum of phi(mu) * P_eq(n - mu).

    ``phi`` is left unnormalised. ``mu_min`` additionally drops counts below it.
    """
    dist = mstar_dist(case, n, p, floor=floor, k_offset=k_offset)
    q, qt = 1.0 - p, 1.0 - 2.0 * p
    rest = (n - dist.mu).astype(float)
    p_eq = 2.0 * (q**rest - qt**rest)
    terms = dist.phi * p_eq
    if mu_min is not None:
        terms = terms[dist.mu >= mu_min]
    return math.fsum(terms)
