"""Monte Carlo simulation of the fixed-x and crossing strategies.

Path ``i`` of a run with seed ``s`` is drawn from a Philox generator keyed by
``s`` whose counter starts at ``i`` in its high word, so every path is fixed by
``(s, i)`` alone and results do not depend on how paths are split across
workers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from laststop.errors import InvalidArgs, ParamError
from laststop.incomplete import (
    CONFINEMENT_FLOOR,
    LN2,
    CrossingCase,
    ObservationState,
    analytic_success,
    count_dist,
    mstar_dist,
    stop_boundary,
)
from laststop.model import ModelParams
from laststop.xstrategy import success_prob_x_diagonal

THREADS_ENV = "LASTSTOP_THREADS"


@dataclass(frozen=True)
class Path:
    arrivals: np.ndarray  # sorted arrival times in (0, 1)
    marks: np.ndarray  # +1, -1 or 0 per arrival

    def __len__(self) -> int:
        return len(self.arrivals)


@dataclass(frozen=True)
class Outcome:
    triggered: bool
    x_trigger: float  # inf when the rule never fired
    m_star: int
    selected_index: int | None
    success: bool


def path_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for path ``index`` of a run seeded with ``seed``."""
    counter = np.array([0, 0, 0, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=seed, counter=counter))


def simulate_path(model: ModelParams, n: int, rng: np.random.Generator) -> Path:
    """Draw ``n`` uniform arrival times and iid marks."""
    if n < 1:
        raise ParamError(f"n must be >= 1, got {n}")
    arrivals = np.sort(rng.random(n))
    while np.any(np.diff(arrivals) <= 0.0) or arrivals[0] <= 0.0:
        arrivals = np.sort(rng.random(n))
    u = rng.random(n)
    marks = np.where(u < model.p, 1, np.where(u < model.p + model.pprime, -1, 0)).astype(np.int8)
    return Path(arrivals, marks)


def _select_from(path: Path, x: float) -> tuple[int | None, bool]:
    for i in range(len(path)):
        if path.arrivals[i] >= x and path.marks[i] != 0:
            later = path.marks[i + 1 :]
            return i, not np.any(later == path.marks[i])
    return None, False


def run_fixed_x(path: Path, x_star: float) -> Outcome:
    """Take the first nonzero mark arriving at or after ``x_star``.

    Wins when no later arrival carries the same mark.
    """
    if not 0.0 <= x_star <= 1.0:
        raise ParamError(f"x must lie in [0, 1], got {x_star}")
    idx, ok = _select_from(path, x_star)
    m = int(np.searchsorted(path.arrivals, x_star, side="left"))
    return Outcome(True, float(x_star), m, idx, ok)


def run_adaptive(
    case: CrossingCase | str,
    path: Path,
    n_known: int | None = None,
    p_known: float | None = None,
    floor: float = CONFINEMENT_FLOOR,
) -> Outcome:
    """Crossing strategy on one path.

    Between arrivals the counts are constant, so the commit time within each
    interval ``[T_i, T_{i+1})`` is the stop boundary of the current state. After
    committing, the strategy behaves as the fixed-x rule from that time.
    """
    case = CrossingCase.parse(case)
    n = len(path)
    m = k = 0
    start = 0.0
    for i in range(n + 1):
        end = path.arrivals[i] if i < n else 1.0
        t = stop_boundary(case, ObservationState(start, m, k), n_known, p_known, floor)
        if t < end:
            idx, ok = _select_from(path, t)
            return Outcome(True, float(t), m, idx, ok)
        if i < n:
            m += 1
            k += int(path.marks[i] != 0)
            start = float(path.arrivals[i])
    return Outcome(False, math.inf, n, None, False)


# batch kernels: rows are paths


def _draw_block(model: ModelParams, n: int, seed: int, start: int, count: int):
    T = np.empty((count, n))
    M = np.empty((count, n), dtype=np.int8)
    for r in range(count):
        path = simulate_path(model, n, path_rng(seed, start + r))
        T[r], M[r] = path.arrivals, path.marks
    return T, M


def _first_true(mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return mask.argmax(axis=1), mask.any(axis=1)


def _settle(T: np.ndarray, M: np.ndarray, x: np.ndarray) -> np.ndarray:
    # success of selecting the first nonzero mark at or after x (per row)
    n = T.shape[1]
    cand = (T >= x[:, None]) & (M != 0)
    j, found = _first_true(cand)
    rows = np.arange(T.shape[0])
    mark = M[rows, j]
    last_plus = n - 1 - (M[:, ::-1] == 1).argmax(axis=1)
    last_minus = n - 1 - (M[:, ::-1] == -1).argmax(axis=1)
    last_same = np.where(mark == 1, last_plus, last_minus)
    return found & (j == last_same)


def _fixed_block(T, M, x: float):
    xs = np.full(T.shape[0], x)
    m_star = (T < x).sum(axis=1)
    return _settle(T, M, xs), m_star


def _adaptive_block(case: CrossingCase, T, M, n_known, p_known, floor: float):
    B, n = T.shape
    ext = np.concatenate([np.zeros((B, 1)), T, np.ones((B, 1))], axis=1)
    starts, ends = ext[:, :-1], ext[:, 1:]
    m = np.arange(n + 1, dtype=float)
    K = np.concatenate([np.zeros((B, 1)), np.cumsum(M != 0, axis=1)], axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        if case is CrossingCase.P_KNOWN:
            t = np.where(m > 0, m * p_known / (m * p_known + LN2), np.inf)
            t = np.broadcast_to(t, (B, n + 1))
        elif case is CrossingCase.N_KNOWN:
            t = np.where(K > 0, 1.0 - 2.0 * m * LN2 / (n_known * K), np.inf)
        else:
            t = np.where(K > 0, K / (K + 2.0 * LN2), np.inf)
    trig = np.maximum(np.maximum(starts, t), floor)
    first, fired = _first_true(trig < ends)
    x_trig = np.where(fired, trig[np.arange(B), first], np.inf)
    m_star = np.where(fired, first, n)
    return _settle(T, M, x_trig) & fired, m_star


@dataclass
class SimulationReport:
    case: str
    n: int
    p: float
    paths: int
    seed: int
    success_rate: float
    std_error: float
    mstar_histogram: np.ndarray
    analytic_reference: float | None
    phi_analytic: np.ndarray = field(repr=False)

    def to_json_dict(self) -> dict:
        hist = [{"mu": int(mu), "count": int(c)} for mu, c in enumerate(self.mstar_histogram) if c]
        return {
            "case": self.case,
            "n": self.n,
            "p": self.p,
            "paths": self.paths,
            "seed": self.seed,
            "success_rate": self.success_rate,
            "std_error": self.std_error,
            "analytic_reference": self.analytic_reference,
            "histogram": hist,
        }

    def histogram_rows(self, smooth: bool = False) -> list[tuple[int, int, float]]:
        """Rows ``(mu, count, phi_analytic)``; ``smooth`` merges pairs of counts."""
        counts, phi = self.mstar_histogram, self.phi_analytic
        if not smooth:
            return [(mu, int(counts[mu]), float(phi[mu])) for mu in range(len(counts))]
        rows = []
        for mu in range(0, len(counts), 2):
            rows.append((mu, int(counts[mu : mu + 2].sum()), float(phi[mu : mu + 2].sum())))
        return rows


def _workers(requested: int | None) -> int:
    if requested is not None:
        return max(1, requested)
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def monte_carlo(
    strategy: CrossingCase | str | float,
    model: ModelParams,
    n: int,
    paths: int,
    seed: int,
    *,
    floor: float = CONFINEMENT_FLOOR,
    workers: int | None = None,
    block: int = 2000,
) -> SimulationReport:
    """Simulate ``paths`` independent paths and aggregate the outcomes.

    ``strategy`` is a crossing case (the unknown quantities are estimated,
    the known ones taken from ``model`` and ``n``) or a float meaning the
    fixed-x rule at that time.
    """
    if paths < 1:
        raise InvalidArgs(f"paths must be >= 1, got {paths}")
    if n < 1:
        raise ParamError(f"n must be >= 1, got {n}")
    fixed = isinstance(strategy, (int, float)) and not isinstance(strategy, bool)
    case = None if fixed else CrossingCase.parse(strategy)

    def work(start: int) -> tuple[int, np.ndarray]:
        count = min(block, paths - start)
        T, M = _draw_block(model, n, seed, start, count)
        if fixed:
            ok, m_star = _fixed_block(T, M, float(strategy))
        else:
            ok, m_star = _adaptive_block(case, T, M, n, model.p, floor)
        return int(ok.sum()), np.bincount(m_star, minlength=n + 1)

    starts = range(0, paths, block)
    with ThreadPoolExecutor(max_workers=_workers(workers)) as pool:
        parts = list(pool.map(work, starts))
    wins = sum(w for w, _ in parts)
    hist = np.sum([h for _, h in parts], axis=0)
    rate = wins / paths

    mu = np.arange(n + 1)
    if fixed:
        label = f"fixed:{float(strategy):.12g}"
        ref = success_prob_x_diagonal(model, n, float(strategy))
        phi = count_dist(n, mu, float(strategy))
    else:
        label = case.value
        if model.is_equal_case:
            ref = analytic_success(case, n, model.p, floor=floor)
            phi = mstar_dist(case, n, model.p, floor=floor).phi
        else:
            ref, phi = None, np.full(n + 1, np.nan)
    return SimulationReport(
        case=label,
        n=n,
        p=model.p,
        paths=paths,
        seed=seed,
        success_rate=rate,
        std_error=math.sqrt(rate * (1.0 - rate) / paths),
        mstar_histogram=hist,
        analytic_reference=ref,
        phi_analytic=phi,
    )
