"""Event-driven form of the crossing rule.

Feed arrivals one at a time with :meth:`Advisor.observe` and ask
:meth:`Advisor.query` whether the waiting phase is over. ``STOP`` means the
rule has committed: from then on the first nonzero mark should be taken.
Replaying a whole path reproduces :func:`laststop.montecarlo.run_adaptive`.
"""

from __future__ import annotations

import enum

from laststop.errors import InvalidArgs
from laststop.incomplete import (
    CONFINEMENT_FLOOR,
    CrossingCase,
    ObservationState,
    _require,
    stop_boundary,
)


class Advice(enum.Enum):
    CONTINUE = "CONTINUE"
    STOP = "STOP"


class Advisor:
    def __init__(
        self,
        case: CrossingCase | str,
        n_known: int | None = None,
        p_known: float | None = None,
        floor: float = CONFINEMENT_FLOOR,
    ) -> None:
        self.case = CrossingCase.parse(case)
        _require(self.case, n_known, p_known)
        self.n_known, self.p_known, self.floor = n_known, p_known, floor
        self.time = 0.0
        self.m = self.k = 0
        self.trigger: float | None = None

    def _boundary(self) -> float:
        state = ObservationState(self.time, self.m, self.k)
        return stop_boundary(self.case, state, self.n_known, self.p_known, self.floor)

    def _check_time(self, time: float) -> None:
        if not self.time <= time <= 1.0:
            raise InvalidArgs(f"time must lie in [{self.time}, 1], got {time}")

    def observe(self, time: float, mark: int) -> None:
        """Record an arrival at ``time`` carrying ``mark`` in {-1, 0, +1}."""
        self._check_time(time)
        if mark not in (-1, 0, 1):
            raise InvalidArgs(f"mark must be -1, 0 or 1, got {mark}")
        if self.trigger is None:
            t = self._boundary()
            if t < time:
                self.trigger = t
        self.time = time
        self.m += 1
        self.k += mark != 0

    def query(self, time: float) -> Advice:
        """Advice at ``time``, assuming no arrival since the last one observed."""
        self._check_time(time)
        if self.trigger is not None or self._boundary() <= time:
            return Advice.STOP
        return Advice.CONTINUE
