"""The ternary trial model: P(+1) = p, P(-1) = p', P(0) = 1 - p - p'."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from laststop.errors import ParamError


@dataclass(frozen=True)
class ModelParams:
    """Validated probabilities of one trial.

    Build instances with :func:`new_model`; the derived fields are filled in
    automatically and never drift from ``p`` and ``pprime``.
    """

    p: float
    pprime: float
    q: float = field(init=False)
    qprime: float = field(init=False)
    qtilde: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", 1.0 - self.p)
        object.__setattr__(self, "qprime", 1.0 - self.pprime)
        object.__setattr__(self, "qtilde", 1.0 - self.p - self.pprime)

    @property
    def is_equal_case(self) -> bool:
        return self.p == self.pprime

    @property
    def log_q(self) -> float:
        return math.log(self.q)

    @property
    def log_qprime(self) -> float:
        return math.log(self.qprime)

    @property
    def log_qtilde(self) -> float:
        return math.log(self.qtilde)


def new_model(p: float, pprime: float) -> ModelParams:
    """Validate ``(p, pprime)`` and return the model.

    Raises
    ------
    ParamError
        If ``p <= 0``, ``pprime <= 0``, ``pprime > p`` or ``p + pprime >= 1``.
    """
    p = float(p)
    pprime = float(pprime)
    if not (math.isfinite(p) and math.isfinite(pprime)):
        raise ParamError(f"non-finite probabilities p={p!r}, pprime={pprime!r}")
    if p <= 0.0 or pprime <= 0.0:
        raise ParamError(f"p and pprime must be positive (got {p}, {pprime})")
    if pprime > p:
        raise ParamError(f"require pprime <= p (got p={p}, pprime={pprime})")
    if p + pprime >= 1.0:
        raise ParamError(f"require p + pprime < 1 (got {p + pprime})")
    return ModelParams(p, pprime)
