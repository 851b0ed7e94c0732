"""Boundary asymptotics of the fixed-C curve as ``C`` approaches -1.

Three regimes, each with ``C = -1 + eta``:

* ``p1``: ``p = 1 - xi`` with ``p' -> 0``,
* ``diag``: ``p = p' = 1/2 - eps``,
* ``antidiag``: ``p' = 1 - p - delta``, so ``qtilde = delta`` and ``q' = p + delta``.

:func:`appendix_asymptotics` evaluates the leading-order maps between
``eta`` and the small parameter; :func:`near_boundary_solve` solves the
underlying equation itself, in logarithmic coordinates so that parameters
like ``delta ~ 1e-61`` stay representable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from laststop.errors import DomainError, InvalidArgs, WBranchError
from laststop.numerics import INV_E, find_root, lambert_w_m1, scan_bracket
from laststop.thresholds import equal_case_optima


class Regime(enum.Enum):
    NEAR_P_ONE = "p1"
    DIAGONAL = "diag"
    ANTI_DIAGONAL = "antidiag"

    @classmethod
    def parse(cls, value: "Regime | str") -> "Regime":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise InvalidArgs(f"unknown regime {value!r}; expected p1, diag or antidiag") from None


@dataclass(frozen=True)
class AsymptoticResult:
    """One leading-order evaluation.

    ``output`` is the paired quantity: ``eta`` for the forward direction, the
    small parameter (``xi``, ``eps`` or ``delta``) for the inverse.
    ``log_output`` holds its logarithm for the inverse direction, which stays
    finite when ``output`` underflows.
    """

    regime: Regime
    direction: str
    value: float
    p: float | None
    output: float
    log_output: float | None = None
    c6: float | None = None
    c7: float | None = None
    a: float | None = None  # -ln eps
    b: float | None = None  # -ln delta
    ln_b_over_b: float | None = None
    lambert_argument: float | None = None

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["regime"] = self.regime.value
        return out


def c6(p: float) -> float:
    """Leading coefficient of the anti-diagonal expansion."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"need 0 < p < 1, got {p}")
    q = 1.0 - p
    return (-1.0 + math.log(q / p) * p**3 * q * q) / (p * (p * p + q * q) * q * q)


def _open_unit(name: str, x: float) -> None:
    if not 0.0 < x < 1.0:
        raise DomainError(f"{name} must lie in (0, 1), got {x}")


def _w_inverse(arg: float, eta: float, method: str) -> tuple[float, float]:
    # returns (-ln of the small parameter, Lambert argument) for a*exp(-eta*a) style inversions
    if method == "lambert":
        if arg < -INV_E:
            raise WBranchError(f"Lambert argument {arg} is below -1/e; try method='log'")
        return -lambert_w_m1(arg) / eta, arg
    if method == "log":
        return -math.log(-arg) / eta, arg
    raise InvalidArgs(f"unknown method {method!r}; expected lambert or log")


def appendix_asymptotics(
    regime: Regime | str,
    direction: str,
    value: float,
    p: float | None = None,
    method: str = "lambert",
) -> AsymptoticResult:
    """Leading-order map between ``eta`` and the regime's small parameter.

    ``direction='forward'`` takes the small parameter and returns ``eta``;
    ``'inverse'`` takes ``eta``. For the inverse of the two Lambert regimes,
    ``method='log'`` replaces ``W_{-1}(x)`` by ``ln(-x)``.
    """
    regime = Regime.parse(regime)
    if direction not in ("forward", "inverse"):
        raise InvalidArgs(f"direction must be forward or inverse, got {direction!r}")
    name = "eta" if direction == "inverse" else {"p1": "xi", "diag": "eps", "antidiag": "delta"}[regime.value]
    _open_unit(name, value)

    if regime is Regime.NEAR_P_ONE:
        if direction == "forward":
            return AsymptoticResult(regime, direction, value, None, -1.0 / math.log(value))
        return AsymptoticResult(regime, direction, value, None, math.exp(-1.0 / value), -1.0 / value)

    if regime is Regime.DIAGONAL:
        if direction == "forward":
            a = -math.log(value)
            return AsymptoticResult(regime, direction, value, None, (math.log(2.0) + math.log(a)) / a, a=a)
        a, arg = _w_inverse(-value / 2.0, value, method)
        return AsymptoticResult(
            regime, direction, value, None, math.exp(-a), -a, a=a, lambert_argument=arg
        )

    if p is None:
        raise InvalidArgs("the antidiag regime needs p")
    k6 = c6(p)
    k7 = -k6
    if k7 <= 0.0:
        raise DomainError(f"C7 = {k7} is not positive at p={p}")
    if direction == "forward":
        b = -math.log(value)
        eta = (math.log(b) - math.log(k7)) / b
        return AsymptoticResult(regime, direction, value, p, eta, c6=k6, c7=k7, b=b, ln_b_over_b=math.log(b) / b)
    b, arg = _w_inverse(-value * k7, value, method)
    return AsymptoticResult(
        regime,
        direction,
        value,
        p,
        math.exp(-b),
        -b,
        c6=k6,
        c7=k7,
        b=b,
        ln_b_over_b=math.log(b) / b if b > 0 else None,
        lambert_argument=arg,
    )


def near_p_one_residual(eta: float, s: float) -> float:
    """Leading ``p'`` coefficient of ``phi1(-1 + eta)`` at ``p = 1 - e^s``, up to a positive factor."""
    return 1.0 + eta * s


def anti_diagonal_phi1(p: float, eta: float, u: float) -> float:
    """``phi1(-1 + eta)`` at ``p' = 1 - p - e^u``, with powers of ``delta`` taken in log form."""
    c = -1.0 + eta
    d = math.exp(u)
    q, pp, qp = 1.0 - p, 1.0 - p - d, p + d
    lq, lqp = math.log(q), math.log(qp)
    # qtilde * qtilde^C = exp((1 + C) u)
    return (
        -(p * p + pp * pp) * (u - lqp) * math.exp(eta * u)
        + p * p * q * (lq - lqp) * math.exp(c * lq)
        - pp * pp * p * math.exp(c * lqp)
    )


def near_boundary_solve(
    regime: Regime | str,
    eta: float | None = None,
    p: float | None = None,
    eps: float | None = None,
) -> float:
    """Exact solution of the boundary equation in the regime's coordinate.

    * ``p1``: ``xi`` for the given ``eta``;
    * ``diag``: ``eta`` for a given ``eps``, or ``eps`` for a given ``eta``;
    * ``antidiag``: ``delta`` for the given ``p`` and ``eta``.
    """
    regime = Regime.parse(regime)
    if regime is Regime.DIAGONAL:
        if (eps is None) == (eta is None):
            raise InvalidArgs("diag needs exactly one of eps and eta")
        if eps is not None:
            return equal_case_optima(eps=eps).c_eq_star + 1.0
        _open_unit("eta", eta)
        f = lambda t: equal_case_optima(eps=math.exp(t)).c_eq_star + 1.0 - eta  # noqa: E731
        a, b = scan_bracket(f, -700.0, math.log(0.49), points=400)
        return math.exp(a if a == b else find_root(f, (a, b), tol=1e-13))

    if eta is None:
        raise InvalidArgs(f"{regime.value} needs eta")
    _open_unit("eta", eta)
    if regime is Regime.NEAR_P_ONE:
        s = find_root(lambda t: near_p_one_residual(eta, t), (-745.0, -1e-12), tol=1e-13)
        return math.exp(s)

    if p is None:
        raise InvalidArgs("antidiag needs p")
    if not 0.0 < p < 1.0:
        raise DomainError(f"need 0 < p < 1, got {p}")
    f = lambda u: anti_diagonal_phi1(p, eta, u)  # noqa: E731
    a, b = scan_bracket(f, -700.0, math.log(1.0 - p) - 1e-9, points=700)
    return math.exp(a if a == b else find_root(f, (a, b), tol=1e-13))
