"""Success probabilities of the two-threshold strategy.

The strategy accepts a -1 from index ``k`` on and either mark from index
``j`` on (``k <= j``). It wins when the selected mark is the last mark of
its sign. In horizon-free coordinates ``C = n - j`` and ``D = n - k`` the
closed form does not depend on ``n`` and extends to real ``C, D >= -1``.
"""

from __future__ import annotations

import math

from laststop.errors import EqualCaseRequired, ParamError
from laststop.model import ModelParams


def _pw(base: float, expo: float) -> float:
    # base**expo for real exponents; the logs are cached by the caller in hot loops
    return math.exp(expo * math.log(base))


def w_upper(p: float, pp: float, C: float, D: float) -> float:
    """Closed form valid for ``C <= D`` (and its analytic continuation beyond).

    Raw-float kernel: no validation, and no mirroring when ``C > D``.
    """
    q, qp, qt = 1.0 - p, 1.0 - pp, 1.0 - p - pp
    head = (D - C) * pp * _pw(qp, D)
    inner = p * (_pw(q, C + 1) - _pw(qt, C + 1)) / pp + pp * (_pw(qp, C + 1) - _pw(qt, C + 1)) / p
    return head + _pw(qp, D - C) * inner


def w_mirror(p: float, pp: float, C: float, D: float) -> float:
    """Closed form for ``D <= C``: -1 and +1 thresholds exchange roles."""
    q, qp, qt = 1.0 - p, 1.0 - pp, 1.0 - p - pp
    head = (C - D) * p * _pw(q, C)
    inner = pp * (_pw(qp, D + 1) - _pw(qt, D + 1)) / p + p * (_pw(q, D + 1) - _pw(qt, D + 1)) / pp
    return head + _pw(q, C - D) * inner


def w_diag(p: float, pp: float, C: float) -> float:
    q, qp, qt = 1.0 - p, 1.0 - pp, 1.0 - p - pp
    a, b, c = _pw(q, C + 1), _pw(qp, C + 1), _pw(qt, C + 1)
    return (p * p * (a - c) + pp * pp * (b - c)) / (pp * p)


def w_closed(model: ModelParams, C: float, D: float, *, mirror: bool = True) -> float:
    """Success probability of the (C, D) threshold strategy.

    Parameters
    ----------
    model
        Trial probabilities.
    C, D
        Remaining-trial thresholds, reals ``>= -1``. ``C`` is where +1 starts
        being accepted, ``D`` where -1 does.
    mirror
        With the default, ``C > D`` switches to the mirrored closed form (the
        +1 threshold comes first). ``mirror=False`` evaluates the ``C <= D``
        expression everywhere, which is the surface whose stationary point
        the continuous optimum describes.
    """
    p, pp = model.p, model.pprime
    if C == D:
        return w_diag(p, pp, C)
    if C < D or not mirror:
        return w_upper(p, pp, C, D)
    return w_mirror(p, pp, C, D)


def w_recurrence(model: ModelParams, n: int, j: int, k: int) -> float:
    """Success probability ``w_{j,k}`` by backward induction over indices.

    Runs the diagonal recursion from ``w_{n,n} = p + p'`` down to ``j``, then
    lowers the -1 threshold from ``j`` to ``k``.
    """
    if not (1 <= k <= j <= n):
        raise IndexError(f"need 1 <= k <= j <= n, got n={n}, j={j}, k={k}")
    p, pp, q, qp, qt = model.p, model.pprime, model.q, model.qprime, model.qtilde
    w = p + pp
    for i in range(n - 1, j - 1, -1):
        w = p * q ** (n - i) + pp * qp ** (n - i) + qt * w
    for i in range(j - 1, k - 1, -1):
        w = pp * qp ** (n - i) + qp * w
    return w


def p_eq_success(model: ModelParams, ell: int) -> float:
    """Equal-case success of accepting the first mark among ``ell`` trials."""
    if not model.is_equal_case:
        raise EqualCaseRequired("p_eq_success needs p == pprime")
    if ell < 0:
        raise ParamError(f"ell must be >= 0, got {ell}")
    return 2.0 * (model.q**ell - model.qtilde**ell)
