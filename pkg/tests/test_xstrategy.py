import math

import numpy as np
import pytest

from laststop.errors import EqualCaseRequired, ParamError
from laststop.model import new_model
from laststop.numerics import binom_pmf, maximize_1d
from laststop.success import w_upper
from laststop.xstrategy import (
    p_star,
    p_tilde,
    success_prob_small_p,
    success_prob_x,
    success_prob_x_diagonal,
    success_prob_x_unequal,
    x_star,
    x_star_unequal,
    xstrategy_asymptotic,
    xstrategy_exact,
)
from oracles import first_mark_success, p_star_mp, unequal_s1_s2

LN2 = math.log(2)


def test_waiting_to_the_end_fails():
    assert success_prob_x(50, 0.1, 1.0) == 0.0


def test_optimum_matches_high_precision():
    assert p_star(500) == pytest.approx(p_star_mp(500), abs=1e-15)
    r = xstrategy_exact(500, 0.03)
    assert success_prob_x(500, 0.03, r.x_star) == pytest.approx(p_star_mp(500), abs=1e-13)


def test_two_trials():
    assert p_star(2) == pytest.approx(2 / 3, abs=1e-15)
    assert p_tilde(2) == pytest.approx(1 / 3, abs=1e-15)
    x = x_star(2, 0.4)
    grid = maximize_1d(lambda t: success_prob_x(2, 0.4, t), (0.0, 1.0), tol=1e-12)
    assert x == pytest.approx(grid, abs=1e-6)
    assert success_prob_x(2, 0.4, x) == pytest.approx(2 / 3, abs=1e-12)


def test_threshold_probability():
    for n in (5, 50, 500):
        pt = p_tilde(n)
        assert x_star(n, pt) == pytest.approx(0.0, abs=1e-12)
        assert success_prob_x(n, pt, 0.0) == pytest.approx(p_star(n), abs=1e-13)
        assert x_star(n, pt / 2) == 0.0


def test_success_independent_of_p():
    for n in (10, 100, 500):
        ps = np.linspace(p_tilde(n) * 1.001, 0.49, 50)
        vals = [success_prob_x(n, p, x_star(n, p)) for p in ps]
        assert max(vals) - min(vals) <= 1e-12


def test_optimum_bounds_and_monotone():
    vals = [p_star(n) for n in range(2, 1001)]
    assert all(0.5 < v <= 2 / 3 + 1e-15 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_unimodal_in_x():
    for n, p in [(10, 0.2), (100, 0.05), (500, 0.03), (40, 0.4)]:
        v = np.array([success_prob_x(n, p, x) for x in np.linspace(0, 1, 2001)])
        d = np.sign(np.diff(v))
        d = d[d != 0]
        assert np.count_nonzero(np.diff(d)) <= 1


def test_asymptotic_remainder_order():
    def err(n):
        return abs(xstrategy_asymptotic(n, 0.03).x_approx - x_star(n, 0.03))

    assert 6 <= err(500) / err(1000) <= 10
    a = xstrategy_asymptotic(500, 0.03)
    assert abs(a.p_tilde_approx - p_tilde(500)) <= 1e-6
    assert xstrategy_asymptotic(10**8, 0.03).p_star_approx == pytest.approx(0.5, abs=1e-8)


def test_small_p_expansion():
    assert success_prob_small_p(100, 0.0) == 0.0
    n = 500
    for y in np.linspace(0.1, 2.0, 12):
        exact = success_prob_x(n, y / n, 0.0)
        assert abs(success_prob_small_p(n, y) - exact) <= 5 / n**3


def test_small_p_leading_terms_at_ln2():
    # at y = ln 2 the first two orders reproduce 1/2 + ln^2(2) / (2n)
    n = 10**4
    val = success_prob_small_p(n, LN2)
    assert val == pytest.approx(0.5 + LN2**2 / (2 * n), abs=1e-7)


def test_rejects_bad_input():
    with pytest.raises(ParamError):
        xstrategy_exact(1, 0.1)
    with pytest.raises(ParamError):
        success_prob_x(10, 0.5, 0.3)
    with pytest.raises(ParamError):
        success_prob_x(10, 0.2, 1.3)


def test_diagonal_reference_by_enumeration():
    m = new_model(0.3, 0.2)
    n, x = 6, 0.35
    direct = sum(binom_pmf(ell, n, 1 - x) * first_mark_success(0.3, 0.2, ell) for ell in range(n + 1))
    assert success_prob_x_diagonal(m, n, x) == pytest.approx(direct, abs=1e-13)
    eq = new_model(0.2, 0.2)
    assert success_prob_x_diagonal(eq, 30, 0.4) == pytest.approx(success_prob_x(30, 0.2, 0.4), abs=1e-14)


def test_unequal_optimum():
    m = new_model(0.09, 0.05)
    r = x_star_unequal(m, 40)
    assert r.c_d == 7
    assert r.x_star == pytest.approx(0.667967251301, abs=1e-9)
    assert r.p_at_x_star == pytest.approx(0.523618813813, abs=1e-10)
    for h in (-1e-4, 1e-4):
        assert success_prob_x_unequal(m, 40, 7, r.x_star + h) < r.p_at_x_star
    xs = np.linspace(0, 1, 100001)
    vals = [success_prob_x_unequal(m, 40, 7, x) for x in xs[::10]]
    assert abs(xs[::10][int(np.argmax(vals))] - r.x_star) <= 2e-4


def test_unequal_closed_form_cross_check():
    n, c, x = 40, 7, 0.6
    direct = math.fsum(binom_pmf(ell, n, 1 - x) * w_upper(0.09, 0.05, c, ell - 1) for ell in range(n + 1))
    assert direct == pytest.approx(unequal_s1_s2(0.09, 0.05, n, c, x), abs=1e-10)


def test_unequal_endpoints():
    m = new_model(0.09, 0.05)
    assert success_prob_x_unequal(m, 40, 7, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_unequal_continuity_with_equal_case():
    # with the +1 threshold beyond the horizon the strategy takes the first mark, as in the equal case
    p, n = 0.1, 60
    m = new_model(p + 1e-9, p)
    for x in (0.0, 0.3, 0.7):
        assert success_prob_x_unequal(m, n, n, x) == pytest.approx(success_prob_x(n, p, x), abs=1e-6)


def test_unequal_needs_unequal_model():
    with pytest.raises(EqualCaseRequired):
        x_star_unequal(new_model(0.1, 0.1), 20)
