import math

import numpy as np
import pytest

from laststop.errors import EqualCaseRequired
from laststop.model import new_model
from laststop.success import p_eq_success, w_closed, w_mirror, w_recurrence, w_upper
from oracles import enumerate_success

MODELS = [(0.3, 0.2), (0.09, 0.05), (0.4, 0.4), (0.6, 0.1), (0.25, 0.01), (0.45, 0.44)]


@pytest.mark.parametrize("p, pp", MODELS)
def test_recurrence_matches_enumeration(p, pp):
    m = new_model(p, pp)
    for n in range(1, 9):
        for j in range(1, n + 1):
            for k in range(1, j + 1):
                assert w_recurrence(m, n, j, k) == pytest.approx(enumerate_success(p, pp, n, j, k), abs=1e-12)


@pytest.mark.parametrize("p, pp", MODELS)
def test_recurrence_matches_closed_form(p, pp):
    m = new_model(p, pp)
    for n in range(1, 31):
        for j in range(1, n + 1):
            for k in range(1, j + 1):
                assert abs(w_recurrence(m, n, j, k) - w_closed(m, n - j, n - k)) <= 1e-12


def test_terminal_value_is_p_plus_pprime():
    m = new_model(0.3, 0.2)
    assert w_recurrence(m, 10, 10, 10) == pytest.approx(0.5, abs=1e-15)
    assert w_closed(m, 0, 0) == pytest.approx(0.5, abs=1e-15)


def test_small_enumeration_case():
    m = new_model(0.3, 0.2)
    assert w_recurrence(m, 3, 2, 1) == pytest.approx(enumerate_success(0.3, 0.2, 3, 2, 1), abs=1e-14)


def test_horizon_forty_matches_closed_form():
    m = new_model(0.09, 0.05)
    assert abs(w_recurrence(m, 40, 33, 28) - w_closed(m, 7, 12)) <= 1e-12
    assert w_closed(m, 7, 12) == pytest.approx(0.529870739109, abs=1e-11)


def test_recurrence_index_order():
    m = new_model(0.3, 0.2)
    for args in [(5, 2, 3), (5, 6, 1), (5, 3, 0)]:
        with pytest.raises(IndexError):
            w_recurrence(m, *args)


@pytest.mark.parametrize("p, pp", MODELS)
def test_swap_symmetry(p, pp):
    for c, d in [(0, 3), (2.5, 7.25), (6, 6.5), (1, 20)]:
        assert w_upper(p, pp, c, d) == pytest.approx(w_mirror(pp, p, d, c), abs=1e-14)


def test_equal_case_surface_is_symmetric():
    m = new_model(0.2, 0.2)
    for c, d in [(0, 4), (1.5, 3), (5, 12)]:
        assert w_closed(m, c, d) == pytest.approx(w_closed(m, d, c), abs=1e-14)


@pytest.mark.parametrize("p, pp", MODELS)
def test_range_on_grid(p, pp):
    m = new_model(p, pp)
    grid = np.linspace(0, 60, 61)
    vals = np.array([[w_closed(m, c, d) for d in grid] for c in grid])
    assert vals.min() >= 0.0 and vals.max() <= 1.0


def test_no_trials_left_gives_zero():
    m = new_model(0.09, 0.05)
    assert w_closed(m, -1, -1) == pytest.approx(0.0, abs=1e-15)


def test_equal_case_first_mark_success():
    m = new_model(0.09, 0.09)
    assert p_eq_success(m, 0) == 0.0
    assert p_eq_success(m, 1) == pytest.approx(0.18, abs=1e-15)
    assert p_eq_success(m, 7) == pytest.approx(w_closed(m, 6, 6), abs=1e-15)
    assert p_eq_success(m, 7) == pytest.approx(0.534951097574, abs=1e-11)


def test_first_mark_success_needs_equal_case():
    with pytest.raises(EqualCaseRequired):
        p_eq_success(new_model(0.09, 0.05), 3)


def test_unmirrored_surface_differs_off_diagonal():
    m = new_model(0.09, 0.05)
    assert w_closed(m, 9, 4, mirror=False) != w_closed(m, 9, 4)
    assert w_closed(m, 4, 9, mirror=False) == w_closed(m, 4, 9)
    assert math.isfinite(w_closed(m, 9, 4, mirror=False))
