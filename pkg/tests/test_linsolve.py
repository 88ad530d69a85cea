from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import small_fractions
from quasiseries.generators import eisenstein
from quasiseries.linsolve import InconsistentSystemError, solve_combination
from quasiseries.series import TruncatedSeries


def columns(order):
    return [TruncatedSeries.one(order), eisenstein(1, order), eisenstein(2, order), eisenstein(3, order)]


@given(st.lists(small_fractions, min_size=4, max_size=4))
def test_solver_round_trip(x):
    cols = columns(30)
    target = TruncatedSeries.zero(30)
    for xj, c in zip(x, cols):
        target = target + c * xj
    assert solve_combination(target, cols) == x


def test_inconsistency_reports_first_bad_index():
    cols = columns(40)
    target = eisenstein(1, 40) * eisenstein(1, 40)
    with pytest.raises(InconsistentSystemError) as err:
        solve_combination(target, cols)
    assert 1 <= err.value.index <= 40
    bumped = cols[1] * 2 + TruncatedSeries([0] * 35 + [Fraction(1, 3)] + [0] * 5)
    with pytest.raises(InconsistentSystemError) as err:
        solve_combination(bumped, cols)
    assert err.value.index == 35


def test_guard_band_is_enforced():
    with pytest.raises(ValueError):
        solve_combination(eisenstein(1, 10), columns(10))
    assert solve_combination(eisenstein(1, 19), columns(19)) == [0, 1, 0, 0]
    assert solve_combination(eisenstein(1, 4), columns(4), guard=1) == [0, 1, 0, 0]


def test_dependent_columns_are_rejected():
    cols = columns(30)
    with pytest.raises(ValueError):
        solve_combination(cols[1], cols + [cols[1] * 3])


def test_empty_column_set():
    assert solve_combination(TruncatedSeries.zero(20), [], guard=16) == []
    with pytest.raises(InconsistentSystemError) as err:
        solve_combination(TruncatedSeries([0, 0, 5] + [0] * 17), [])
    assert err.value.index == 2
