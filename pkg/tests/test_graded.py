from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import small_fractions
from quasiseries.generators import DOUBLED, PLAIN, big_theta, eisenstein, g2, theta_xy
from quasiseries.graded import (
    GradedPoly,
    basis_monomials,
    d_e_basis,
    d_g_basis,
    d_theta_basis,
    d_xy,
    eval_poly,
    express_in_basis,
    partial_e2,
    partition_eisenstein,
    partitions_of,
    theta_to_xy,
    xy_to_theta,
)
from quasiseries.linsolve import InconsistentSystemError
from quasiseries.series import TruncatedSeries, derive

F = Fraction


def E(terms):
    return GradedPoly("E", terms)


# -- strategies --------------------------------------------------------------------------
@st.composite
def graded_polys(draw, basis, max_t=6, diag=PLAIN):
    if basis == "XY":
        return theta_to_xy(draw(graded_polys("Theta", max_t)))
    t = draw(st.integers(0, max_t))
    keys = basis_monomials(basis, t)
    chosen = draw(st.lists(st.sampled_from(keys), min_size=0, max_size=5, unique=True))
    terms = {k: draw(small_fractions) for k in chosen}
    return GradedPoly(basis, terms, diag if basis == "Theta" else PLAIN)


# -- examples ----------------------------------------------------------------------------
def test_eval_poly_examples():
    assert eval_poly(E({(1, 0, 0): 1}), 30) == eisenstein(1, 30)
    assert list(eval_poly(E({(2, 0, 0): 3, (0, 1, 0): -2}), 1).coeffs) == [1, -624]
    assert eval_poly(E({}), 5) == TruncatedSeries.zero(5)


def test_d_e_basis_examples():
    assert d_e_basis(E({(1, 0, 0): 1})) == E({(2, 0, 0): F(1, 12), (0, 1, 0): F(-1, 12)})
    assert d_e_basis(E({(0, 0, 0): 7})).is_zero()
    expected = E({(2, 1, 0): F(1, 12) + F(1, 3), (0, 2, 0): F(-1, 12), (1, 0, 1): F(-1, 3)})
    assert d_e_basis(E({(1, 1, 0): 1})) == expected


def test_d_theta_basis_examples():
    xy = GradedPoly("XY", {(0, 1, 0): 1, (0, 0, 1): 1})
    expected = GradedPoly(
        "XY",
        {(1, 1, 0): F(1, 6), (1, 0, 1): F(1, 6), (0, 2, 0): F(-1, 6), (0, 0, 2): F(-1, 6), (0, 1, 1): F(10, 6)},
    )
    assert d_xy(xy) == expected
    # in Theta form the diagonal coefficient depends on the convention
    th = GradedPoly("Theta", {(0, 0, 1): 1}, DOUBLED)
    assert d_theta_basis(th) == GradedPoly(
        "Theta", {(1, 0, 1): F(1, 6), (0, 1, 1): F(5, 6), (0, 0, 2): F(-1, 6)}, DOUBLED
    )
    assert d_theta_basis(GradedPoly("Theta", {(0, 0, 0): 3})).is_zero()


def test_d_g_basis_examples():
    assert d_g_basis(GradedPoly("G", {(0, 1, 0): 1})) == GradedPoly(
        "G", {(1, 1, 0): F(1, 6), (0, 2, 0): F(-1, 3), (0, 0, 1): F(1, 6)}
    )
    assert d_g_basis(GradedPoly("G", {(0, 0, 1): 1})) == GradedPoly(
        "G", {(1, 0, 1): F(1, 3), (0, 3, 0): F(-4, 3), (0, 1, 1): F(1)}
    )
    assert d_g_basis(GradedPoly("G", {(0, 0, 0): 2})).is_zero()


def test_wrong_basis_is_rejected():
    with pytest.raises(ValueError):
        d_e_basis(GradedPoly("G", {(1, 0, 0): 1}))
    with pytest.raises(ValueError):
        partial_e2(GradedPoly("XY", {(1, 0, 0): 1}))
    with pytest.raises(ValueError):
        d_theta_basis(E({(1, 0, 0): 1}))


def test_partial_e2_examples():
    assert partial_e2(E({(2, 0, 0): 1})) == E({(1, 0, 0): 2})
    assert partial_e2(E({(0, 1, 0): 1})).is_zero()
    assert partial_e2(E({(2, 0, 0): F(5, 3), (0, 1, 0): F(-2, 3)})) == E({(1, 0, 0): F(10, 3)})


def test_express_in_basis_examples():
    v4 = eval_poly(E({(2, 0, 0): 3, (0, 1, 0): -2}), 60)
    assert express_in_basis(v4, 2) == E({(2, 0, 0): 3, (0, 1, 0): -2})
    u4 = eval_poly(E({(2, 0, 0): F(5, 3), (0, 1, 0): F(-2, 3)}), 60)
    assert express_in_basis(u4, 2) == E({(2, 0, 0): F(5, 3), (0, 1, 0): F(-2, 3)})
    assert express_in_basis(TruncatedSeries.one(40), 3) == E({(0, 0, 0): 1})


def test_express_in_basis_reports_first_failure():
    f = eisenstein(1, 40) + TruncatedSeries([0] * 30 + [1] + [0] * 10)
    with pytest.raises(InconsistentSystemError) as err:
        express_in_basis(f, 1)
    assert err.value.index == 30


def test_express_in_basis_needs_guard_band():
    with pytest.raises(ValueError):
        express_in_basis(eisenstein(1, 10), 3)


def test_g2_and_e4_in_theta_basis():
    g = express_in_basis(g2(60), 1, "Theta")
    assert g == GradedPoly("Theta", {(0, 0, 1): 1})
    e4 = express_in_basis(eisenstein(2, 60), 2, "Theta", DOUBLED)
    assert e4 == GradedPoly("Theta", {(0, 0, 2): 1, (0, 1, 1): 7}, DOUBLED)
    e4_plain = express_in_basis(eisenstein(2, 60), 2, "Theta", PLAIN)
    assert e4_plain == GradedPoly("Theta", {(0, 0, 2): 1, (0, 1, 1): 14})


def test_partition_eisenstein_examples():
    assert partition_eisenstein(0, "plus", 10) == TruncatedSeries.one(10)
    assert partition_eisenstein(1, "plus", 30) == eisenstein(1, 30) / 24
    expected = eval_poly(E({(2, 0, 0): F(1, 1152), (0, 1, 0): F(-1, 2880)}), 30)
    assert partition_eisenstein(2, "plus", 30) == expected
    assert partition_eisenstein(1, "minus", 30) == eisenstein(1, 30) / -24
    with pytest.raises(ValueError):
        partition_eisenstein(2, "zero", 5)


def test_partitions_of_counts():
    assert [sum(1 for _ in partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert all(sum(p * m for p, m in part.items()) == 7 for part in partitions_of(7))


def test_graded_poly_invariants():
    assert dict(GradedPoly("Theta", {(0, 2, 1): 1}).terms) == {(0, 1, 2): 1}
    with pytest.raises(ValueError):
        GradedPoly("XY", {(0, 1, 0): 1})
    with pytest.raises(ValueError):
        GradedPoly("E", {(0, -1, 0): 1})
    with pytest.raises(ValueError):
        GradedPoly("W", {})
    p = E({(1, 0, 0): 0, (0, 1, 0): 2})
    assert dict(p.items()) == {(0, 1, 0): 2}
    assert p.weights() == {4}


def test_graded_poly_product_matches_series_product():
    p = E({(1, 0, 0): 2, (0, 1, 0): -1})
    q = E({(0, 0, 1): 3, (2, 0, 0): 1})
    assert eval_poly(p * q, 40) == eval_poly(p, 40) * eval_poly(q, 40)
    th = GradedPoly("Theta", {(0, 1, 1): 1, (1, 0, 1): 2})
    assert eval_poly(th * th, 40) == eval_poly(th, 40) * eval_poly(th, 40)


# -- properties --------------------------------------------------------------------------
ORDER = 24


def commutes(op, p):
    lhs = eval_poly(op(p), ORDER)
    rhs = derive(eval_poly(p, ORDER + 1)).truncate(ORDER)
    return lhs == rhs


@given(graded_polys("E", max_t=6))
def test_d_e_basis_commutes_with_evaluation(p):
    assert commutes(d_e_basis, p)


@given(graded_polys("G", max_t=6))
def test_d_g_basis_commutes_with_evaluation(p):
    assert commutes(d_g_basis, p)


@given(graded_polys("XY", max_t=6))
def test_d_xy_commutes_with_evaluation(p):
    assert commutes(d_xy, p)


@given(graded_polys("Theta", max_t=6, diag=PLAIN), st.sampled_from([PLAIN, DOUBLED]))
def test_d_theta_commutes_with_evaluation(p, diag):
    p = GradedPoly("Theta", dict(p.terms), diag)
    assert commutes(d_theta_basis, p)


@given(graded_polys("Theta", max_t=5), st.sampled_from([PLAIN, DOUBLED]))
def test_theta_xy_round_trip(p, diag):
    p = GradedPoly("Theta", dict(p.terms), diag)
    assert xy_to_theta(theta_to_xy(p), diag) == p
    assert eval_poly(p, 20) == eval_poly(theta_to_xy(p), 20)


@given(graded_polys("E", max_t=5))
def test_express_in_basis_round_trip_e(p):
    t = max(p.weights(), default=0) // 2
    f = eval_poly(p, len(basis_monomials("E", t)) + 20)
    assert express_in_basis(f, t) == p


@given(graded_polys("G", max_t=4))
def test_express_in_basis_round_trip_g(p):
    t = max(p.weights(), default=0) // 2
    f = eval_poly(p, len(basis_monomials("G", t)) + 20)
    assert express_in_basis(f, t, "G") == p


@given(graded_polys("Theta", max_t=4), st.sampled_from([PLAIN, DOUBLED]))
def test_express_in_basis_round_trip_theta(p, diag):
    p = GradedPoly("Theta", dict(p.terms), diag)
    t = max(p.weights(), default=0) // 2
    f = eval_poly(p, len(basis_monomials("Theta", t)) + 20)
    assert express_in_basis(f, t, "Theta", diag) == p


def test_big_theta_matches_theta_basis_evaluation():
    for r in range(3):
        for s in range(r, 3):
            assert big_theta(r, s, 30) == eval_poly(GradedPoly("Theta", {(0, r, s): 1}), 30)
    x, y = theta_xy(30)
    assert eval_poly(GradedPoly("XY", {(0, 1, 1): 1}), 30) == x * y
