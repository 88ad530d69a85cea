from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import series, series_pair
from quasiseries.series import (
    ModSeries,
    TruncatedSeries,
    add_series,
    coefficient,
    derive,
    divide_one_minus_power,
    invert,
    make_series,
    mul_series,
    power,
    reduce_mod,
    substitute_power,
)


def S(*coeffs, order=None):
    return make_series(list(coeffs), len(coeffs) - 1 if order is None else order)


# -- construction and access ---------------------------------------------------------
def test_make_series_pads_with_zeros():
    assert make_series([1], 3).coeffs == (1, 0, 0, 0)
    assert make_series([0, 1], 2).coeffs == (0, 1, 0)
    assert make_series([1, -1], 4).coeffs == (1, -1, 0, 0, 0)


def test_make_series_rejects_too_many_coefficients():
    with pytest.raises(ValueError):
        make_series([1, 2, 3], 1)
    with pytest.raises(ValueError):
        make_series([1], -1)


def test_common_denominator_is_reduced():
    s = TruncatedSeries([Fraction(1, 2), Fraction(1, 3), Fraction(2, 6)])
    assert s.denominator == 6
    assert s.numerators == (3, 2, 2)
    t = TruncatedSeries([Fraction(2, 4), Fraction(1, 2)])
    assert t.denominator == 2 and t.numerators == (1, 1)


def test_coefficient_access():
    assert coefficient(S(1, -1), 1) == -1
    assert coefficient(S(1, -1), 0) == 1
    sigma = TruncatedSeries([0] + [oracles.sigma(1, n) for n in range(1, 7)])
    assert coefficient(sigma, 6) == 12
    with pytest.raises(IndexError):
        S(1, 2)[5]


def test_valuation():
    assert S(0, 0, 3).valuation() == 2
    assert TruncatedSeries.zero(4).valuation() is None


# -- arithmetic examples -------------------------------------------------------------
def test_add_examples():
    assert add_series(S(1, 1), S(1, -1)) == S(2, 0)
    a = S(0, 1, 3)
    assert a + TruncatedSeries.zero(2) == a
    assert S(0, 1, 3) + S(0, 1, -3) == S(0, 2, 0)


def test_mul_examples():
    assert mul_series(S(1, 1), S(1, -1)) == S(1, 0)
    assert mul_series(S(1, 1, 0), S(1, -1, 0)) == S(1, 0, -1)
    geometric = TruncatedSeries([1] * 6)
    assert mul_series(S(1, -1, 0, 0, 0, 0), geometric) == TruncatedSeries.one(5)
    c2 = S(0, 1, 2, 4, 4)
    assert (c2 * c2)[4] == 12


def test_results_truncate_to_smaller_order():
    assert (S(1, 1, 1) + S(1, 1)).order == 1
    assert (S(1, 1, 1) * S(1, 1)).order == 1


def test_invert_examples():
    assert invert(S(1, -1, 0, 0, 0)) == TruncatedSeries([1] * 5)
    assert invert(S(1, -2, 0, 0, 2)) == S(1, 2, 4, 8, 14)
    assert invert(TruncatedSeries.one(3)) == TruncatedSeries.one(3)
    assert invert(S(2, 1, 0)) == S(Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8))


def test_invert_needs_nonzero_constant():
    with pytest.raises(ZeroDivisionError):
        invert(S(0, 1))


def test_derive_examples():
    assert derive(S(0, 0, 0, 1)) == S(0, 0, 0, 3)
    assert derive(TruncatedSeries.constant(7, 3)) == TruncatedSeries.zero(3)
    assert derive(S(1, -2, 0, 0, 2)) == S(0, -2, 0, 0, 8)


def test_power_examples():
    a = S(1, 2, 0, 0, 2)
    assert power(a, 0) == TruncatedSeries.one(4)
    fourth = power(a, 4)
    assert fourth[1] == 8 and fourth[2] == 24
    assert power(S(1, -1, 0), 2) == S(1, -2, 1)
    assert power(S(1, -1, 0, 0), -1) == TruncatedSeries([1, 1, 1, 1])


def test_substitute_power_examples():
    assert substitute_power(S(0, 1, 0), 2) == S(0, 0, 1)
    assert substitute_power(S(1, -24, 0), 2) == S(1, 0, -24)
    assert substitute_power(TruncatedSeries([1] * 7), 3) == S(1, 0, 0, 1, 0, 0, 1)
    with pytest.raises(ValueError):
        substitute_power(S(1, 1), 0)


def test_reduce_mod_examples():
    assert reduce_mod(S(1, -24), 5).residues == (1, 1)
    assert reduce_mod(S(0, 0, 3), 3).residues == (0, 0, 0)
    assert reduce_mod(S(0, 1, 0), 3).is_zero() is False
    with pytest.raises(ValueError):
        reduce_mod(S(0, Fraction(1, 2)), 2)
    assert reduce_mod(S(Fraction(1, 2)), 3).residues == (2,)


def test_mod_series_needs_modulus_two():
    with pytest.raises(ValueError):
        ModSeries([1], 1)


def test_scalar_operations():
    a = S(1, 2, 3)
    assert a * 2 == S(2, 4, 6)
    assert a / 2 == S(Fraction(1, 2), 1, Fraction(3, 2))
    assert 1 - a == S(0, -2, -3)
    assert -a == S(-1, -2, -3)
    assert a.shift(1) == S(0, 1, 2)


def test_series_division():
    a = S(1, 1, 1, 1)
    b = S(1, -1, 0, 0)
    assert a / b == S(1, 2, 3, 4)


def test_divide_one_minus_power_matches_direct_division():
    nums = [1, 0, 0, 2, 0, 0, 0, 0, 0, 0]
    expected = oracles.mul([Fraction(x) for x in nums], oracles.inv([1, 0, -1] + [0] * 7, 9), 9)
    expected = oracles.mul(expected, oracles.inv([1, 0, -1] + [0] * 7, 9), 9)
    assert divide_one_minus_power(list(nums), 2, 2) == expected


# -- properties ----------------------------------------------------------------------
@given(series_pair())
def test_mul_commutes(pair):
    a, b = pair
    assert a * b == b * a


@given(st.integers(0, 16).flatmap(lambda n: st.tuples(series(n), series(n), series(n))))
def test_mul_associates_and_distributes(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series_pair())
def test_mul_matches_schoolbook(pair):
    a, b = pair
    assert list((a * b).coeffs) == oracles.mul(list(a.coeffs), list(b.coeffs), a.order)


@settings(max_examples=200)
@given(series(unit=True))
def test_invert_is_two_sided_inverse(a):
    one = TruncatedSeries.one(a.order)
    assert a * invert(a) == one
    assert list(invert(a).coeffs) == oracles.inv(list(a.coeffs), a.order)


@given(series_pair())
def test_derive_is_a_derivation(pair):
    a, b = pair
    assert derive(a * b) == derive(a) * b + a * derive(b)


@given(series_pair(), st.integers(1, 4))
def test_substitute_power_is_a_ring_morphism(pair, k):
    a, b = pair
    assert substitute_power(a * b, k) == substitute_power(a, k) * substitute_power(b, k)
    assert substitute_power(a + b, k) == substitute_power(a, k) + substitute_power(b, k)


@st.composite
def integral_pair(draw):
    n = draw(st.integers(0, 20))
    ints = st.lists(st.integers(-50, 50), min_size=n + 1, max_size=n + 1)
    return TruncatedSeries(draw(ints)), TruncatedSeries(draw(ints))


@given(integral_pair(), st.sampled_from([2, 3, 5, 7, 12]))
def test_reduce_mod_commutes_with_ring_operations(pair, m):
    a, b = pair
    ra, rb = reduce_mod(a, m), reduce_mod(b, m)
    assert reduce_mod(a + b, m) == ra + rb
    assert reduce_mod(a * b, m) == ra * rb


@given(series(unit=True), st.integers(-3, 5))
def test_power_agrees_with_repeated_products(a, k):
    expected = TruncatedSeries.one(a.order)
    base = a if k >= 0 else invert(a)
    for _ in range(abs(k)):
        expected = expected * base
    assert power(a, k) == expected


@given(series())
def test_equality_ignores_representation(a):
    assert TruncatedSeries(list(a.coeffs)) == a
    assert hash(TruncatedSeries(list(a.coeffs))) == hash(a)
