from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, prod

import pytest

from quasiseries import recursions
from quasiseries.recursions import (
    cc_table,
    cc_tilde_table,
    cv_closed_ratio,
    cv_table,
    cv_tilde_table,
    elementary_symmetric,
    pochhammer,
    triples_of_weight,
    v_weights,
    v_weights_recurrence,
    w_weights,
)

F = Fraction


# -- cv ------------------------------------------------------------------------------------
def test_cv_printed_values():
    cv = cv_table(4)
    assert cv[(1, 0, 0)] == 1
    assert cv[(0, 1, 0)] == -2
    assert cv[(0, 0, 1)] == 16
    assert cv[(1, 1, 0)] == -30
    assert cv[(1, 0, 1)] == 448


def test_cv_derived_values():
    cv = cv_table(4)
    assert cv[(2, 0, 0)] == 3
    assert cv[(3, 0, 0)] == 15
    assert cv.level(2) == {(2, 0, 0): 3, (0, 1, 0): -2}
    assert cv.level(4) == {(4, 0, 0): 105, (2, 1, 0): -420, (1, 0, 1): 448, (0, 2, 0): -132}


def test_cv_entries_are_integers():
    cv = cv_table(10)
    assert all(v.denominator == 1 for v in cv.entries.values())
    assert len(cv.entries) == sum(len(triples_of_weight(w, (1, 2, 3))) for w in range(11))


def test_cv_scaling_law():
    cv, tilde = cv_table(8), cv_tilde_table(8)
    for key, v in cv.entries.items():
        assert v == 24 ** cv.weight(key) * tilde[key]


def test_cv_closed_ratio_examples():
    assert cv_closed_ratio(1, 0, 0) == 1
    assert cv_closed_ratio(1, 1, 0) == 15
    assert cv_closed_ratio(1, 0, 1) == 28
    assert pochhammer(5, 2) == 30


def test_cv_closed_ratio_matches_table():
    cv = cv_table(10)
    checked = 0
    for (a, b, g), v in cv.entries.items():
        base = cv[(0, b, g)]
        if base:
            assert v / base == cv_closed_ratio(a, b, g)
            checked += 1
    assert checked > 20


# -- cc --------------------------------------------------------------------------------------
def test_cc_base_values():
    cc = cc_table(2)
    assert cc[(1, 0, 0)] == F(1, 24)
    assert cc[(0, 0, 1)] == F(-1, 24)
    assert cc[(0, 1, 0)] == F(-1, 24)  # canonicalized lookup
    assert cc[(-1, 0, 1)] == 0


def test_cc_level_two():
    assert cc_table(2).level(2) == {
        (2, 0, 0): F(1, 192),
        (1, 0, 1): F(-1, 96),
        (0, 0, 2): F(1, 192),
        (0, 1, 1): F(-11, 96),
    }


def _raw_sweep(canonical_only):
    table = {(0, 0, 0): F(1)}

    def get(key):
        return table.get(key, F(0)) if min(key) >= 0 else F(0)

    for w in (1, 2):
        for key in triples_of_weight(w, (1, 1, 1), canonical_only):
            table[key] = recursions._cc_step(key, get)
    return table


def test_raw_cc_lookups_on_canonical_storage_miss_the_weight_four_example():
    # canonical keys stored, right-hand lookups left unsorted: (0,1,0) reads as 0
    raw = _raw_sweep(canonical_only=True)
    assert raw[(0, 1, 1)] == F(-47, 576)
    assert cc_table(2)[(0, 1, 1)] == F(-66, 576)
    assert raw[(1, 0, 1)] == cc_table(2)[(1, 0, 1)] == F(-6, 576)


def test_fully_ordered_cc_table_agrees_with_canonical_one():
    ordered, cc = _raw_sweep(canonical_only=False), cc_table(2)
    assert all(ordered[k] == cc[k] for k in ordered)


def test_cc_keys_are_canonical():
    cc = cc_table(6)
    assert all(b <= g for (_, b, g) in cc.entries)
    with pytest.raises(KeyError):
        cc[(7, 0, 0)]


# -- cc_tilde ------------------------------------------------------------------------------
def test_cc_tilde_values():
    t = cc_tilde_table(2)
    assert t[(1, 0, 0)] == F(1, 24)
    assert t[(0, 1, 0)] == F(-1, 24)
    assert t.level(2) == {(2, 0, 0): F(1, 192), (1, 1, 0): F(-1, 96), (0, 2, 0): F(3, 192), (0, 0, 1): F(-1, 96)}
    assert t[(0, -1, 0)] == 0


def test_cc_tilde_variants_split_at_level_three():
    good, printed = cc_tilde_table(5), cc_tilde_table(5, "printed")
    for w in range(3):
        assert good.level(w) == printed.level(w)
    assert good.level(3) != printed.level(3)
    with pytest.raises(ValueError):
        cc_tilde_table(3, "other")


def test_csv_export():
    text = cc_table(1).to_csv()
    assert text.splitlines() == ["alpha,beta,gamma,num,den", "0,0,0,1,1", "0,0,1,-1,24", "1,0,0,1,24"]


# -- weights -------------------------------------------------------------------------------
def test_elementary_symmetric_examples():
    assert elementary_symmetric([3, 5], 0) == 1
    assert elementary_symmetric([0, 1], 1) == 1
    assert elementary_symmetric([0, 1, 4], 2) == 4
    assert all(elementary_symmetric([j * j for j in range(t)], t) == 0 for t in range(1, 6))
    with pytest.raises(ValueError):
        elementary_symmetric([1, 2], 3)


def test_elementary_symmetric_matches_subset_sums():
    values = [F(1), F(-2), F(3, 4), F(5), F(1, 7)]
    for k in range(len(values) + 1):
        assert elementary_symmetric(values, k) == sum(prod(c) for c in combinations(values, k))


def test_v_weights_examples():
    assert v_weights(1) == [1]
    assert v_weights(2) == [1, 1]
    assert v_weights(3) == [4, 5, 1]
    with pytest.raises(ValueError):
        v_weights(0)


def test_v_weights_closed_form_equals_recurrence():
    for t in range(1, 11):
        assert v_weights(t) == v_weights_recurrence(t)


def test_w_weights_examples():
    assert w_weights(1) == [F(1, 24), F(1, 24)]
    assert w_weights(2) == [F(3, 640), F(1, 192), F(1, 1920)]
    assert w_weights(0) == [1]


def test_w_weights_alternating_sum_vanishes():
    for t in range(1, 8):
        assert sum((-1) ** a * w for a, w in enumerate(w_weights(t))) == 0


def test_w_weights_direct_definition():
    for t in range(5):
        pre = F(comb(2 * t, t), 16**t * (2 * t + 1))
        direct = [
            pre * sum(prod(F(1, (2 * l + 1) ** 2) for l in ls) for ls in combinations(range(t), a))
            for a in range(t + 1)
        ]
        assert w_weights(t) == direct


def test_triples_of_weight():
    assert triples_of_weight(3, (1, 2, 3)) == [(0, 0, 1), (1, 1, 0), (3, 0, 0)]
    assert triples_of_weight(2, (1, 1, 1), canonical_only=True) == [(0, 0, 2), (0, 1, 1), (1, 0, 1), (2, 0, 0)]
