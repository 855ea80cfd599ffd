import random

import pytest
from hypothesis import given, strategies as st

from cubicmirror import hodge
from cubicmirror.hodge import HodgeDeligneDiamond as HD


def test_degeneration_constraints_give_three_diamonds():
    ds = hodge.lmhs_enumeration(4, hodge.DEGENERATION_CONSTRAINTS)
    assert len(ds) == 3
    assert set(ds) == set(hodge.PRINTED_DIAMONDS)
    assert sorted(d.rank_N() for d in ds) == [0, 1, 2]


def test_rank_two_selects_the_rhombus():
    ds = hodge.lmhs_enumeration(4, hodge.DEGENERATION_CONSTRAINTS + (hodge.rank_N(2),))
    assert ds == [hodge.PRINTED_DIAMONDS[0]]
    rh = ds[0]
    assert rh.diamond_rows()[2] == [1, 0, 1] and rh.diamond_rows()[4] == [1, 0, 1]
    assert rh.row(3) == 0


def test_mum_diamond_is_the_diagonal():
    ds = hodge.lmhs_enumeration(4, hodge.MUM_CONSTRAINTS)
    assert ds == [HD.from_dict({(p, p): 1 for p in range(4)})]


def test_trivial_weight_zero_case():
    ds = hodge.lmhs_enumeration(1, (hodge.graded_f(1),), n=0)
    assert ds == [HD.from_dict({(0, 0): 1}, n=0)]


@given(st.permutations(list(hodge.DEGENERATION_CONSTRAINTS) + [hodge.rank_N(2)]))
def test_constraint_order_is_irrelevant(cons):
    assert hodge.lmhs_enumeration(4, cons) == [hodge.PRINTED_DIAMONDS[0]]


@given(st.integers(0, 6))
def test_unconstrained_count_is_stars_and_bars(total):
    from math import comb
    # n = 1: four cells
    assert len(hodge.lmhs_enumeration(total, (), n=1)) == comb(total + 3, 3)


def test_bad_entries_rejected():
    with pytest.raises(ValueError):
        HD.from_dict({(4, 0): 1})
    with pytest.raises(ValueError):
        HD.from_dict({(0, 0): -1})


def test_rows_and_json():
    d = hodge.PRINTED_DIAMONDS[2]
    assert d.row(3) == 4 and d.total == 4 and d.is_symmetric()
    assert d.to_json()["rows"][3] == [1, 1, 1, 1]
