import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoknap.core import ConditionError, InputError, Item, Packing, ParameterError, Rect, validate_packing
from geoknap.placement import exact_pack, heuristic_pack
from geoknap.shelf import nfdh_order, nfdh_pack, shelves
from geoknap.steinberg import (area_prefix_select, corollary_budget, small_stein_pack,
                               steinberg_condition, steinberg_pack, steinberg_slack)


# --- NFDH ---

def test_nfdh_single_item():
    pk, left = nfdh_pack([Item(0, 3, 4)], 10, 10)
    assert [(p.x, p.y) for p in pk.placements] == [(0, 0)] and left == []


def test_nfdh_one_shelf():
    pk, left = nfdh_pack([Item(i, 2, 2) for i in range(5)], 10, 10)
    assert sorted(p.x for p in pk.placements) == [0, 2, 4, 6, 8]
    assert {p.y for p in pk.placements} == {0} and not left


def test_nfdh_small_items_under_area_cap():
    rng = random.Random(3)
    items, area = [], 0
    while True:
        it = Item(len(items), rng.randint(1, 2), rng.randint(1, 2))
        if area + it.area > 60:
            break
        items.append(it)
        area += it.area
    pk, left = nfdh_pack(items, 10, 10)
    assert not left and validate_packing(items, pk, False).ok


def test_nfdh_shelves_and_order():
    items = [Item(0, 3, 1), Item(1, 4, 3), Item(2, 4, 3), Item(3, 5, 2)]
    assert [it.id for it in nfdh_order(items)] == [1, 2, 3, 0]
    pk, left = nfdh_pack(items, 8, 6)
    rows = shelves(pk, items)
    assert [[p.item_id for p in row] for row in rows] == [[1, 2], [3, 0]]
    assert not left


def test_nfdh_leftover_is_suffix():
    items = [Item(i, 5, 4) for i in range(4)]
    pk, left = nfdh_pack(items, 10, 5)
    assert len(pk.placements) == 2 and [it.id for it in left] == [2, 3]


def test_nfdh_too_large():
    with pytest.raises(InputError):
        nfdh_pack([Item(0, 11, 1)], 10, 10)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([Fraction(1, 10), Fraction(1, 5), Fraction(2, 5)]),
       st.integers(10, 50), st.integers(10, 50), st.integers(0, 10 ** 6))
def test_nfdh_area_guarantee(eps, W, H, seed):
    rng = random.Random(seed)
    mw, mh = max(1, int(eps * W)), max(1, int(eps * H))
    items = [Item(i, rng.randint(1, mw), rng.randint(1, mh)) for i in range(rng.randint(0, 120))]
    pk, left = nfdh_pack(items, W, H)
    packed = sum(it.area for it in items) - sum(it.area for it in left)
    assert packed >= min(sum(it.area for it in items), (1 - 2 * eps) * W * H)


# --- Steinberg ---

def test_steinberg_empty():
    assert steinberg_pack([], 10, 10).placements == ()


def test_steinberg_three_squares():
    items = [Item(i, 4, 4) for i in range(3)]
    assert steinberg_slack(items, 10, 10) == 100 - 96
    pk = steinberg_pack(items, 10, 10)
    assert len(pk.placements) == 3 and validate_packing(items, pk, False).ok


def test_steinberg_half_sides_area_fifty():
    items = [Item(0, 5, 5), Item(1, 5, 2), Item(2, 3, 4), Item(3, 1, 1)]
    assert sum(it.area for it in items) <= 50
    pk = steinberg_pack(items, 10, 10)
    assert len(pk.placements) == 4


def test_steinberg_condition_violation_reports_slack():
    items = [Item(0, 8, 8), Item(1, 3, 3)]
    with pytest.raises(ConditionError) as e:
        steinberg_pack(items, 10, 10)
    assert e.value.slack == steinberg_slack(items, 10, 10) < 0
    assert not steinberg_condition(items, 10, 10)


def test_small_stein_budget_example():
    assert corollary_budget(Fraction(1, 10), Fraction(1, 10), Fraction(1, 20), 100) == 3600
    items = [Item(i, 30, 30) for i in range(4)]
    pk = small_stein_pack(items, Fraction(1, 10), Fraction(1, 10), Fraction(1, 20), 100)
    assert pk.region.w == pk.region.h == 90 and len(pk.placements) == 4
    assert small_stein_pack([], 0, 0, Fraction(1, 20), 100).placements == ()


def test_small_stein_preconditions():
    with pytest.raises(ConditionError):
        small_stein_pack([Item(i, 31, 30) for i in range(4)], Fraction(1, 10), Fraction(1, 10),
                         Fraction(1, 20), 100)
    with pytest.raises(ParameterError):
        small_stein_pack([], Fraction(1, 2), 0, Fraction(1, 20), 100)


def test_area_prefix():
    items = [Item(i, a, 1) for i, a in enumerate([3, 1, 4, 2])]
    assert sorted(it.w for it in area_prefix_select(items, 6)) == [1, 2, 3]
    assert area_prefix_select(items, 0) == []
    assert len(area_prefix_select(items, 100)) == 4
    with pytest.raises(ParameterError):
        area_prefix_select(items, -1)


def test_heuristic_and_exact_agree_on_feasible_boxes():
    rng = random.Random(9)
    for _ in range(80):
        W, H = rng.randint(3, 8), rng.randint(3, 8)
        items = [Item(i, rng.randint(1, W), rng.randint(1, H)) for i in range(rng.randint(1, 5))]
        ex = exact_pack(items, W, H)
        heur = heuristic_pack(items, W, H)
        if heur is not None:
            assert ex is not None
        if ex is not None:
            assert validate_packing(items, Packing(Rect(0, 0, W, H), tuple(ex)), False).ok
