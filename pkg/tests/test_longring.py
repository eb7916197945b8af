import random
from fractions import Fraction

import pytest

from conftest import long_packing
from geoknap.core import InputError, Item, Packing, Placement, Rect, validate_packing
from geoknap.longring import boundary_l_shape, ring_shift, ring_to_boundary_l


def pk_of(N, *pls):
    return Packing(Rect(0, 0, N, N), tuple(Placement(*p) for p in pls))


def test_single_horizontal_goes_to_a_side():
    items = [Item(0, 7, 2, 3)]
    ring = ring_shift(pk_of(10, (0, 1, 3)), items)
    assert len(ring.bottom) == 1 and ring.bottom[0].y == 0
    ring = ring_shift(pk_of(10, (0, 1, 7)), items)
    assert len(ring.top) == 1 and ring.top[0].y == 8


def test_corner_items_land_in_distinct_stacks():
    items = [Item(0, 6, 1), Item(1, 6, 1), Item(2, 1, 6), Item(3, 1, 6)]
    ring = ring_shift(pk_of(10, (0, 1, 1), (1, 3, 8), (2, 1, 3), (3, 8, 1)), items)
    assert sorted(len(ring.stack(s)) for s in ("top", "bottom", "left", "right")) == [1, 1, 1, 1]
    assert validate_packing(items, ring.packing(), False).ok


def test_flush_packing_is_fixed_point():
    items = [Item(0, 6, 1), Item(1, 6, 1), Item(2, 1, 6), Item(3, 1, 6)]
    pk = pk_of(10, (0, 2, 0), (1, 2, 9), (2, 0, 2), (3, 9, 2))
    ring = ring_shift(pk, items)
    assert ring.packing().canonical() == pk.canonical()


def test_short_item_rejected():
    with pytest.raises(InputError):
        ring_shift(pk_of(10, (0, 0, 0)), [Item(0, 5, 5)])


def test_one_stack_keeps_everything():
    items = [Item(0, 7, 2, 4), Item(1, 8, 1, 5)]
    out, kept = ring_to_boundary_l(ring_shift(pk_of(10, (0, 0, 0), (1, 0, 2)), items))
    assert kept == 9 and out.profit(items) == 9


def test_four_equal_stacks_keep_three_quarters():
    items = [Item(0, 6, 1, 1), Item(1, 6, 1, 1), Item(2, 1, 6, 1), Item(3, 1, 6, 1)]
    pk = pk_of(10, (0, 2, 0), (1, 2, 9), (2, 0, 2), (3, 9, 2))
    out, kept = ring_to_boundary_l(ring_shift(pk, items))
    assert kept == 3 and len(out.placements) == 3
    # the removal tie-break drops the top stack first
    assert 1 not in out.ids


def test_two_by_two_fixture_l_extents():
    items = [Item(0, 6, 1, 1), Item(1, 6, 1, 1), Item(2, 1, 6, 1), Item(3, 1, 6, 1)]
    pk = pk_of(10, (0, 0, 0), (1, 4, 9), (2, 0, 4), (3, 9, 0))  # pinwheel
    out, kept = ring_to_boundary_l(ring_shift(pk, items))
    shape = boundary_l_shape(out, items)
    hor = [i for i in out.ids if i in (0, 1)]
    ver = [i for i in out.ids if i in (2, 3)]
    assert kept == 3 and validate_packing(items, out, False).ok
    assert (shape.h_L, shape.w_L) == (len(hor), len(ver))


def test_random_ring_bound():
    rng = random.Random(41)
    for _ in range(150):
        N = rng.randint(4, 30)
        items, pk = long_packing(rng, N, rng.randint(1, 25))
        ring = ring_shift(pk, items)
        assert sorted(ring.packing().ids) == sorted(pk.ids)
        assert validate_packing(items, ring.packing(), False).ok
        out, kept = ring_to_boundary_l(ring)
        assert validate_packing(items, out, False).ok
        assert 4 * kept >= 3 * pk.profit(items)
        assert kept >= Fraction(3, 4) * ring.profit
