import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoknap.core import (Instance, InputError, Item, Packing, ParameterError, ParseError,
                          Placement, Rect, StructuralError, ValidationFailure, audit_packings,
                          better, checked, classify_items, classify_one, instance_from_dict,
                          instance_to_dict, load_instance, load_packing, packing_from_dict,
                          packing_to_dict, save_instance, save_packing, validate_packing)


def test_validate_empty_packing_ok():
    inst = Instance(10, [Item(0, 2, 2)])
    assert validate_packing(inst, Packing.empty(10)).ok


def test_validate_overlap_names_both_ids():
    inst = Instance(10, [Item(0, 1, 1), Item(1, 1, 1)])
    pk = Packing(Rect(0, 0, 10, 10), (Placement(0, 0, 0), Placement(1, 0, 0)))
    rep = validate_packing(inst, pk)
    assert not rep.ok
    assert [(v.kind, v.ids) for v in rep.violations] == [("overlap", (0, 1))]


def test_validate_containment():
    inst = Instance(10, [Item(3, 3, 3)])
    rep = validate_packing(inst, Packing(Rect(0, 0, 10, 10), (Placement(3, 8, 8),)))
    assert [v.kind for v in rep.violations] == ["containment"]


def test_validate_shared_edges_allowed():
    inst = Instance(4, [Item(0, 2, 4), Item(1, 2, 4)])
    pk = Packing(Rect(0, 0, 4, 4), (Placement(0, 0, 0), Placement(1, 2, 0)))
    assert validate_packing(inst, pk).ok


def test_validate_unknown_id_is_structural():
    inst = Instance(4, [Item(0, 1, 1)])
    with pytest.raises(StructuralError):
        validate_packing(inst, Packing(Rect(0, 0, 4, 4), (Placement(7, 0, 0),)))


def test_validate_duplicate_and_rotation():
    inst = Instance(6, [Item(0, 1, 3)])
    pk = Packing(Rect(0, 0, 6, 6), (Placement(0, 0, 0, True), Placement(0, 3, 3)))
    kinds = sorted(v.kind for v in validate_packing(inst, pk).violations)
    assert kinds == ["duplicate", "rotation"]
    assert validate_packing(Instance(6, [Item(0, 1, 3)], True),
                            Packing(Rect(0, 0, 6, 6), (Placement(0, 0, 0, True),))).ok


def test_checked_raises_and_audits():
    items = [Item(0, 2, 2), Item(1, 2, 2)]
    bad = Packing(Rect(0, 0, 3, 3), (Placement(0, 0, 0), Placement(1, 1, 1)))
    with audit_packings() as log:
        checked(items, Packing(Rect(0, 0, 3, 3), (Placement(0, 0, 0),)))
        with pytest.raises(ValidationFailure):
            checked(items, bad)
    assert log == [True, False]


def test_instance_invariants():
    with pytest.raises(InputError):
        Instance(5, [Item(0, 6, 1)])
    with pytest.raises(InputError):
        Instance(5, [Item(0, 1, 1), Item(0, 2, 2)])
    with pytest.raises(InputError):
        Instance(0, [])


def test_better_prefers_profit_then_canonical_order():
    a = Packing(Rect(0, 0, 4, 4), (Placement(1, 0, 0),))
    b = Packing(Rect(0, 0, 4, 4), (Placement(0, 0, 0),))
    assert better(0, None, 1, a)
    assert not better(2, a, 1, b)
    assert better(1, a, 1, b) != better(1, b, 1, a)


# --- JSON ---

def test_round_trip(tmp_path):
    inst = Instance(10, [Item(2, 3, 4, 5), Item(0, 1, 1, 0), Item(1, 10, 2, 7)], True)
    p = tmp_path / "i.json"
    save_instance(p, inst)
    again = load_instance(p)
    assert instance_to_dict(again) == instance_to_dict(inst)
    assert again.N == 10 and len(again.items) == 3 and again.rotations
    pk = Packing(Rect(0, 0, 10, 10), (Placement(1, 0, 0), Placement(2, 0, 2, True)))
    q = tmp_path / "p.json"
    save_packing(q, pk)
    assert load_packing(q).canonical() == pk.canonical()
    assert json.loads(q.read_text())["placements"][0].keys() == {"id", "x", "y", "rot"}


def test_fixture_counts(tmp_path):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"n": 10, "rotations": False, "items": [
        {"id": 0, "w": 2, "h": 3, "p": 1}, {"id": 1, "w": 5, "h": 5, "p": 2},
        {"id": 2, "w": 10, "h": 1, "p": 3}]}))
    inst = load_instance(p)
    assert inst.N == 10 and len(inst.items) == 3 and inst.total_profit == 6


@pytest.mark.parametrize("raw, where", [
    ({"n": 10, "items": [{"id": 0, "w": 1, "h": 1, "p": 1}, {"id": 0, "w": 1, "h": 1, "p": 1}]}, "duplicate"),
    ({"n": 10, "items": [{"id": 0, "w": 1, "h": 1}]}, "'p'"),
    ({"n": "10", "items": []}, "instance.n"),
    ({"n": 3, "items": [{"id": 0, "w": 4, "h": 1, "p": 1}]}, "does not fit"),
    ([], "object"),
])
def test_parse_errors(raw, where):
    with pytest.raises(ParseError, match=where):
        instance_from_dict(raw)


def test_malformed_json_reports_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 3,\n "items": [}\n')
    with pytest.raises(ParseError, match="line 2"):
        load_instance(p)


def test_packing_parse_errors():
    with pytest.raises(ParseError):
        packing_from_dict({"region": {"x": 0, "y": 0, "w": 4}, "placements": []})
    with pytest.raises(ParseError):
        packing_from_dict({"region": {"x": 0, "y": 0, "w": 4, "h": 4},
                           "placements": [{"id": 0, "x": 0, "y": 0, "rot": "no"}]})


# --- classification ---

def test_classify_empty_and_all_small():
    c = classify_items(Instance(100, []), Fraction(1, 2))
    assert c.intermediate_profit == 0 and c.classes == {}
    inst = Instance(10 ** 6, [Item(i, 1, 1, 3) for i in range(4)])
    c = classify_items(inst, Fraction(1, 2))
    assert c.intermediate_profit == 0
    assert set(c.classes.values()) == {"small"}


def test_classify_picks_minimising_pair():
    rng = random.Random(66)
    N = 10 ** 4
    items = [Item(i, rng.randint(1, N), rng.randint(1, N), rng.randint(1, 9)) for i in range(5)]
    inst = Instance(N, items)
    f = lambda x: x ** 3 / 8  # noqa: E731
    c = classify_items(inst, Fraction(1, 2), f)
    # exhaustive evaluation of every chain pair
    chain = [f(Fraction(1, 2))]
    for _ in range(4):
        chain.append(f(chain[-1]))
    profits = []
    for hi, lo in zip(chain, chain[1:]):
        profits.append(sum(it.p for it in items
                           if lo * N < it.w <= hi * N or lo * N < it.h <= hi * N))
    assert c.intermediate_profit == min(profits)
    assert c.intermediate_profit <= Fraction(1, 2) * sum(it.p for it in items)
    for it in items:
        assert c.classes[it.id] == classify_one(it.w, it.h, N, c.eps_large, c.eps_small)


def test_classify_boundaries():
    el, es = Fraction(1, 4), Fraction(1, 10)
    assert classify_one(10, 10, 100, el, es) == "small"
    assert classify_one(26, 26, 100, el, es) == "large"
    assert classify_one(26, 10, 100, el, es) == "horizontal"
    assert classify_one(10, 26, 100, el, es) == "vertical"
    assert classify_one(25, 10, 100, el, es) == "intermediate"
    assert classify_one(11, 11, 100, el, es) == "intermediate"


@pytest.mark.parametrize("eps", [0, 1, Fraction(3, 2), -1])
def test_classify_bad_eps(eps):
    with pytest.raises(ParameterError):
        classify_items(Instance(10, []), eps)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 1000), st.integers(1, 1000), st.integers(0, 50)),
                max_size=12),
       st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)]))
def test_classify_band_profit_bound(raw, eps):
    items = [Item(i, w, h, p) for i, (w, h, p) in enumerate(raw)]
    c = classify_items(Instance(1000, items), eps)
    assert c.intermediate_profit <= eps * sum(it.p for it in items)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8), st.integers(1, 4), st.integers(1, 4)),
                max_size=6))
def test_validate_matches_pairwise_geometry(raw):
    items = [Item(i, w, h) for i, (_, _, w, h) in enumerate(raw)]
    pk = Packing(Rect(0, 0, 10, 10), tuple(Placement(i, x, y) for i, (x, y, _, _) in enumerate(raw)))
    rects = [Rect(x, y, w, h) for x, y, w, h in raw]
    expect = all(Rect(0, 0, 10, 10).contains(r) for r in rects) and not any(
        rects[a].overlaps(rects[b]) for a in range(len(rects)) for b in range(a + 1, len(rects)))
    assert validate_packing(items, pk, False).ok == expect
