"""Acceptance suite: one PASS/FAIL line per criterion 1-12.

Run under pytest (the lines are repeated in the terminal summary) or directly:
    python3 tests/test_acceptance.py
"""
from __future__ import annotations

import json
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import long_packing, random_l_instance, random_packing, thin_packing  # noqa: E402
from geoknap.containers import Container, in_size_set, round_container, shrink_container  # noqa: E402
from geoknap.contraction import resource_contraction_cardinality, resource_contraction_weighted  # noqa: E402
from geoknap.core import (InputError, Item, Packing, Placement, Rect, audit_packings,  # noqa: E402
                          instance_from_dict, validate_packing)
from geoknap.gap import GapInstance, gap_augmented, gap_dp, gap_oracle, gap_ptas  # noqa: E402
from geoknap.longring import ring_shift, ring_to_boundary_l  # noqa: E402
from geoknap.lpack import full_grid, lpack_exact_dp, lpack_oracle, lpack_ptas  # noqa: E402
from geoknap.ratios import CASES, solve_case_lp, verify_dual, worst_case_mixes  # noqa: E402
from geoknap.shelf import nfdh_pack  # noqa: E402
from geoknap.solvers import solve_cardinality  # noqa: E402
from geoknap.steinberg import steinberg_condition, steinberg_pack  # noqa: E402

DATA = Path(__file__).parent / "data"
RESULTS: dict = {}   # criterion -> line, read by the conftest summary hook
AUDIT: list = []     # validation outcomes of every packing seen in criteria 1-11
_SEEN: list = []     # (items, packing, rotations) checked again for criterion 12


def _record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)


def _keep(items, pk, rotations=False):
    _SEEN.append((items, pk, rotations))
    return pk


def _audited(fn):
    """Run fn while collecting every packing validated inside library calls."""
    with audit_packings() as log:
        out = fn()
    AUDIT.extend(log)
    return out


# --- criteria ---------------------------------------------------------------------

def check_1():
    t = time.perf_counter()
    vals = {}
    ok = True
    for name, (act, duals, expected) in CASES.items():
        v = solve_case_lp(act)
        valid, bound = verify_dual(act, duals)
        vals[name] = v
        ok &= valid and v == bound == expected
    mixes = worst_case_mixes()
    ok &= mixes["cardinality"][0] == Fraction(9, 16) and mixes["weighted"][0] == Fraction(9, 17)
    want = [Fraction(5, 8), Fraction(127, 216), Fraction(17, 28), Fraction(215, 369),
            Fraction(325, 558), Fraction(24, 41)]
    ok &= list(vals.values()) == want
    dt = time.perf_counter() - t
    ok &= dt < 1
    return ok, (f"cases {', '.join(str(v) for v in vals.values())}; mixes "
                f"{mixes['cardinality'][0]}, {mixes['weighted'][0]}; {dt:.3f}s")


def check_2():
    rng = random.Random(2)
    t = time.perf_counter()
    bad = 0
    for _ in range(500):
        li = random_l_instance(rng, 6, 12)
        g = full_grid(li.N)
        a, pk = lpack_exact_dp(li, g, g)
        b, opk = lpack_oracle(li)
        _keep(li.items, pk)
        _keep(li.items, opk)
        bad += a != b
    dt = time.perf_counter() - t
    return bad == 0 and dt < 60, f"500 instances, {bad} mismatches, {dt:.1f}s"


def check_3():
    rng = random.Random(3)
    eps = Fraction(1, 2)
    bad, ratios = 0, []
    for _ in range(200):
        li = random_l_instance(rng, 8, 20)
        a, pk = lpack_ptas(li, eps)
        b, _ = lpack_oracle(li)
        _keep(li.items, pk)
        bad += a < (1 - 2 * eps) * b or a > b
        ratios.append(Fraction(a, b) if b else Fraction(1))
    mean = float(sum(ratios) / len(ratios))
    return bad == 0, f"200 instances, {bad} violations, mean ratio {mean:.4f}, min {float(min(ratios)):.4f}"


def four_stacks():
    items = [Item(0, 6, 1, 1), Item(1, 6, 1, 1), Item(2, 1, 6, 1), Item(3, 1, 6, 1)]
    pk = Packing(Rect(0, 0, 10, 10), (Placement(0, 2, 0), Placement(1, 2, 9),
                                      Placement(2, 0, 2), Placement(3, 9, 2)))
    return items, pk


def check_4():
    rng = random.Random(4)
    bad = invalid = 0
    worst = Fraction(1)
    for _ in range(200):
        N = rng.randint(4, 40)
        items, pk = long_packing(rng, N, rng.randint(1, 30))
        ring = ring_shift(pk, items)
        out, kept = ring_to_boundary_l(ring)
        _keep(items, out)
        invalid += not validate_packing(items, out, False).ok
        total = pk.profit(items)
        bad += 4 * kept < 3 * total or out.profit(items) != kept
        if total:
            worst = min(worst, Fraction(kept, total))
    items, pk = four_stacks()
    out, kept = ring_to_boundary_l(ring_shift(pk, items))
    _keep(items, out)
    tight = Fraction(kept, pk.profit(items)) == Fraction(3, 4)
    return bad == invalid == 0 and tight, (
        f"200 packings, {bad} bound violations, {invalid} invalid, worst {worst}; "
        f"four-stack fixture keeps {kept}/4")


def check_5():
    rng = random.Random(5)
    runs = empty_ok = bound_bad = 0
    for t in range(300):
        eps = Fraction(rng.choice([1, 2, 4]), 10)
        W, H = rng.randint(10, 80), rng.randint(10, 80)
        mw, mh = max(1, int(eps * W)), max(1, int(eps * H))
        cap = (1 - 2 * eps) * W * H
        # half the runs respect the area cap, the rest overflow it
        limit = cap if t % 2 == 0 else 2 * W * H
        items, area = [], 0
        while True:
            it = Item(len(items), rng.randint(1, mw), rng.randint(1, mh))
            if area + it.area > limit:
                break
            items.append(it)
            area += it.area
        pk, left = nfdh_pack(items, W, H)
        _keep(items, pk)
        packed = sum(it.area for it in items if it not in left)
        bound_bad += packed < min(area, cap)
        if area <= cap:
            runs += 1
            empty_ok += not left
    ok = empty_ok == runs and bound_bad == 0 and runs >= 100
    return ok, f"300 inputs ({runs} under the area cap, {runs - empty_ok} with leftovers), {bound_bad} area-bound violations"


def check_6():
    rng = random.Random(6)
    fails = 0
    for trial in range(250):
        W, H = rng.randint(4, 60), rng.randint(4, 60)
        mode = rng.choice(["any", "small", "wide", "tall"])
        items = []
        for k in range(rng.randint(1, 25)):
            if mode == "small":
                w, h = rng.randint(1, max(1, W // 3)), rng.randint(1, max(1, H // 3))
            elif mode == "wide":
                w, h = rng.randint(W // 2, W), rng.randint(1, max(1, H // 4))
            elif mode == "tall":
                w, h = rng.randint(1, max(1, W // 4)), rng.randint(H // 2, H)
            else:
                w, h = rng.randint(1, W), rng.randint(1, H)
            cand = items + [Item(k, w, h)]
            if steinberg_condition(cand, W, H):
                items = cand
        try:
            pk = steinberg_pack(items, W, H)
        except Exception:  # any failure counts against the criterion
            fails += 1
            continue
        _keep(items, pk)
        fails += len(pk.placements) != len(items) or not validate_packing(items, pk, False).ok
    return fails == 0, f"250 inputs satisfying the area condition, {fails} failures"


def check_7():
    rng = random.Random(7)
    eps = Fraction(1, 4)
    dp_bad = aug_bad = ptas_bad = 0
    for _ in range(250):
        n, k = rng.randint(0, 8), rng.randint(1, 2)
        caps = [rng.randint(0, 12) for _ in range(k)]
        S = [[rng.randint(1, 10) for _ in range(k)] for _ in range(n)]
        P = [[rng.randint(0, 9) for _ in range(k)] for _ in range(n)]
        g = GapInstance(caps, S, P)
        o, _ = gap_oracle(g)
        d, a = gap_dp(g)
        dp_bad += not (o == d == g.profit_of(a) and g.feasible(a))
        pa, aa = gap_augmented(g, eps)
        aug_bad += not (pa >= o and g.profit_of(aa) == pa and g.feasible(aa, 1 + eps))
        pp, ap = gap_ptas(g, eps)
        ptas_bad += not (pp >= (1 - 3 * eps) * o and g.profit_of(ap) == pp and g.feasible(ap))
    return dp_bad == aug_bad == ptas_bad == 0, (
        f"250 instances; mismatches dp {dp_bad}, augmented {aug_bad}, ptas {ptas_bad}")


def _stacked(rng, kind, W, H):
    """Items that fit a kind-'h' (stacked upward) or kind-'v' (side by side) container."""
    items, used = [], 0
    along_cap = H if kind == "h" else W
    across_cap = W if kind == "h" else H
    while True:
        across = rng.randint(max(1, across_cap // 3), across_cap)
        along = rng.randint(1, max(1, along_cap // 6))
        if used + along > along_cap:
            break
        used += along
        w, h = (across, along) if kind == "h" else (along, across)
        items.append(Item(len(items), w, h, rng.randint(1, 20)))
    return items


def check_8():
    rng = random.Random(8)
    shrink_bad = round_bad = 0
    runs = 0
    for _ in range(200):
        eps = Fraction(1, rng.choice([3, 4, 5, 8]))
        kind = rng.choice("hv")
        W, H = rng.randint(5, 60), rng.randint(5, 60)
        items = _stacked(rng, kind, W, H)
        if not items:
            continue
        runs += 1
        c = Container(kind, Rect(0, 0, W, H))
        out = shrink_container(c, items, eps)
        kept = {i for cc in out for i in cc.contents}
        area_ok = sum(cc.area for cc in out) <= sum(it.area for it in items)
        prof_ok = sum(it.p for it in items if it.id in kept) >= (1 - 3 * eps) * sum(it.p for it in items)
        shrink_bad += not (area_ok and prof_ok)
        rc, _ = round_container(c, items, eps)
        k = math.ceil(1 / eps)
        n = len(items)
        in_sets = (in_size_set(rc.rect.w, [it.w for it in items], k, n)
                   and in_size_set(rc.rect.h, [it.h for it in items], k, n))
        round_bad += not (in_sets and rc.rect.w <= W and rc.rect.h <= H)
    return shrink_bad == round_bad == 0, (
        f"{runs} containers; shrink violations {shrink_bad}, rounding outside candidate sizes {round_bad}")


def check_9():
    rng = random.Random(9)
    done = bad = 0
    while done < 120:
        N = rng.choice([10, 20, 30, 40])
        items, pk = random_packing(rng, N, tries=rng.randint(1, 40))
        eps = rng.choice([Fraction(1, 7), Fraction(1, 10), Fraction(1, 13), Fraction(1, 20)])
        try:
            out = resource_contraction_weighted(pk, items, eps)
        except InputError:
            continue  # massive item present
        done += 1
        _keep(items, out, True)
        fits = out.region == Rect(0, 0, (1 - eps / 2) * N, N)
        ok = fits and validate_packing(items, out, True).ok and 2 * out.profit(items) >= pk.profit(items)
        bad += not ok
    return bad == 0, f"{done} non-massive packings, {bad} violations"


def check_10():
    rng = random.Random(10)
    eps = Fraction(1, 13)
    eps_small = eps ** 3
    bad = band_bad = 0
    worst = 9.0
    cases = {}
    for _ in range(100):
        N = rng.randint(2200, 3000)
        items, pk = thin_packing(rng, N, rng.randint(200, 400), rng.choice([0, 0, 20, 30]))
        tr = {}
        out = resource_contraction_cardinality(pk, items, eps, eps_small, test_mode=True, trace=tr)
        _keep(items, out, True)
        es = tr["eps_s"]
        width_ok = out.region == Rect(0, 0, (1 - eps * es) * N, N)
        valid = validate_packing(items, out, True).ok
        card_ok = len(out.placements) >= Fraction(2, 3) * (1 - 10 * es) * tr["M3"]
        bad += not (width_ok and valid and card_ok)
        band_bad += tr["M2"] - tr["M3"] > eps * tr["M2"]
        cases[tr["case"]] = cases.get(tr["case"], 0) + 1
        if tr["M3"]:
            worst = min(worst, len(out.placements) / tr["M3"])
    return bad == band_bad == 0, (
        f"100 packings (cases {dict(sorted(cases.items()))}), {bad} bound violations, "
        f"{band_bad} band losses above eps, worst kept share {worst:.3f}")


def check_11():
    data = json.loads((DATA / "micro_corpus.json").read_text())
    eps = Fraction(1, 13)
    t = time.perf_counter()
    below, ratios, stale = [], [], 0
    for rec in data["instances"]:
        inst = instance_from_dict(rec["instance"])
        rep = solve_cardinality(inst, eps)
        _keep(inst, rep.packing, False)
        opt = rec["oracle"]
        r = Fraction(rep.profit, opt) if opt else Fraction(1)
        stale += rep.profit > opt
        ratios.append(r)
        if r < Fraction(9, 16):
            below.append((rec["name"], str(r)))
    dt = time.perf_counter() - t
    detail = (f"{len(ratios)} instances, worst ratio {min(ratios)} ({float(min(ratios)):.4f}), "
              f"mean {float(sum(ratios) / len(ratios)):.4f}, below 9/16: {below or 'none'}, {dt:.1f}s")
    return not below and stale == 0, detail


def check_12():
    bad_lib = sum(1 for ok in AUDIT if not ok)
    bad_seen = sum(1 for items, pk, rot in _SEEN if not validate_packing(items, pk, rot).ok)
    ok = bad_lib == bad_seen == 0 and (AUDIT or _SEEN)
    return bool(ok), (f"{len(AUDIT)} library-emitted packings ({bad_lib} invalid), "
                      f"{len(_SEEN)} returned packings rechecked ({bad_seen} invalid)")


CHECKS = {k: globals()[f"check_{k}"] for k in range(1, 13)}


@pytest.mark.parametrize("k", list(range(1, 13)))
def test_criterion(k):
    ok, detail = _audited(CHECKS[k]) if k < 12 else CHECKS[k]()
    _record(k, ok, detail)
    assert ok, RESULTS[k]


def main() -> int:
    failed = 0
    for k in range(1, 13):
        ok, detail = _audited(CHECKS[k]) if k < 12 else CHECKS[k]()
        _record(k, ok, detail)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
