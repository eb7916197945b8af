"""Top-level solvers: the best of several structured candidate packings.

Every candidate is an explicit packing that passes validation before it is
compared; the report keeps the per-candidate profits so runs can be audited.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .contraction import (massive_item_split, random_strip_delete, resource_contraction_cardinality,
                          resource_contraction_weighted)
from .core import Instance, Item, Packing, ParameterError, Placement, Rect, better, checked
from .layouts import LCCandidate, best_container_packing, generate_layouts
from .longring import ring_shift, ring_to_boundary_l
from .lpack import LInstance, LShape, full_grid, lpack_exact_dp, lpack_ptas, normalize_l_packing
from .oracles import brute_force_oracle, grid_ilp_oracle
from .placement import _prune, _split, heuristic_pack
from .shelf import nfdh_pack
from .steinberg import steinberg_condition, steinberg_pack

__all__ = ["SolveReport", "solve_cardinality", "solve_weighted", "solve_rotations",
           "brute_force_oracle", "grid_ilp_oracle", "LCCandidate", "generate_layouts",
           "best_container_packing", "resource_contraction_weighted",
           "resource_contraction_cardinality", "massive_item_split", "random_strip_delete",
           "fill_free_cells"]

EXACT_L_GRID = 64  # below this N the L-packing DP runs on every coordinate
MAX_LONG_ENUM = 12  # long items up to this count: L subsets are enumerated outright


@dataclass(frozen=True)
class SolveReport:
    packing: Packing
    profit: int
    candidates: dict = field(default_factory=dict)  # name -> profit
    best_candidate: str = "none"
    oracle_profit: int | None = None
    ratio: Fraction | None = None


class _Best:
    def __init__(self, instance: Instance):
        self.inst = instance
        N = instance.N
        self.profit, self.packing, self.name = 0, Packing(Rect(0, 0, N, N), ()), "none"
        self.table = {}

    def offer(self, name: str, packing: Packing | None):
        if packing is None:
            return
        pk = checked(self.inst, packing.canonical(), self.inst.rotations)
        prof = pk.profit(self.inst)
        self.table[name] = max(prof, self.table.get(name, 0))
        if better(self.profit, self.packing, prof, pk):
            self.profit, self.packing, self.name = prof, pk, name

    def report(self, oracle: bool, oracle_cap: int = 8) -> SolveReport:
        op = ratio = None
        if oracle:
            op, _ = brute_force_oracle(self.inst, cap=oracle_cap)
            ratio = Fraction(self.profit, op) if op else Fraction(1)
        return SolveReport(self.packing, self.profit, dict(self.table), self.name, op, ratio)


def _check_eps(eps, hi=Fraction(1, 13)) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps <= hi:
        raise ParameterError(f"eps must lie in (0, {hi}]")
    return eps


def _single(inst: Instance):
    if not inst.items:
        return None
    it = max(inst.items, key=lambda it: (it.p, -it.id))
    return Packing(Rect(0, 0, inst.N, inst.N), [Placement(it.id, 0, 0)])


def _is_long(it: Item, N: int) -> bool:
    return 2 * max(it.w, it.h) > N


# --- free-cell filling ---------------------------------------------------------------

def _free_cells(region: Rect, rects) -> list:
    free = [(region.x, region.y, region.w, region.h)]
    for r in rects:
        nxt = []
        for f in free:
            nxt.extend(_split(f, (r.x, r.y, r.w, r.h)))
        free = _prune(nxt)
    return sorted(free, key=lambda f: (-f[2] * f[3], f[1], f[0]))


def fill_free_cells(packing: Packing, items, pool: Sequence[Item], rotations: bool = False) -> Packing:
    """Add items from `pool` into empty maximal rectangles with NFDH.

    Works cell by cell, largest first; cells are recomputed after each use
    since maximal free rectangles overlap one another.
    """
    from .core import _item_map
    m = dict(_item_map(items))
    placed = set(packing.ids)
    rest = sorted((it for it in pool if it.id not in placed), key=lambda it: (it.area, it.id))
    pls = list(packing.placements)
    region = packing.region
    if any(not isinstance(v, int) for v in (region.x, region.y, region.w, region.h)):
        return packing
    progress = True
    while rest and progress:
        progress = False
        rects = [pl.rect(m[pl.item_id]) for pl in pls]
        for fx, fy, fw, fh in _free_cells(region, rects):
            cand = []
            for it in rest:
                if it.w <= fw and it.h <= fh:
                    cand.append((it, False))
                elif rotations and it.h <= fw and it.w <= fh:
                    cand.append((it.rotated(), True))
            if not cand:
                continue
            pk, _ = nfdh_pack([c for c, _ in cand], fw, fh, fx, fy)
            if not pk.placements:
                continue
            flag = {c.id: r for c, r in cand}
            pls.extend(Placement(p.item_id, p.x, p.y, flag[p.item_id]) for p in pk.placements)
            got = set(pk.ids)
            rest = [it for it in rest if it.id not in got]
            progress = True
            break
    return Packing(region, pls)


# --- L-packing candidates ------------------------------------------------------------

def _best_l(li: LInstance, eps):
    """Best L-packing for an L instance: exact DP on small grids, otherwise the PTAS."""
    if li.n == 0:
        return 0, Packing(Rect(0, 0, li.N, li.N), ())
    if li.N <= EXACT_L_GRID:
        g = full_grid(li.N)
        return lpack_exact_dp(li, g, g)
    return lpack_ptas(li, max(eps, Fraction(1, 4)))


def _short_fill(short: Sequence[Item], W: int, H: int, x0: int, y0: int):
    """Steinberg-condition area prefix of the short items, then greedy additions."""
    if W <= 0 or H <= 0:
        return []
    order = sorted((it for it in short if it.w <= W and it.h <= H), key=lambda it: (it.area, it.id))
    chosen = []
    for it in order:
        if steinberg_condition(chosen + [it], W, H):
            chosen.append(it)
        else:
            break
    pls = list(steinberg_pack(chosen, W, H, x0, y0).placements) if chosen else []
    ids = {it.id for it in chosen}
    for it in order:
        if it.id in ids:
            continue
        trial = heuristic_pack(chosen + [it], W, H, x0, y0)
        if trial is not None:
            chosen.append(it)
            ids.add(it.id)
            pls = trial
    return pls


def _l_plus_box(inst: Instance, l_pk: Packing, short: Sequence[Item], h_L: int, w_L: int) -> Packing:
    N = inst.N
    extra = _short_fill(short, N - w_L, N - h_L, w_L, h_L)
    return Packing(Rect(0, 0, N, N), list(l_pk.placements) + extra)


def _long_l_subsets(inst: Instance):
    """(hor subset, ver subset, tight L) for every pair that fits its own L, best per L."""
    N = inst.N
    li = LInstance.from_instance(Instance(N, [it for it in inst.items if _is_long(it, N)]), N, N)
    hor, ver = list(li.hor), list(li.ver)
    best = {}
    for a in range(len(hor) + 1):
        for hs in combinations(hor, a):
            hL = sum(it.h for it in hs)
            if hL > N:
                continue
            for b in range(len(ver) + 1):
                for vs in combinations(ver, b):
                    wL = sum(it.w for it in vs)
                    if wL > N:
                        continue
                    prof = sum(it.p for it in hs) + sum(it.p for it in vs)
                    key = (hL, wL)
                    if key in best and best[key][0] >= prof:
                        continue
                    pk = normalize_l_packing(hs, vs, LShape(N, hL, wL))
                    if pk is not None:
                        best[key] = (prof, pk)
    return best


def _spread_sums(values: Sequence[int], N: int, limit: int) -> list:
    sums = {0}
    for v in values:
        sums |= {s + v for s in sums if s + v <= N}
    sums = sorted(sums)
    if len(sums) <= limit:
        return sums
    step = (len(sums) - 1) / (limit - 1)
    return sorted({sums[round(k * step)] for k in range(limit)})


def _l_and_short_candidates(inst: Instance, eps, best: _Best, tag: str):
    N = inst.N
    long_ = [it for it in inst.items if _is_long(it, N)]
    short = [it for it in inst.items if not _is_long(it, N)]
    if len(long_) <= MAX_LONG_ENUM:
        for (hL, wL), (_, lpk) in sorted(_long_l_subsets(inst).items()):
            best.offer(tag, _l_plus_box(inst, lpk, short, hL, wL))
        return
    li = LInstance.from_instance(Instance(N, long_), N, N)
    for hL in _spread_sums([it.h for it in li.hor], N, 8):
        for wL in _spread_sums([it.w for it in li.ver], N, 8):
            sub = LInstance(LShape(N, hL, wL), li.hor, li.ver)
            _, lpk = _best_l(sub, eps)
            best.offer(tag, _l_plus_box(inst, lpk, short, hL, wL))


# --- containers in reduced knapsacks --------------------------------------------------

def _container_candidates(inst: Instance, eps, best: _Best, k_max: int, limit: int,
                          rotations: bool = False, full: bool = True):
    N = inst.N
    red = math.floor(N / (1 + eps))
    outer = Rect(0, 0, N, N)
    items = list(inst.items)
    regions = [("containers-wide", Rect(0, 0, N, red)), ("containers-tall", Rect(0, 0, red, N))]
    if full:
        regions.append(("containers-full", outer))
    for name, region in regions:
        _, pk, _ = best_container_packing(items, region, eps, rotations, k_max, limit, outer=outer)
        best.offer(name, pk)


def solve_cardinality(instance: Instance, eps=Fraction(1, 13), oracle: bool = False,
                      k_max: int = 3, limit: int = 12) -> SolveReport:
    """Best of L-packings of long items, container packings and L-plus-box packings."""
    eps = _check_eps(eps)
    inst = instance
    best = _Best(inst)
    best.offer("single", _single(inst))
    if not inst.items:
        return best.report(oracle)
    N = inst.N
    long_ = [it for it in inst.items if _is_long(it, N)]
    # (a) all long items into the full L
    if long_:
        li = LInstance.from_instance(Instance(N, long_), N, N)
        _, lpk = _best_l(li, eps)
        best.offer("long-L", lpk)
        # ring argument on the L-packing: three stacks in a tight L, box filled with short items
        if lpk.placements:
            ring = ring_shift(lpk, li.items)
            rpk, _ = ring_to_boundary_l(ring)
            kept = set(rpk.ids)
            hL = sum(it.h for it in li.hor if it.id in kept)
            wL = sum(it.w for it in li.ver if it.id in kept)
            short = [it for it in inst.items if not _is_long(it, N)]
            best.offer("ring-L+box", _l_plus_box(inst, rpk, short, hL, wL))
    # (b), (c) containers in the reduced knapsacks
    _container_candidates(inst, eps, best, k_max, limit)
    # (d) tight Ls of long subsets, complementary box for the short items
    _l_and_short_candidates(inst, eps, best, "L+box")
    return best.report(oracle)


# --- weighted -----------------------------------------------------------------------

def _ell_values(inst: Instance) -> list:
    N = inst.N
    sides = sorted({s for it in inst.items for s in (it.w, it.h) if 2 * s > N})
    return sides + [N + 1]  # last one: nothing is long, the L is empty


def solve_weighted(instance: Instance, eps=Fraction(1, 13), oracle: bool = False, k_max: int = 3,
                   limit: int = 12, l_width: int | None = None) -> SolveReport:
    """L&C candidates over the long-item threshold, plus the cardinality families.

    For each threshold ell, items whose longer side is >= ell go into a
    boundary L of arm width `l_width` (default floor(eps^2 N)) and the others
    into containers in the remaining square; leftovers are then packed into
    free cells with NFDH.
    """
    eps = _check_eps(eps)
    inst = instance
    best = _Best(inst)
    best.offer("single", _single(inst))
    if not inst.items:
        return best.report(oracle)
    N = inst.N
    lw = math.floor(eps * eps * N) if l_width is None else l_width
    outer = Rect(0, 0, N, N)
    items = list(inst.items)
    for ell in _ell_values(inst):
        long_ = [it for it in items if max(it.w, it.h) >= ell]
        short = [it for it in items if max(it.w, it.h) < ell]
        if long_ and lw > 0:
            li = LInstance.from_instance(Instance(N, long_), lw, lw)
            _, lpk = _best_l(li, eps)
            region = Rect(lw, lw, N - lw, N - lw)
        else:
            lpk, region = Packing(outer, ()), outer
        _, cpk, lay = best_container_packing(short, region, eps, False, k_max, limit, outer=outer)
        pk = lpk.merged(cpk, outer)
        pk = fill_free_cells(pk, inst, items)
        best.offer(f"L&C ell={ell}", pk)
    # the cardinality families are valid for any profits
    card = solve_cardinality(inst, eps, False, k_max, limit)
    best.offer(f"card:{card.best_candidate}", card.packing)
    best.offer("card+fill", fill_free_cells(card.packing, inst, items))
    return best.report(oracle)


# --- rotations ----------------------------------------------------------------------

def _massive_candidates(inst: Instance, eps, best: _Best, k_max: int, limit: int):
    N = inst.N
    outer = Rect(0, 0, N, N)
    for it in inst.items:
        for rot in (False, True):
            if rot and it.w == it.h:
                continue
            w, h = (it.h, it.w) if rot else (it.w, it.h)
            if w < (1 - eps) * N or h < (1 - eps) * N:
                continue
            rest = [o for o in inst.items if o.id != it.id]
            pls = [Placement(it.id, 0, N - h, rot)]
            # one region below the massive item, one to its right
            for region in (Rect(0, 0, N, N - h), Rect(w, N - h, N - w, h)):
                used = {pl.item_id for pl in pls}
                left = [o for o in rest if o.id not in used]
                _, rpk, _ = best_container_packing(left, region, eps, True, k_max, limit, outer=outer)
                pls.extend(rpk.placements)
            pk = Packing(outer, pls)
            best.offer("massive", fill_free_cells(pk, inst, inst.items, True))


def solve_rotations(instance: Instance, eps=Fraction(1, 13), oracle: bool = False, k_max: int = 3,
                    limit: int = 12) -> SolveReport:
    """Rotation-aware containers, a thin-item strip next to containers, and massive-item layouts."""
    eps = _check_eps(eps)
    inst = instance
    if not inst.rotations:
        raise ParameterError("solve_rotations needs an instance with rotations enabled")
    best = _Best(inst)
    best.offer("single", _single(inst))
    if not inst.items:
        return best.report(oracle)
    N = inst.N
    outer = Rect(0, 0, N, N)
    items = list(inst.items)
    _, pk, _ = best_container_packing(items, outer, eps, True, k_max, limit)
    best.offer("containers", pk)
    best.offer("containers+fill", fill_free_cells(pk, inst, items, True))
    # thin items stand upright in a strip on the right, containers take the rest
    # the strip is eps^(1/(2 eps) + 1) N / 2 wide in theory; below one unit at desk scale
    e = float(eps)
    strip = max(1, math.floor(e ** (1 / (2 * e) + 1) * N / 2))
    thin = [it for it in items if min(it.w, it.h) <= strip]
    if thin and strip < N:
        upright = [it if it.w <= it.h else it.rotated() for it in thin]
        spk, _ = nfdh_pack(upright, strip, N, N - strip, 0)
        flags = {it.id: it.w > it.h for it in thin}
        spls = [Placement(p.item_id, p.x, p.y, flags[p.item_id]) for p in spk.placements]
        used = {p.item_id for p in spls}
        rest = [it for it in items if it.id not in used]
        _, cpk, _ = best_container_packing(rest, Rect(0, 0, N - strip, N), eps, True, k_max, limit,
                                           outer=outer)
        best.offer("thin-strip", Packing(outer, spls + list(cpk.placements)))
    _massive_candidates(inst, eps, best, k_max, limit)
    return best.report(oracle)
