"""Long items: push them into four boundary stacks, then trade one stack for an L.

Every horizontal item (w > N/2) crosses the line x = N/2 and every vertical
item (h > N/2) crosses y = N/2, so each family is totally ordered across the
knapsack. Horizontals below the middle collapse onto the bottom side, the
others onto the top side; verticals go left or right the same way.
"""
from __future__ import annotations

from dataclasses import dataclass
from .core import (InputError, Item, Packing, Placement, Rect, _item_map, checked,
                   validate_packing)
from .lpack import LShape, normalize_l_packing

STACKS = ("top", "right", "bottom", "left")  # also the removal tie-break order


@dataclass(frozen=True)
class RingPacking:
    N: int
    left: tuple
    right: tuple
    top: tuple
    bottom: tuple
    items: tuple  # Items of all placements
    sorted_stacks: bool = True

    def stack(self, name: str) -> tuple:
        return getattr(self, name)

    @property
    def placements(self) -> tuple:
        return self.bottom + self.top + self.left + self.right

    def packing(self) -> Packing:
        return Packing(Rect(0, 0, self.N, self.N), self.placements)

    def stack_profit(self, name: str) -> int:
        m = _item_map(self.items)
        return sum(m[pl.item_id].p for pl in self.stack(name))

    @property
    def profit(self) -> int:
        return sum(it.p for it in self.items)


def _is_horizontal(it: Item, N: int) -> bool:
    wide, tall = 2 * it.w > N, 2 * it.h > N
    return wide and (not tall or it.w >= it.h)


def ring_shift(packing: Packing, items, sort_stacks: bool = True) -> RingPacking:
    """Push every long item onto its nearest side, keeping the relative order."""
    m = _item_map(items)
    N = packing.region.w
    if packing.region != Rect(0, 0, N, N):
        raise InputError("ring_shift expects a packing of the full N x N knapsack")
    for pl in packing.placements:
        if pl.rotated:
            raise InputError("ring_shift works on unrotated placements")
        it = m[pl.item_id]
        if 2 * it.w <= N and 2 * it.h <= N:
            raise InputError(f"item {it.id} is not long (both sides <= N/2)")
    rep = validate_packing(m, packing)
    if not rep.ok:
        raise InputError(f"input packing invalid: {rep.violations[0]}")
    hor = sorted(((pl.y, m[pl.item_id], pl.x) for pl in packing.placements
                  if _is_horizontal(m[pl.item_id], N)), key=lambda t: (t[0], t[1].id))
    ver = sorted(((pl.x, m[pl.item_id], pl.y) for pl in packing.placements
                  if not _is_horizontal(m[pl.item_id], N)), key=lambda t: (t[0], t[1].id))
    low_h = [t for t in hor if 2 * t[0] + t[1].h <= N]
    high_h = [t for t in hor if 2 * t[0] + t[1].h > N]
    low_v = [t for t in ver if 2 * t[0] + t[1].w <= N]
    high_v = [t for t in ver if 2 * t[0] + t[1].w > N]

    def build(order_b, order_t, order_l, order_r):
        bottom, top, left, right = [], [], [], []
        acc = 0
        for _, it, x in order_b:
            bottom.append(Placement(it.id, x, acc))
            acc += it.h
        acc = N
        for _, it, x in order_t:
            acc -= it.h
            top.append(Placement(it.id, x, acc))
        acc = 0
        for _, it, y in order_l:
            left.append(Placement(it.id, acc, y))
            acc += it.w
        acc = N
        for _, it, y in order_r:
            acc -= it.w
            right.append(Placement(it.id, acc, y))
        return bottom, top, left, right

    plain = build(low_h, high_h[::-1], low_v, high_v[::-1])
    used = [m[pl.item_id] for pl in packing.placements]
    if sort_stacks:
        srt = build(sorted(low_h, key=lambda t: (-t[1].w, t[1].id)),
                    sorted(high_h, key=lambda t: (-t[1].w, t[1].id)),
                    sorted(low_v, key=lambda t: (-t[1].h, t[1].id)),
                    sorted(high_v, key=lambda t: (-t[1].h, t[1].id)))
        pk = Packing(Rect(0, 0, N, N), [p for s in srt for p in s])
        if validate_packing(m, pk).ok:
            b, t, l, r = srt
            checked(m, pk)
            return RingPacking(N, tuple(l), tuple(r), tuple(t), tuple(b), tuple(used), True)
    b, t, l, r = plain
    checked(m, Packing(Rect(0, 0, N, N), [p for s in plain for p in s]))
    return RingPacking(N, tuple(l), tuple(r), tuple(t), tuple(b), tuple(used), False)


# --- stack removal and repacking into an L -----------------------------------

def _transform(rect: Rect, N: int, mode: str) -> Rect:
    """Map a rect so that the removed stack becomes the top one."""
    if mode == "top":
        return rect
    if mode == "bottom":
        return Rect(rect.x, N - rect.y2, rect.w, rect.h)
    if mode == "right":
        return Rect(rect.y, rect.x, rect.h, rect.w)
    # left: transpose, then flip vertically
    t = Rect(rect.y, rect.x, rect.h, rect.w)
    return Rect(t.x, N - t.y2, t.w, t.h)


def lonely_item_repack(rects: dict, hor: set, N: int) -> dict:
    """Turn a packing of bottom/left/right stacks into an L-packing.

    Repeatedly cut off a lonely item: the lowest horizontal when everything
    else lies above it, the leftmost vertical when everything else lies to
    its right, or the rightmost vertical when everything else lies to its
    left (that one is moved to the far left after sliding the rest right).
    Returns the final rects; raises AssertionError if no cut exists.
    """
    active = dict(rects)
    done = {}
    x0 = y0 = 0
    while active:
        hs = [i for i in active if i in hor]
        vs = [i for i in active if i not in hor]
        if hs:
            j = min(hs, key=lambda i: (active[i].y, i))
            rj = active[j]
            if all(active[i].y >= rj.y2 for i in active if i != j):
                # nothing else below it in the open region, so slide it down
                done[j] = Rect(rj.x, y0, rj.w, rj.h)
                del active[j]
                y0 += rj.h
                continue
        if vs:
            j = min(vs, key=lambda i: (active[i].x, i))
            rj = active[j]
            if all(active[i].x >= rj.x2 for i in active if i != j):
                done[j] = Rect(x0, rj.y, rj.w, rj.h)
                del active[j]
                x0 += rj.w
                continue
            j = max(vs, key=lambda i: (active[i].x2, -i))
            rj = active[j]
            if all(active[i].x2 <= rj.x for i in active if i != j):
                shift = rj.w
                for i in list(active):
                    if i != j:
                        r = active[i]
                        active[i] = Rect(r.x + shift, r.y, r.w, r.h)
                active[j] = Rect(x0, rj.y, rj.w, rj.h)
                continue
        raise AssertionError("no lonely item cut found")
    return done


def ring_to_boundary_l(ring: RingPacking):
    """Drop the cheapest stack and repack the other three into a boundary L.

    Returns (packing, kept profit). The L has bottom arm height equal to the
    total height of the kept horizontals and left arm width equal to the
    total width of the kept verticals; the packing is in normal form.
    """
    N = ring.N
    m = _item_map(ring.items)
    profits = {s: ring.stack_profit(s) for s in STACKS}
    removed = min(STACKS, key=lambda s: (profits[s], STACKS.index(s)))
    kept = [pl for s in STACKS if s != removed for pl in ring.stack(s)]
    hor_ids = {pl.item_id for pl in kept if _is_horizontal(m[pl.item_id], N)}
    # certificate: the inductive repacking in coordinates where the removed stack is on top
    rects = {pl.item_id: _transform(pl.rect(m[pl.item_id]), N, removed) for pl in kept}
    transposed = removed in ("right", "left")
    thor = {i for i in rects if (i in hor_ids) != transposed}
    final = lonely_item_repack(rects, thor, N)
    hL = sum(final[i].h for i in thor)
    wL = sum(final[i].w for i in final if i not in thor)
    for i, r in final.items():
        inside = (r.y2 <= hL) if i in thor else (r.x2 <= wL)
        assert inside and Rect(0, 0, N, N).contains(r), "lonely-item repacking left the L"
    kh = [m[i] for i in hor_ids]
    kv = [m[pl.item_id] for pl in kept if pl.item_id not in hor_ids]
    shape = LShape(N, sum(it.h for it in kh), sum(it.w for it in kv))
    pk = normalize_l_packing(kh, kv, shape)
    if pk is None:
        raise AssertionError("normal form rejected a set the repacking certified")
    pk = checked(m, pk)
    return pk, sum(it.p for it in kh) + sum(it.p for it in kv)


def boundary_l_shape(packing: Packing, items) -> LShape:
    """The tight L of an L-packing in normal form."""
    m = _item_map(items)
    N = packing.region.w
    hs = [m[pl.item_id] for pl in packing.placements if _is_horizontal(m[pl.item_id], N)]
    vs = [m[pl.item_id] for pl in packing.placements if not _is_horizontal(m[pl.item_id], N)]
    return LShape(N, sum(it.h for it in hs), sum(it.w for it in vs))
