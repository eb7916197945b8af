"""Rectangle placement in a box: greedy heuristics and an exact search.

The exact search fills the lowest-leftmost empty grid cell with either the
corner of some item or a permanent hole, which enumerates every integral
packing up to symmetry of identical items.
"""
from __future__ import annotations

import math
from functools import reduce
from typing import Sequence

from . import kernels
from .core import Item, Placement, ResourceError


def _opts(it: Item, rotations: bool) -> list:
    o = [(it.w, it.h)]
    if rotations and it.w != it.h:
        o.append((it.h, it.w))
    return o


def _quick_infeasible(items: Sequence[Item], W: int, H: int, rotations: bool) -> bool:
    if sum(it.area for it in items) > W * H:
        return True
    opts = [[o for o in _opts(it, rotations) if o[0] <= W and o[1] <= H] for it in items]
    if any(not o for o in opts):
        return True
    # two items that can sit neither side by side nor on top of each other
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if all(wa + wb > W and ha + hb > H for wa, ha in opts[a] for wb, hb in opts[b]):
                return True
    return False


def exact_pack(items: Sequence[Item], W: int, H: int, rotations: bool = False,
               x0: int = 0, y0: int = 0, budget: int = 2_000_000):
    """Placements packing every item into the W x H box, or None if impossible.

    Raises ResourceError when the node budget runs out before a decision.
    """
    items = list(items)
    if not items:
        return []
    if W <= 0 or H <= 0 or _quick_infeasible(items, W, H, rotations):
        return None
    # positions can be normalised to sums of item sides, so a common divisor
    # of all sides shrinks the grid without losing packings
    g = reduce(math.gcd, [it.w for it in items] + [it.h for it in items])
    Wg, Hg = W // g, H // g
    order = sorted(items, key=lambda it: (-it.area, -max(it.w, it.h), it.w, it.h, it.id))

    def key(it):
        return frozenset({(it.w, it.h), (it.h, it.w)}) if rotations else (it.w, it.h)

    opts, same = [], []
    for k, it in enumerate(order):
        opts.append([(a // g, b // g) for a, b in _opts(it, rotations) if a <= W and b <= H])
        same.append(int(k > 0 and key(it) == key(order[k - 1])))
    status, pos, nodes = kernels.place_search(Wg, Hg, opts, same, budget)
    if status < 0:
        raise ResourceError(f"placement search exceeded {budget} nodes", nodes, budget)
    if status == 0:
        return None
    out = []
    for it, o, (x, y, oi) in zip(order, opts, pos):
        w, h = o[oi]
        rotated = rotations and (w * g, h * g) != (it.w, it.h)
        out.append(Placement(it.id, x0 + x * g, y0 + y * g, rotated))
    return out


# --- heuristics ---------------------------------------------------------------

def _maxrects(order: Sequence[Item], W: int, H: int, rule: str):
    free = [(0, 0, W, H)]
    out = []
    for it in order:
        best = None
        for (fx, fy, fw, fh) in free:
            if it.w <= fw and it.h <= fh:
                if rule == "bssf":
                    key = (min(fw - it.w, fh - it.h), max(fw - it.w, fh - it.h), fy, fx)
                else:
                    key = (fy + it.h, fx)
                if best is None or key < best[0]:
                    best = (key, fx, fy)
        if best is None:
            return None
        _, x, y = best
        out.append(Placement(it.id, x, y))
        pr = (x, y, it.w, it.h)
        nxt = []
        for f in free:
            nxt.extend(_split(f, pr))
        free = _prune(nxt)
    return out


def _split(f, r):
    fx, fy, fw, fh = f
    x, y, w, h = r
    if x >= fx + fw or x + w <= fx or y >= fy + fh or y + h <= fy:
        return [f]
    out = []
    if x > fx:
        out.append((fx, fy, x - fx, fh))
    if x + w < fx + fw:
        out.append((x + w, fy, fx + fw - x - w, fh))
    if y > fy:
        out.append((fx, fy, fw, y - fy))
    if y + h < fy + fh:
        out.append((fx, y + h, fw, fy + fh - y - h))
    return out


def _prune(free):
    free = list(set(free))
    keep = []
    for a in free:
        contained = False
        for b in free:
            if a != b and b[0] <= a[0] and b[1] <= a[1] and a[0] + a[2] <= b[0] + b[2] \
                    and a[1] + a[3] <= b[1] + b[3]:
                contained = True
                break
        if not contained:
            keep.append(a)
    return keep


ORDERS = {
    "area": lambda it: (-it.area, -max(it.w, it.h), it.id),
    "height": lambda it: (-it.h, -it.w, it.id),
    "width": lambda it: (-it.w, -it.h, it.id),
    "maxside": lambda it: (-max(it.w, it.h), -it.area, it.id),
    "perimeter": lambda it: (-(it.w + it.h), -it.area, it.id),
}


def heuristic_pack(items: Sequence[Item], W: int, H: int, x0: int = 0, y0: int = 0):
    """Try several maxrects orderings and rules; first full packing wins."""
    items = list(items)
    if not items:
        return []
    if any(it.w > W or it.h > H for it in items) or sum(it.area for it in items) > W * H:
        return None
    for rule in ("bl", "bssf"):
        for name in ORDERS:
            res = _maxrects(sorted(items, key=ORDERS[name]), W, H, rule)
            if res is not None:
                return [Placement(p.item_id, p.x + x0, p.y + y0) for p in res]
    return None


def pack_box(items: Sequence[Item], W: int, H: int, x0: int = 0, y0: int = 0,
             budget: int = 2_000_000):
    """Heuristics first, exact search as backstop (no rotations)."""
    res = heuristic_pack(items, W, H, x0, y0)
    if res is not None:
        return res
    return exact_pack(items, W, H, False, x0, y0, budget)
