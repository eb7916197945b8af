"""Next-Fit-Decreasing-Height shelf packing."""
from __future__ import annotations

from typing import Sequence

from .core import InputError, Item, Packing, Placement, Rect, checked


def nfdh_order(items: Sequence[Item]) -> list:
    return sorted(items, key=lambda it: (-it.h, -it.w, it.id))


def nfdh_pack(items: Sequence[Item], box_w: int, box_h: int, x0: int = 0, y0: int = 0):
    """Pack items shelf by shelf, tallest first; stop at the first shelf that does not fit.

    Returns (packing, leftover) where leftover is the unpacked suffix of the
    height order. If every item is eps-small for the box, the packed area is
    at least min(total area, (1 - 2 eps) * box area).
    """
    for it in items:
        if it.w > box_w or it.h > box_h:
            raise InputError(f"item {it.id} ({it.w}x{it.h}) larger than box {box_w}x{box_h}")
    order = nfdh_order(items)
    placements = []
    x = y = shelf_h = 0
    for k, it in enumerate(order):
        if k == 0:
            shelf_h = it.h
        elif x + it.w > box_w:
            y += shelf_h
            if y + it.h > box_h:
                region = Rect(x0, y0, box_w, box_h)
                return checked(items, Packing(region, placements), False), order[k:]
            x, shelf_h = 0, it.h
        placements.append(Placement(it.id, x0 + x, y0 + y, False))
        x += it.w
    return checked(items, Packing(Rect(x0, y0, box_w, box_h), placements), False), []


def shelves(packing: Packing, items) -> list:
    """Group placements into shelves by baseline (helper for checks)."""
    by_y = {}
    for pl in packing.placements:
        by_y.setdefault(pl.y, []).append(pl)
    return [sorted(by_y[y], key=lambda pl: pl.x) for y in sorted(by_y)]
