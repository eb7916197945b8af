"""Container layouts to try, and L&C candidates built from them.

Enumerating every constant-size container layout is out of reach, so the
generator emits a structured family: single containers, two-way splits at
candidate sizes, and shelf grids whose rows (or columns) have item-side
heights (or widths).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .containers import Container, ContainerLayout, candidate_sizes, pack_into_containers
from .core import Item, Packing, Rect, ResourceError, better
from .lpack import LShape

KINDS = ("h", "v", "a")


@dataclass(frozen=True)
class LCCandidate:
    """Long items (longer side >= ell) go to the boundary L, the rest to the containers."""
    ell: int
    l_shape: LShape
    layout: ContainerLayout

    def split(self, items: Sequence[Item]):
        if self.l_shape.h_L == 0 and self.l_shape.w_L == 0:
            return [], list(items)
        long_ = [it for it in items if max(it.w, it.h) >= self.ell]
        ids = {it.id for it in long_}
        return long_, [it for it in items if it.id not in ids]


def _spread(values: Sequence, limit: int) -> list:
    """At most `limit` values spread evenly over the sorted input."""
    values = sorted(set(values))
    if len(values) <= limit:
        return values
    step = Fraction(len(values) - 1, limit - 1)
    return sorted({values[int(k * step)] for k in range(limit)})


def generate_layouts(items: Sequence[Item], region: Rect, k_max: int = 3, limit: int = 12,
                     rotations: bool = False) -> Iterator[ContainerLayout]:
    """Deterministic container layouts inside `region` (duplicates skipped)."""
    x0, y0, W, H = region.x, region.y, region.w, region.h
    seen = set()

    def emit(cs):
        cs = [c for c in cs if c.rect.w > 0 and c.rect.h > 0]
        key = tuple(sorted((c.kind, c.rect.x, c.rect.y, c.rect.w, c.rect.h) for c in cs))
        if not cs or key in seen:
            return None
        seen.add(key)
        return ContainerLayout(region, cs)

    if W <= 0 or H <= 0 or not items:
        return
    for k in KINDS:
        lay = emit([Container(k, region)])
        if lay:
            yield lay
    sides_w = [it.w for it in items] + ([it.h for it in items] if rotations else [])
    sides_h = [it.h for it in items] + ([it.w for it in items] if rotations else [])
    try:
        ws, hs = candidate_sizes(items, 1, cap=200_000, rotations=rotations)
    except ResourceError:
        ws, hs = sides_w, sides_h
    # two-way splits
    for h in _spread([v for v in hs if 0 < v < H], limit):
        for a in KINDS:
            for b in KINDS:
                lay = emit([Container(a, Rect(x0, y0, W, h)), Container(b, Rect(x0, y0 + h, W, H - h))])
                if lay:
                    yield lay
    for w in _spread([v for v in ws if 0 < v < W], limit):
        for a in KINDS:
            for b in KINDS:
                lay = emit([Container(a, Rect(x0, y0, w, H)), Container(b, Rect(x0 + w, y0, W - w, H))])
                if lay:
                    yield lay
    # shelf grids: rows of side-by-side items, then the leftover on top
    row_h = _spread([v for v in sides_h if v <= H], limit)
    for t in range(2, k_max + 1):
        for combo in combinations_with_replacement(row_h, t):
            if sum(combo) > H:
                continue
            cs, y = [], y0
            for h in sorted(combo, reverse=True):
                cs.append(Container("v", Rect(x0, y, W, h)))
                y += h
            rest = y0 + H - y
            for top in ("a", "h", None):
                extra = [Container(top, Rect(x0, y, W, rest))] if top and rest > 0 else []
                lay = emit(cs + extra)
                if lay:
                    yield lay
    col_w = _spread([v for v in sides_w if v <= W], limit)
    for t in range(2, k_max + 1):
        for combo in combinations_with_replacement(col_w, t):
            if sum(combo) > W:
                continue
            cs, x = [], x0
            for w in sorted(combo, reverse=True):
                cs.append(Container("h", Rect(x, y0, w, H)))
                x += w
            rest = x0 + W - x
            for side in ("a", "v", None):
                extra = [Container(side, Rect(x, y0, rest, H))] if side and rest > 0 else []
                lay = emit(cs + extra)
                if lay:
                    yield lay


def best_container_packing(items: Sequence[Item], region: Rect, eps, rotations: bool = False,
                           k_max: int = 3, limit: int = 12, method: str = "auto",
                           outer: Rect | None = None):
    """Best packing over generated layouts; returns (profit, Packing, layout or None)."""
    outer = outer or region
    best, best_pk, best_lay = 0, Packing(outer, ()), None
    items = list(items)
    for lay in generate_layouts(items, region, k_max, limit, rotations):
        prof, pk = pack_into_containers(items, lay, eps, rotations, method)
        pk = pk.with_region(outer)
        if better(best, best_pk, prof, pk):
            best, best_pk, best_lay = prof, pk, lay
    return best, best_pk, best_lay
