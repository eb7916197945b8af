"""Containers: boxes packed by a fixed discipline, and packing items into them.

A horizontal container stacks its items one above the other, a vertical one
puts them side by side, and an area container takes only items that are small
in both directions and packs them with NFDH. Packing into a fixed layout is a
generalized assignment problem with one bin per container.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .core import (InputError, Item, Packing, ParameterError, Placement, Rect, ResourceError,
                   checked)
from .gap import INF, GapInstance, gap_dp, gap_ptas
from .shelf import nfdh_pack

KINDS = {"h": "h", "v": "v", "a": "a", "horizontal": "h", "vertical": "v", "area": "a"}


@dataclass(frozen=True)
class Container:
    kind: str
    rect: Rect
    contents: tuple = field(default=(), compare=False)  # item ids, when known

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown container kind {self.kind!r}")
        object.__setattr__(self, "kind", KINDS[self.kind])
        if self.rect.w < 0 or self.rect.h < 0:
            raise InputError("container with negative side")

    @property
    def area(self):
        return self.rect.area

    def capacity(self, eps=0):
        if self.kind == "h":
            return self.rect.h
        if self.kind == "v":
            return self.rect.w
        return math.floor((1 - 2 * Fraction(eps)) * self.rect.area)

    def size_of(self, w, h, eps=0):
        """Load the item adds to this container, or inf if it cannot enter."""
        W, H = self.rect.w, self.rect.h
        if w > W or h > H:
            return INF
        if self.kind == "h":
            return h
        if self.kind == "v":
            return w
        eps = Fraction(eps)
        if w > eps * W or h > eps * H:
            return INF
        return w * h

    def to_dict(self) -> dict:
        r = self.rect
        return {"kind": self.kind, "x": r.x, "y": r.y, "w": r.w, "h": r.h}


@dataclass(frozen=True)
class ContainerLayout:
    region: Rect
    containers: tuple

    def __post_init__(self):
        object.__setattr__(self, "containers", tuple(self.containers))
        cs = self.containers
        for c in cs:
            if not self.region.contains(c.rect):
                raise InputError(f"container {c.rect} outside region {self.region}")
        for a in range(len(cs)):
            for b in range(a + 1, len(cs)):
                if cs[a].rect.overlaps(cs[b].rect):
                    raise InputError(f"containers {a} and {b} overlap")

    def __len__(self):
        return len(self.containers)

    @classmethod
    def from_list(cls, data, region: Rect) -> "ContainerLayout":
        try:
            cs = [Container(d["kind"], Rect(int(d["x"]), int(d["y"]), int(d["w"]), int(d["h"])))
                  for d in data]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"bad layout entry: {e}") from None
        return cls(region, cs)

    def to_list(self) -> list:
        return [c.to_dict() for c in self.containers]


# --- candidate container sizes --------------------------------------------------

def size_set(values, k: int, n: int, cap: int = 2_000_000) -> tuple:
    """{p_1 + ... + p_l + i p_(l+1) : p in values, l <= k, 0 <= i <= n}, sorted."""
    if k < 0:
        raise ParameterError("k must be >= 0")
    P = sorted(set(values))
    if not P:
        return (0,)
    est = math.comb(len(P) + k, k) * len(P) * (n + 1)
    if est > cap:
        raise ResourceError(f"size set would need about {est} terms", est, cap)
    sums = set()
    for l in range(k + 1):
        for combo in combinations_with_replacement(P, l):
            sums.add(sum(combo))
    out = set()
    for s in sums:
        for p in P:
            for i in range(n + 1):
                out.add(s + i * p)
    return tuple(sorted(out))


def in_size_set(v: int, values, k: int, n: int) -> bool:
    """Membership in size_set(values, k, n) without building the set."""
    P = sorted(set(values))
    if not P:
        return v == 0
    # fewest values summing to each total up to v
    INF = k + 1
    few = [0] + [INF] * v
    for t in range(1, v + 1):
        few[t] = min((few[t - p] + 1 for p in P if p <= t), default=INF)
    return any(few[v - i * p] <= k for p in P for i in range(n + 1) if i * p <= v)


def candidate_sizes(items: Sequence[Item], k: int, n: int | None = None,
                    cap: int = 2_000_000, rotations: bool = False):
    """(WIDTHS^(k), HEIGHTS^(k)); with rotations both come from all side lengths."""
    items = list(items)
    n = len(items) if n is None else n
    ws = [it.w for it in items]
    hs = [it.h for it in items]
    if rotations:
        both = size_set(ws + hs, k, n, cap)
        return both, both
    return size_set(ws, k, n, cap), size_set(hs, k, n, cap)


# --- packing into a fixed layout ------------------------------------------------

def container_gap(items: Sequence[Item], layout: ContainerLayout, eps, rotations: bool = False):
    """GAP instance with one bin per container, plus the orientation chosen per (item, bin)."""
    sizes, profits, rot = [], [], []
    for it in items:
        srow, prow, rrow = [], [], []
        for c in layout.containers:
            s, r = c.size_of(it.w, it.h, eps), False
            if rotations and it.w != it.h:
                s2 = c.size_of(it.h, it.w, eps)
                if s2 < s:
                    s, r = s2, True
            srow.append(s)
            prow.append(it.p if s != INF else 0)
            rrow.append(r)
        sizes.append(srow)
        profits.append(prow)
        rot.append(rrow)
    caps = [c.capacity(eps) for c in layout.containers]
    return GapInstance(caps, sizes, profits), rot


def solve_container_gap(inst: GapInstance, eps, method: str = "ptas"):
    """method: 'ptas' (budgeted, falls back to the exact DP), 'dp', or 'auto'."""
    if inst.n == 0:
        return 0, ()
    if method in ("dp", "auto"):
        try:
            return gap_dp(inst)
        except ResourceError:
            if method == "dp":
                raise
    e = min(Fraction(eps), Fraction(1, 4))
    try:
        return gap_ptas(inst, e, budget=20_000)
    except ResourceError:
        return gap_dp(inst)


def realize(items: Sequence[Item], layout: ContainerLayout, assignment, rot, eps) -> Packing:
    """Turn a feasible assignment into coordinates."""
    by_bin = {}
    for idx, j in enumerate(assignment):
        if j is not None:
            by_bin.setdefault(j, []).append(idx)
    pls = []
    for j, idxs in sorted(by_bin.items()):
        c = layout.containers[j]
        r = c.rect
        if c.kind == "a":
            its = [items[i] for i in idxs]
            flip = {items[i].id: rot[i][j] for i in idxs}
            placed = [it.rotated() if flip[it.id] else it for it in its]
            pk, left = nfdh_pack(placed, r.w, r.h, r.x, r.y)
            if left:
                raise AssertionError("NFDH left items in an area container under (1-2eps) load")
            pls.extend(Placement(p.item_id, p.x, p.y, flip[p.item_id]) for p in pk.placements)
            continue
        acc = 0
        for i in sorted(idxs, key=lambda i: items[i].id):
            it = items[i]
            w, h = (it.h, it.w) if rot[i][j] else (it.w, it.h)
            if c.kind == "h":
                pls.append(Placement(it.id, r.x, r.y + acc, rot[i][j]))
                acc += h
            else:
                pls.append(Placement(it.id, r.x + acc, r.y, rot[i][j]))
                acc += w
    return Packing(layout.region, pls)


def pack_into_containers(items: Sequence[Item], layout: ContainerLayout, eps,
                         rotations: bool = False, method: str = "ptas"):
    """Best-effort packing of items into the containers; returns (profit, Packing)."""
    items = list(items)
    if not layout.containers or not items:
        return 0, Packing(layout.region, ())
    inst, rot = container_gap(items, layout, eps, rotations)
    profit, assign = solve_container_gap(inst, eps, method)
    pk = realize(items, layout, assign, rot, eps)
    checked(items, pk, rotations)
    return profit, pk


def packing_fits_containers(pk: Packing, items, layout: ContainerLayout) -> bool:
    """Every placement lies inside some container of the layout."""
    from .core import _item_map
    m = _item_map(items)
    return all(any(c.rect.contains(pl.rect(m[pl.item_id])) for c in layout.containers)
               for pl in pk.placements)


# --- shrinking and rounding -------------------------------------------------------

def _along(c: Container, it: Item):
    """(side across the stacking direction, side along it)."""
    return (it.w, it.h) if c.kind == "h" else (it.h, it.w)


def _make(c: Container, x_off, across, along, ids) -> Container:
    r = c.rect
    if c.kind == "h":
        return Container("h", Rect(r.x, r.y + x_off, across, along), tuple(ids))
    return Container("v", Rect(r.x + x_off, r.y, along, across), tuple(ids))


def shrink_container(container: Container, packed_items: Sequence[Item], eps, delta=None) -> list:
    """Replace a horizontal/vertical container by smaller ones of total area <= a(items).

    Items are grouped so widths within a group differ by at most a (1+eps)
    factor; each group gets a tight container, which is then trimmed by
    dropping cheap items or by splitting off tall items into their own
    containers. The kept items are listed in each container's `contents`.
    """
    eps = Fraction(eps)
    if container.kind == "a":
        raise InputError("shrink_container handles horizontal and vertical containers")
    items = list(packed_items)
    if not items:
        return []
    across_cap = container.rect.w if container.kind == "h" else container.rect.h
    if delta is None:
        delta = Fraction(min(_along(container, it)[0] for it in items), across_cap)
    order = sorted(items, key=lambda it: (-_along(container, it)[0], it.id))
    groups, cur = [], []
    for it in order:
        a = _along(container, it)[0]
        if cur and (1 + eps) * a < _along(container, cur[0])[0]:
            groups.append(cur)
            cur = []
        cur.append(it)
    groups.append(cur)

    out = []  # (across, along, ids)
    for grp in groups:
        rest = list(grp)
        while rest:
            width = max(_along(container, it)[0] for it in rest)
            H = sum(_along(container, it)[1] for it in rest)
            P = sum(it.p for it in rest)
            if width * H <= sum(it.area for it in rest):
                out.append((width, H, [it.id for it in rest]))  # already tight
                break
            tall = [it for it in rest if _along(container, it)[1] > eps * H]
            if not tall:
                # drop cheapest-per-length items until eps*H of length is freed
                freed, drop = 0, set()
                for it in sorted(rest, key=lambda it: (Fraction(it.p, _along(container, it)[1]), it.id)):
                    if freed >= eps * H:
                        break
                    drop.add(it.id)
                    freed += _along(container, it)[1]
                rest = [it for it in rest if it.id not in drop]
                if rest:
                    out.append((max(_along(container, it)[0] for it in rest),
                                sum(_along(container, it)[1] for it in rest), [it.id for it in rest]))
                break
            if sum(it.p for it in tall) <= eps * P:
                rest = [it for it in rest if it not in tall]
                if rest:
                    out.append((max(_along(container, it)[0] for it in rest),
                                sum(_along(container, it)[1] for it in rest), [it.id for it in rest]))
                break
            for it in tall:
                a, l = _along(container, it)
                out.append((a, l, [it.id]))
            rest = [it for it in rest if it not in tall]

    res, off = [], 0
    for across, along, ids in out:
        res.append(_make(container, off, across, along, ids))
        off += along
    total = sum(c.area for c in res)
    assert total <= sum(it.area for it in items), "shrunk containers exceed item area"
    return res


def round_container(container: Container, items: Sequence[Item], eps, k: int | None = None):
    """Shrink a horizontal/vertical container to sizes in the P^(k) sets of its items.

    Returns (container, kept items); at most one item, the cheapest among the
    ceil(1/eps) longest, is dropped.
    """
    eps = Fraction(eps)
    m = math.ceil(1 / eps)
    if k is None:
        k = m
    if k < 1 / eps:
        raise ParameterError("k must be at least 1/eps")
    if container.kind == "a":
        raise InputError("use round_area_container for area containers")
    items = list(items)
    r = container.rect
    if not items:
        return Container(container.kind, Rect(r.x, r.y, 0, 0), ()), []
    across = max(_along(container, it)[0] for it in items)
    if len(items) <= m:
        kept = items
        along = sum(_along(container, it)[1] for it in items)
    else:
        longest = sorted(items, key=lambda it: (-_along(container, it)[1], it.id))[:m]
        drop = min(longest, key=lambda it: (it.p, -it.id))
        kept = [it for it in items if it.id != drop.id]
        hj = _along(container, drop)[1]
        rest = sum(_along(container, it)[1] for it in items if it not in longest)
        # the dropped item's own length is not needed; it is the unit for the rest
        along = sum(_along(container, it)[1] for it in longest) - hj + math.ceil(Fraction(rest, hj)) * hj
    c = _make(container, 0, across, along, [it.id for it in kept])
    assert c.rect.w <= r.w and c.rect.h <= r.h, "rounding enlarged a container"
    return c, kept


def round_area_container(container: Container, items: Sequence[Item], eps):
    """Round an area container down to multiples of the largest item sides.

    Keeps items greedily by profit density up to (1-2 eps) of the original
    area. Returns (container, kept items).
    """
    eps = Fraction(eps)
    items = list(items)
    r = container.rect
    if not items:
        return Container("a", Rect(r.x, r.y, 0, 0), ()), []
    n = len(items)
    wmax = max(it.w for it in items)
    hmax = max(it.h for it in items)
    W = wmax * min(n, r.w // wmax)
    H = hmax * min(n, r.h // hmax)
    budget = min((1 - 2 * eps) * r.area, W * H)
    kept, used = [], 0
    for it in sorted(items, key=lambda it: (-Fraction(it.p, it.area), it.id)):
        if used + it.area <= budget:
            kept.append(it)
            used += it.area
    return Container("a", Rect(r.x, r.y, W, H), tuple(it.id for it in kept)), kept


def greedy_integral_fill(containers: Sequence[Container], slices: Sequence[Item]):
    """Pack same-width rectangles into horizontal containers of that exact width.

    Each container takes rectangles of its width until the next one does not
    fit; that one is discarded and the container is closed. When the
    containers of each width offer at least the slices' total height, at most
    one slice per container is discarded. Slices no container reaches are
    discarded too. Returns (assignment id -> container index, discarded ids).
    """
    queues = {}
    for it in sorted(slices, key=lambda it: it.id):
        queues.setdefault(it.w, []).append(it)
    assign, discarded = {}, []
    for ci, c in enumerate(containers):
        q = queues.get(c.rect.w, [])
        load = 0
        while q:
            it = q[0]
            if load + it.h <= c.rect.h:
                assign[it.id] = ci
                load += it.h
                q.pop(0)
            else:
                discarded.append(q.pop(0).id)
                break
    # only reachable when the slices need more height than the containers offer
    discarded.extend(it.id for q in queues.values() for it in q)
    return assign, discarded
