"""Repacking a good part of a packing into a slightly smaller bin.

All routines here work on explicit geometry: a packing of items in the N x N
bin goes in, a packing of a subset in a bin narrowed in one direction comes
out. Rotations are allowed throughout (the contracted packings turn strips
of items by 90 degrees). Coordinates may become Fractions when eps*N is not
an integer; validation handles them exactly.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (InputError, Item, Packing, ParameterError, Placement, Rect, _item_map, checked,
                   validate_packing)
from .steinberg import steinberg_pack


# --- geometry helpers ----------------------------------------------------------

def _num(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def _T(r: Rect) -> Rect:
    return Rect(r.y, r.x, r.h, r.w)


def _shift(r: Rect, dx=0, dy=0) -> Rect:
    return Rect(r.x + dx, r.y + dy, r.w, r.h)


def _boxes(packing: Packing, m) -> dict:
    return {pl.item_id: (pl.rect(m[pl.item_id]), pl.rotated) for pl in packing.placements}


def _emit(boxes: dict, m, region: Rect) -> Packing:
    pls = []
    for i in sorted(boxes):
        r, rot = boxes[i]
        it = m[i]
        if it.w == it.h:
            rot = False
        assert (r.w, r.h) == ((it.h, it.w) if rot else (it.w, it.h)), f"item {i} changed shape"
        pls.append(Placement(i, _num(r.x), _num(r.y), rot))
    return Packing(region, pls)


def _transpose_all(boxes: dict) -> dict:
    return {i: (_T(r), not rot) for i, (r, rot) in boxes.items()}


def _mirror_x(boxes: dict, W) -> dict:
    return {i: (Rect(W - r.x2, r.y, r.w, r.h), rot) for i, (r, rot) in boxes.items()}


def _mirror_y(boxes: dict, H) -> dict:
    return {i: (Rect(r.x, H - r.y2, r.w, r.h), rot) for i, (r, rot) in boxes.items()}


def _prepare(packing: Packing, items):
    m = _item_map(items)
    N = packing.region.w
    if packing.region != Rect(0, 0, N, N):
        raise InputError("expected a packing of the full N x N bin")
    rep = validate_packing(m, packing, True)
    if not rep.ok:
        raise InputError(f"input packing invalid: {rep.violations[0]}")
    return m, N, _boxes(packing, m)


class _Strips:
    """Membership tests for the four boundary strips of thickness d*N."""

    def __init__(self, N):
        self.N = N

    def hits(self, r: Rect, side: str, d) -> bool:
        t = d * self.N
        if side == "B":
            return r.y < t
        if side == "T":
            return r.y2 > self.N - t
        if side == "L":
            return r.x < t
        return r.x2 > self.N - t

    def inside(self, r: Rect, side: str, d) -> bool:
        t = d * self.N
        if side == "B":
            return r.y2 <= t
        if side == "T":
            return r.y >= self.N - t
        if side == "L":
            return r.x2 <= t
        return r.x >= self.N - t


def _rotate_strip_into_column(boxes: dict, ids, side: str, base_y, x_at) -> dict:
    """Turn the contents of a top or bottom strip into a vertical column.

    A box with bottom edge at y (relative to `base_y`) lands at x = x_at + y - base_y.
    """
    out = {}
    for i in ids:
        r, rot = boxes[i]
        out[i] = (Rect(x_at + (r.y - base_y), r.x, r.h, r.w), not rot)
    return out


def _rotate_side_into_row(boxes: dict, ids, base_x, y_at) -> dict:
    """Transpose the contents of a side strip into a horizontal row at height y_at."""
    out = {}
    for i in ids:
        r, rot = boxes[i]
        out[i] = (Rect(r.y, y_at + (r.x - base_x), r.h, r.w), not rot)
    return out


def _is_massive(r: Rect, N, eps) -> bool:
    return r.w >= (1 - eps) * N and r.h >= (1 - eps) * N


# --- weighted contraction ------------------------------------------------------

def _weighted_halves(boxes: dict, N, es, trace: dict):
    """Two packings covering all boxes; each is ('w' or 'h', boxes).

    'w' means the packing fits (1 - es)N x N, 'h' means N x (1 - es)N.
    """
    S = _Strips(N)
    ids = list(boxes)
    R = {i: boxes[i][0] for i in ids}
    cross = [i for i in ids if S.hits(R[i], "B", es) and S.hits(R[i], "T", 3 * es)]
    CL = {i for i in ids if S.inside(R[i], "L", es)}
    CR = {i for i in ids if S.inside(R[i], "R", es)}
    top_row, top_row2 = (1 - 3 * es) * N, (1 - 2 * es) * N

    def case_one(M1):
        # M1 avoids the bottom strip: shift it down
        A = {i: (_shift(boxes[i][0], dy=-es * N), boxes[i][1]) for i in M1}
        rest = [i for i in ids if i not in M1]
        B = {i: boxes[i] for i in rest if i not in CL and i not in CR}
        B.update(_rotate_side_into_row(boxes, [i for i in rest if i in CL], 0, top_row))
        B.update(_rotate_side_into_row(boxes, [i for i in rest if i in CR], N - es * N, top_row2))
        return ("h", A), ("h", B)

    if not cross:
        trace["case"] = "1"
        ET = {i for i in ids if S.hits(R[i], "T", 3 * es)}
        return case_one(ET)

    side = {i: (S.hits(R[i], "L", es), S.hits(R[i], "R", es)) for i in cross}
    free = [i for i in cross if not any(side[i])]
    if free:
        trace["case"] = "2A"
        i = min(free)
        bx = boxes
        if R[i].x > N / 2:
            bx = _mirror_x(boxes, N)
        ri = bx[i][0]
        left = [j for j in ids if bx[j][0].x2 <= ri.x]
        right = [j for j in ids if j != i and bx[j][0].x >= ri.x2]
        above = [j for j in ids if j != i and j not in left and j not in right and bx[j][0].y >= ri.y2]
        below = [j for j in ids if j != i and j not in left and j not in right and bx[j][0].y2 <= ri.y]
        assert len(left) + len(right) + len(above) + len(below) + 1 == len(ids)
        A = {j: bx[j] for j in left}
        A.update(_rotate_strip_into_column(bx, above, "T", (1 - 3 * es) * N, ri.x))
        A.update(_rotate_strip_into_column(bx, below, "B", 0, ri.x + 3 * es * N))
        B = {j: (_shift(bx[j][0], dx=-es * N), bx[j][1]) for j in right + [i]}
        return ("w", A), ("w", B)

    both = [i for i in cross if all(side[i])]
    if both:
        trace["case"] = "2B"
        i = min(both)
        ri = R[i]
        top = {j for j in ids if j != i and R[j].y >= ri.y2}
        out = CL | CR | top
        M1 = {j: boxes[j] for j in ids if j not in out}
        B = {j: (_shift(boxes[j][0], dy=-ri.y2), boxes[j][1]) for j in top - CL - CR}
        h0 = N - ri.y2
        B.update(_rotate_side_into_row(boxes, sorted(CL), 0, h0))
        B.update(_rotate_side_into_row(boxes, sorted(CR), N - es * N, h0 + es * N))
        return ("h", M1), ("h", B)

    trace["case"] = "2C"
    dl = [i for i in cross if side[i][0] and i not in CL]
    dr = [i for i in cross if side[i][1] and i not in CR]
    if dl or dr:
        bx = boxes
        if dl:
            i = min(dl)
        else:
            i = min(dr)
            bx = _mirror_x(boxes, N)
        ri = bx[i][0]
        CT = {j for j in ids if S.inside(bx[j][0], "T", 3 * es)}
        CB = {j for j in ids if S.inside(bx[j][0], "B", es)}
        right = {j for j in ids if j != i and bx[j][0].x >= ri.x2}
        if 2 * ri.x2 <= N:
            trace["sub"] = "right-alone"
            A = {j: (_shift(bx[j][0], dx=-ri.x2), bx[j][1]) for j in right}
            rest = [j for j in ids if j not in right]
            B = {j: bx[j] for j in rest if j not in CT and j not in CB}
            B.update(_rotate_strip_into_column(bx, sorted(CT - right), "T", (1 - 3 * es) * N, ri.x2))
            B.update(_rotate_strip_into_column(bx, sorted(CB - right), "B", 0, ri.x2 + 3 * es * N))
            return ("w", A), ("w", B)
        trace["sub"] = "left-alone"
        keep = {j for j in ids if bx[j][0].x2 <= ri.x2} | {i}
        keep -= right
        A = {j: bx[j] for j in keep}
        rest = [j for j in ids if j not in keep]
        B = {j: (_shift(bx[j][0], dx=4 * es * N - ri.x2), bx[j][1])
             for j in rest if j not in CT and j not in CB}
        B.update(_rotate_strip_into_column(bx, sorted(CT - keep), "T", (1 - 3 * es) * N, 0))
        B.update(_rotate_strip_into_column(bx, sorted(CB - keep), "B", 0, 3 * es * N))
        return ("w", A), ("w", B)
    trace["sub"] = "all-in-side-strips"
    ET = {j for j in ids if S.hits(R[j], "T", 3 * es) and j not in CL and j not in CR}
    return case_one(ET)


def _to_width_contracted(kind: str, boxes: dict) -> dict:
    return boxes if kind == "w" else _transpose_all(boxes)


def resource_contraction_weighted(packing: Packing, items, eps, trace: dict | None = None) -> Packing:
    """Pack at least half the profit into a (1 - eps/2)N x N bin.

    The input must be a valid packing of the N x N bin without massive items
    (both sides >= (1 - eps)N). Two packings covering every input item are
    built, each fitting the contracted bin; the more profitable one is kept.
    """
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 6):
        raise ParameterError("eps must lie in (0, 1/6)")
    m, N, boxes = _prepare(packing, items)
    big = [i for i, (r, _) in boxes.items() if _is_massive(r, N, eps)]
    if big:
        raise InputError(f"item {big[0]} is massive; use massive_item_split")
    es = eps / 2
    region = Rect(0, 0, (1 - es) * N, N)
    trace = {} if trace is None else trace
    if not boxes:
        trace["case"] = "empty"
        return checked(m, Packing(region, ()), True)
    # already narrow enough: keep everything, sliding left if needed
    lo = min(r.x for r, _ in boxes.values())
    hi = max(r.x2 for r, _ in boxes.values())
    if hi - lo <= region.w:
        trace["case"] = "fits"
        dx = 0 if hi <= region.w else lo
        out = {i: (_shift(r, dx=-dx), rot) for i, (r, rot) in boxes.items()}
        return checked(m, _emit(out, m, region), True)
    halves = _weighted_halves(boxes, N, es, trace)
    assert set(halves[0][1]) | set(halves[1][1]) == set(boxes), "halves must cover the input"
    best = None
    for kind, bx in halves:
        pk = checked(m, _emit(_to_width_contracted(kind, bx), m, region), True)
        prof = pk.profit(m)
        if best is None or prof > best[0] or (prof == best[0] and pk.sort_key() < best[1].sort_key()):
            best = (prof, pk)
    trace["profits"] = [sum(m[i].p for i in bx) for _, bx in halves]
    return best[1]


# --- cardinality contraction ---------------------------------------------------

@dataclass
class BandChoice:
    index: int
    eps_s: Fraction
    removed: tuple
    counts: dict = field(default_factory=dict)


def choose_height_band(boxes_or_items, N: int, eps, eps_small) -> BandChoice:
    """Pick i with the fewest items having a side in ((1-2eps^i)N, (1-eps^(i+1))N].

    Only indices with eps^(i+1) >= eps_small are eligible. Both heights and
    widths are checked so the later orientation step may transpose freely.
    """
    eps, eps_small = Fraction(eps), Fraction(eps_small)
    sides = {}
    for obj in boxes_or_items:
        if isinstance(obj, Item):
            sides[obj.id] = (obj.w, obj.h)
        else:
            i, r = obj
            sides[i] = (r.w, r.h)
    k = math.ceil(1 / (2 * eps))
    best = None
    counts = {}
    for i in range(1, k + 1):
        if eps ** (i + 1) < eps_small:
            break
        lo, hi = (1 - 2 * eps ** i) * N, (1 - eps ** (i + 1)) * N
        hit = tuple(sorted(j for j, (w, h) in sides.items() if lo < w <= hi or lo < h <= hi))
        counts[i] = len(hit)
        if best is None or len(hit) < len(best[1]):
            best = (i, hit)
    if best is None:
        raise ParameterError("eps_small too large for any band (need eps^2 >= eps_small)")
    return BandChoice(best[0], eps ** best[0], best[1], counts)


def strip_orientation(boxes: dict, N: int, eps_s) -> bool:
    """True when the packing must be transposed so the top and bottom strips carry little area."""
    S = _Strips(N)
    bound = (1 + 8 * eps_s) / 2 * N * N
    tb = sum(r.area for r, _ in boxes.values() if S.hits(r, "T", eps_s) or S.hits(r, "B", eps_s))
    if tb <= bound:
        return False
    lr = sum(r.area for r, _ in boxes.values() if S.hits(r, "L", eps_s) or S.hits(r, "R", eps_s))
    return lr < tb


def _check_card_params(eps, eps_small, n, test_mode):
    if not 0 < eps <= Fraction(1, 13):
        raise ParameterError("eps must lie in (0, 1/13]")
    if eps_small <= 0:
        raise ParameterError("eps_small must be positive")
    if not test_mode:
        # eps_small < eps^(1/(2 eps) + 1), compared in logs
        if math.log(eps_small) >= (1 / (2 * float(eps)) + 1) * math.log(eps):
            raise ParameterError("eps_small must be below eps^(1/(2 eps) + 1)")
        if n < 1 / eps_small ** 3:
            raise ParameterError("production mode needs |M| >= 1/eps_small^3")


def resource_contraction_cardinality(packing: Packing, items, eps, eps_small, test_mode: bool = False,
                                     trace: dict | None = None) -> Packing:
    """Keep about 2/3 of the items while narrowing the bin to (1 - eps*eps_s)N x N.

    eps_s = eps^i is fixed by the band choice; the returned packing's region
    records the exact width. `trace` receives the intermediate set sizes.
    """
    eps, eps_small = Fraction(eps), Fraction(eps_small)
    m, N, boxes = _prepare(packing, items)
    _check_card_params(eps, eps_small, len(boxes), test_mode)
    trace = {} if trace is None else trace
    trace["M"] = len(boxes)
    # both sides large
    big = [i for i, (r, _) in boxes.items() if r.w > eps_small * N and r.h > eps_small * N]
    for i in big:
        del boxes[i]
    trace["M2"] = len(boxes)
    band = choose_height_band([(i, r) for i, (r, _) in boxes.items()], N, eps, eps_small)
    for i in band.removed:
        del boxes[i]
    es = band.eps_s
    d = eps * es
    trace.update(M3=len(boxes), band=band.index, eps_s=es, delta=d, band_counts=band.counts)
    region = Rect(0, 0, (1 - d) * N, N)
    if not boxes:
        trace["case"] = "empty"
        return checked(m, Packing(region, ()), True)
    flip = strip_orientation(boxes, N, es)
    trace["transposed"] = flip
    work = _transpose_all(boxes) if flip else dict(boxes)
    kind, out = _card_cases(work, m, N, es, d, eps_small, trace)
    if flip:
        out = _transpose_all(out)
        kind = "h" if kind == "w" else "w"
    out = _to_width_contracted(kind, out)
    pk = checked(m, _emit(out, m, region), True)
    trace["kept"] = len(pk.placements)
    return pk


def _card_cases(boxes: dict, m, N, es, d, eps_small, trace):
    S = _Strips(N)
    ids = sorted(boxes)
    R = {i: boxes[i][0] for i in ids}
    X = [i for i in ids if S.hits(R[i], "T", es) and S.hits(R[i], "B", es)]
    ET = {i for i in ids if S.hits(R[i], "T", es)}
    EB = {i for i in ids if S.hits(R[i], "B", es)}
    Xs = set(X)
    Y = sorted((ET | EB) - Xs)
    wX = sum(R[i].w for i in X)
    trace.update(X=len(X), Y=len(Y), Z=len(ids) - len(X) - len(Y), wX=wX)
    if wX >= 12 * d * N:
        trace["case"] = "A"
        return "w", _card_case_a(boxes, N, d, X, wX)
    trace["case"] = "B"
    one = _card_case_b_drop(boxes, N, es, X, ET, EB)
    two = _card_case_b_stein(boxes, m, N, es, eps_small, X, Y)
    trace["options"] = (len(one), len(two))
    if len(one) >= len(two):
        return "h", one
    return "w", two


def _card_case_a(boxes, N, d, X, wX):
    S = _Strips(N)
    CT = {i for i in boxes if S.inside(boxes[i][0], "T", d)}
    CB = {i for i in boxes if S.inside(boxes[i][0], "B", d)}
    gone = set(X) | CT | CB
    cols = sorted((boxes[i][0].x, boxes[i][0].x2) for i in X)
    out = {}
    for i, (r, rot) in boxes.items():
        if i in gone:
            continue
        # every other item sits between crossing columns
        for a, b in cols:
            assert r.x2 <= a or r.x >= b, "item overlaps a crossing column"
        dx = sum(b - a for a, b in cols if b <= r.x)
        out[i] = (_shift(r, dx=-dx), rot)
    base = N - wX
    out.update(_rotate_strip_into_column(boxes, sorted(CT - set(X)), "T", (1 - d) * N, base))
    out.update(_rotate_strip_into_column(boxes, sorted(CB - set(X)), "B", 0, base + d * N))
    x, limit = base + 2 * d * N, wX - 3 * d * N
    used = 0
    for i in sorted(X, key=lambda i: (boxes[i][0].w, i)):
        r, rot = boxes[i]
        if used + r.w > limit:
            break
        out[i] = (Rect(x, 0, r.w, r.h), rot)
        x += r.w
        used += r.w
    return out


def _card_case_b_drop(boxes, N, es, X, ET, EB):
    Xs = set(X)
    bx = boxes
    if len(ET - Xs) > len(EB - Xs):
        bx = _mirror_y(boxes, N)
        ET, EB = EB, ET
    out = {i: bx[i] for i in bx if i not in ET}
    y = (1 - es) * N
    for i in X:
        r, rot = bx[i]
        out[i] = (Rect(0, y, r.h, r.w), not rot)
        y += r.w
    assert y <= (1 - es * es) * N or not X, "rotated crossing items overflow"
    return out


def _card_case_b_stein(boxes, m, N, es, eps_small, X, Y):
    W = math.floor((1 - es) * N)
    thin = []
    for i in list(X) + list(Y):
        it = m[i]
        if it.w <= eps_small * N:
            thin.append((it, False))
        else:
            thin.append((it.rotated(), True))
    budget = Fraction(W * N, 2)
    chosen, tot = [], 0
    for it, rot in sorted(thin, key=lambda t: (t[0].area, t[0].id)):
        if tot + it.area > budget:
            break
        chosen.append((it, rot))
        tot += it.area
    pk = steinberg_pack([it for it, _ in chosen], W, N)
    flag = {it.id: rot for it, rot in chosen}
    lookup = {it.id: it for it, _ in chosen}
    return {pl.item_id: (pl.rect(lookup[pl.item_id]), flag[pl.item_id]) for pl in pk.placements}


# --- massive item ---------------------------------------------------------------

@dataclass(frozen=True)
class MassiveSplit:
    massive_id: int
    profits: dict  # candidate name -> profit of the packed set
    chosen: str
    packing: Packing
    regions: dict  # candidate name -> ((label, Rect), ...)


def _min_strip(boxes: dict, m, N, eps, k, axis: str):
    lo = eps * N
    L = (1 - 2 * eps) * N / k
    best = None
    for s in range(k):
        a, b = lo + s * L, lo + (s + 1) * L
        hit = []
        for i, (r, _) in boxes.items():
            e1, e2 = (r.x, r.x2) if axis == "x" else (r.y, r.y2)
            if a < e1 < b or a < e2 < b:
                hit.append(i)
        p = sum(m[i].p for i in hit)
        if best is None or p < best[0]:
            best = (p, a, b, set(hit))
    return best[1], best[2], best[3]


def _stack_with_massive(bx: dict, mid, N, H_ids, V_ids, Tj):
    """Massive item top-left, stacked strip items below it, side items to its right."""
    rm = bx[mid][0]
    out = {mid: (Rect(0, N - rm.h, rm.w, rm.h), bx[mid][1])}
    y = 0
    for i in sorted(H_ids, key=lambda i: (bx[i][0].y, i)):
        r, rot = bx[i]
        out[i] = (Rect(r.x, y, r.w, r.h), rot)
        y += r.h
    assert y <= N - rm.h
    a, b = Tj
    for i in V_ids:
        r, rot = bx[i]
        dx = -rm.w if r.x >= rm.x2 else 0
        dy = -(b - a) if r.y >= b else 0
        out[i] = (Rect(r.x + dx + rm.w, r.y + dy + (N - rm.h), r.w, r.h), rot)
    return out


def massive_item_split(packing: Packing, items, eps) -> MassiveSplit:
    """Best of three repackings around a massive item, as an explicit packing.

    Candidates: everything except the massive item (packed thin side down),
    the massive item with the items crossing a cheap vertical strip plus the
    side items, and the transposed counterpart.
    """
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 6):
        raise ParameterError("eps must lie in (0, 1/6)")
    m, N, boxes = _prepare(packing, items)
    big = [i for i, (r, _) in boxes.items() if _is_massive(r, N, eps)]
    if not big:
        raise InputError("no massive item in the packing")
    mid = big[0]
    k = max(1, math.floor(1 / (3 * eps)))
    full = Rect(0, 0, N, N)
    regions = {}
    cands = {}

    # everything but the massive item, thin side down
    rest = []
    for i in boxes:
        if i == mid:
            continue
        it = m[i]
        rest.append((it, False) if it.h <= it.w else (it.rotated(), True))
    pk = steinberg_pack([it for it, _ in rest], N, N)
    flag = {it.id: r for it, r in rest}
    cands["without"] = Packing(full, [Placement(pl.item_id, pl.x, pl.y, flag[pl.item_id])
                                      for pl in pk.placements])
    regions["without"] = (("steinberg", full),)

    def build(bx, name):
        rm = bx[mid][0]
        sa, sb, hit_s = _min_strip(bx, m, N, eps, k, "x")
        ta, tb, hit_t = _min_strip(bx, m, N, eps, k, "y")
        keep = {i for i in bx if i not in hit_s and i not in hit_t and i != mid}
        MH = {i for i in keep if bx[i][0].x < sb and bx[i][0].x2 > sa}
        MV = {i for i in keep if bx[i][0].y < tb and bx[i][0].y2 > ta}
        V = {i for i in keep - MV if bx[i][0].x2 <= rm.x or bx[i][0].x >= rm.x2}
        out = _stack_with_massive(bx, mid, N, MH, V, (ta, tb))
        regions[name] = (("massive", Rect(0, N - rm.h, rm.w, rm.h)),
                         ("stack", Rect(0, 0, N, N - rm.h)),
                         ("side", Rect(rm.w, N - rm.h, N - rm.w, rm.h)))
        return out

    cands["stack-below"] = _emit(build(boxes, "stack-below"), m, full)
    tb_out = build(_transpose_all(boxes), "stack-left")
    cands["stack-left"] = _emit(_transpose_all(tb_out), m, full)
    regions["stack-left"] = tuple((lab, _T(r)) for lab, r in regions["stack-left"])
    profits = {}
    best = None
    for name in ("without", "stack-below", "stack-left"):
        pk = checked(m, cands[name], True)
        profits[name] = pk.profit(m)
        if best is None or profits[name] > profits[best]:
            best = name
    return MassiveSplit(mid, profits, best, cands[best], regions)


# --- random strip deletion -------------------------------------------------------

def random_strip_delete(packing: Packing, items, orientation: str = "h", eps=Fraction(1, 10),
                        seed: int = 0) -> Packing:
    """Delete items meeting a random eps*N strip and close the gap.

    orientation "h" uses a horizontal strip (result fits N x N/(1+eps)),
    "v" a vertical one (result fits N/(1+eps) x N).
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ParameterError("eps must lie in (0, 1)")
    if orientation not in ("h", "v"):
        raise ParameterError("orientation must be 'h' or 'v'")
    m = _item_map(items)
    N = packing.region.w
    rng = random.Random(seed)
    a = Fraction(rng.random()) * (1 - eps) * N
    b = a + eps * N
    boxes = _boxes(packing, m)
    if orientation == "v":
        boxes = _transpose_all(boxes)
    out = {}
    for i, (r, rot) in boxes.items():
        if r.y < b and r.y2 > a:
            continue
        out[i] = (_shift(r, dy=-eps * N) if r.y >= b else r, rot)
    red = N / (1 + eps)
    if orientation == "v":
        out = _transpose_all(out)
        region = Rect(0, 0, red, N)
    else:
        region = Rect(0, 0, N, red)
    rotations = any(pl.rotated for pl in packing.placements)
    return checked(m, _emit(out, m, region), rotations or None)
