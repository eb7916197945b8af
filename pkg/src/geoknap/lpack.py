"""L-packings: long items in a boundary L of the knapsack.

Horizontal items (w > N/2) live in the bottom arm [0,N] x [0,h_L], stacked
bottom-up by non-increasing width and right-aligned at x = N. Vertical items
(h > N/2) live in the left arm [0,w_L] x [0,N], side by side left-to-right
by non-increasing height and top-aligned at y = N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .core import (InputError, Instance, Item, Packing, ParameterError, Placement, Rect,
                   ResourceError, better, checked)


@dataclass(frozen=True)
class LShape:
    N: int
    h_L: int
    w_L: int

    def __post_init__(self):
        if not (0 <= self.h_L <= self.N and 0 <= self.w_L <= self.N):
            raise InputError(f"L arms must lie in [0, N]: h_L={self.h_L}, w_L={self.w_L}")


@dataclass(frozen=True)
class LInstance:
    shape: LShape
    hor: tuple
    ver: tuple

    def __post_init__(self):
        object.__setattr__(self, "hor", tuple(sorted(self.hor, key=lambda it: (-it.w, it.id))))
        object.__setattr__(self, "ver", tuple(sorted(self.ver, key=lambda it: (-it.h, it.id))))
        N = self.shape.N
        for it in self.hor:
            if 2 * it.w <= N:
                raise InputError(f"horizontal item {it.id} has w={it.w} <= N/2")
        for it in self.ver:
            if 2 * it.h <= N:
                raise InputError(f"vertical item {it.id} has h={it.h} <= N/2")
        if {it.id for it in self.hor} & {it.id for it in self.ver}:
            raise InputError("an item is both horizontal and vertical")

    @property
    def N(self):
        return self.shape.N

    @property
    def items(self) -> tuple:
        return self.hor + self.ver

    @property
    def n(self) -> int:
        return len(self.hor) + len(self.ver)

    def instance(self) -> Instance:
        return Instance(self.N, self.items, False)

    @classmethod
    def from_instance(cls, inst: Instance, w_L: int, h_L: int) -> "LInstance":
        """Split the long items of `inst`; items long in both directions go by their longer side."""
        N = inst.N
        hor, ver = [], []
        for it in inst.items:
            wide, tall = 2 * it.w > N, 2 * it.h > N
            if wide and (not tall or it.w >= it.h):
                hor.append(it)
            elif tall:
                ver.append(it)
        return cls(LShape(N, h_L, w_L), hor, ver)


def _profit(items) -> int:
    return sum(it.p for it in items)


# --- normal form ------------------------------------------------------------

def normalize_l_packing(selected_hor: Sequence[Item], selected_ver: Sequence[Item],
                        l_shape: LShape) -> Packing | None:
    """Canonical placement of a chosen subset pair, or None if it does not fit."""
    N = l_shape.N
    for it in selected_hor:
        if 2 * it.w <= N:
            raise InputError(f"horizontal item {it.id} has w={it.w} <= N/2")
    for it in selected_ver:
        if 2 * it.h <= N:
            raise InputError(f"vertical item {it.id} has h={it.h} <= N/2")
    hs = sorted(selected_hor, key=lambda it: (-it.w, it.id))
    vs = sorted(selected_ver, key=lambda it: (-it.h, it.id))
    if sum(it.h for it in hs) > l_shape.h_L or sum(it.w for it in vs) > l_shape.w_L:
        return None
    pls, hrects, y = [], [], 0
    for it in hs:
        r = Rect(N - it.w, y, it.w, it.h)
        hrects.append(r)
        pls.append(Placement(it.id, r.x, r.y))
        y += it.h
    x = 0
    for it in vs:
        r = Rect(x, N - it.h, it.w, it.h)
        if any(r.overlaps(hr) for hr in hrects):
            return None
        pls.append(Placement(it.id, r.x, r.y))
        x += it.w
    return checked(list(hs) + list(vs), Packing(Rect(0, 0, N, N), pls), False)


# --- exact DP over restricted coordinates ------------------------------------

def _denominator(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b),
                  (Fraction(v).denominator for v in values), 1)


def _check_coords(T, name):
    T = sorted({Fraction(v) for v in T})
    if not T or T[0] != 0:
        raise ParameterError(f"{name} must contain 0")
    if T[0] < 0:
        raise ParameterError(f"{name} must be non-negative")
    return T


@dataclass
class _Table:
    value: int
    hor: list
    ver: list
    tops: dict
    rights: dict


def _run_dp(li: LInstance, T: list, R: list, cell_cap: int) -> _Table:
    N, hL, wL = li.N, li.shape.h_L, li.shape.w_L
    D = _denominator(T + R)
    Ts = [int(v * D) for v in T if v <= hL]
    Rs = [int(v * D) for v in R if v <= wL]
    hor, ver = list(li.hor), list(li.ver)

    def next_index(vals, start, length, limit):
        # smallest value >= start + length (all scaled), or -1
        target = start + length
        k = np.searchsorted(vals, target)
        return int(k) if k < len(vals) and vals[k] <= limit else -1

    Ta, Ra = np.array(Ts, dtype=np.int64), np.array(Rs, dtype=np.int64)
    # coordinates reachable by stacking some subset in order
    reach_t = {0}
    for it in hor:
        reach_t |= {k for k in (next_index(Ta, Ts[t], it.h * D, hL * D) for t in reach_t) if k >= 0}
    reach_r = {0}
    for it in ver:
        reach_r |= {k for k in (next_index(Ra, Rs[r], it.w * D, wL * D) for r in reach_r) if k >= 0}
    tl, rl = sorted(reach_t), sorted(reach_r)
    tpos = {k: c for c, k in enumerate(tl)}
    rpos = {k: c for c, k in enumerate(rl)}
    cells = (len(hor) + 1) * len(tl) * (len(ver) + 1) * len(rl)
    if cells > cell_cap:
        raise ResourceError(f"L-packing table needs {cells} cells", cells, cell_cap)
    hnext = np.full((max(len(hor), 1), len(tl)), -1, dtype=np.int64)
    for i, it in enumerate(hor):
        for c, k in enumerate(tl):
            nk = next_index(Ta, Ts[k], it.h * D, hL * D)
            hnext[i, c] = tpos.get(nk, -1) if nk >= 0 else -1
    vnext = np.full((max(len(ver), 1), len(rl)), -1, dtype=np.int64)
    for j, it in enumerate(ver):
        for c, k in enumerate(rl):
            nk = next_index(Ra, Rs[k], it.w * D, wL * D)
            vnext[j, c] = rpos.get(nk, -1) if nk >= 0 else -1
    # a horizontal may go in while the vertical stack ends at r <= N - w
    hlim = [max((c for c, k in enumerate(rl) if Rs[k] <= (N - it.w) * D), default=-1) for it in hor]
    vlim = [max((c for c, k in enumerate(tl) if Ts[k] <= (N - it.h) * D), default=-1) for it in ver]
    V = kernels.lpack_table(np.array([it.p for it in hor], dtype=np.int64),
                            np.array([it.p for it in ver], dtype=np.int64),
                            hnext[:len(hor)] if hor else np.zeros((0, len(tl)), dtype=np.int64),
                            np.array(hlim, dtype=np.int64),
                            vnext[:len(ver)] if ver else np.zeros((0, len(rl)), dtype=np.int64),
                            np.array(vlim, dtype=np.int64))
    # walk one optimal path
    i = j = t = r = 0
    tops, rights = {}, {}
    while i < len(hor) or j < len(ver):
        cur = V[i, t, j, r]
        if i < len(hor) and V[i + 1, t, j, r] == cur:
            i += 1
            continue
        if i < len(hor):
            nx = hnext[i, t]
            if nx >= 0 and r <= hlim[i] and hor[i].p + V[i + 1, nx, j, r] == cur:
                tops[hor[i].id] = Fraction(Ts[tl[nx]], D)
                i, t = i + 1, int(nx)
                continue
        if j < len(ver) and V[i, t, j + 1, r] == cur:
            j += 1
            continue
        nx = vnext[j, r]
        assert nx >= 0 and t <= vlim[j] and ver[j].p + V[i, t, j + 1, nx] == cur
        rights[ver[j].id] = Fraction(Rs[rl[nx]], D)
        j, r = j + 1, int(nx)
    return _Table(int(V[0, 0, 0, 0]), hor, ver, tops, rights)


def _emit(li: LInstance, tops: dict, rights: dict) -> Packing:
    """Snap exact tops/rights down to the grid and build the packing."""
    N = li.N
    pls = []
    for it in li.hor:
        if it.id in tops:
            pls.append(Placement(it.id, N - it.w, math.floor(tops[it.id]) - it.h))
    for it in li.ver:
        if it.id in rights:
            pls.append(Placement(it.id, math.floor(rights[it.id]) - it.w, N - it.h))
    return checked(li.items, Packing(Rect(0, 0, N, N), pls), False)


def lpack_exact_dp(l_instance: LInstance, T: Iterable, R: Iterable, cell_cap: int = 20_000_000):
    """Best (T, R)-restricted L-packing.

    State (i, t, j, r): horizontals from i on and verticals from j on are
    still undecided, the horizontal stack ends at top t and the vertical stack
    at right r. Placing horizontal i moves t to the smallest t' in T with
    t' - h >= t, allowed when its width clears r; verticals symmetrically.
    """
    T = _check_coords(T, "T")
    R = _check_coords(R, "R")
    tab = _run_dp(l_instance, T, R, cell_cap)
    pk = _emit(l_instance, tab.tops, tab.rights)
    return tab.value, pk


def full_grid(N: int) -> list:
    return list(range(N + 1))


# --- delete & shift -----------------------------------------------------------

def growing_subsequence(heights: Sequence) -> list:
    """Indices g_1 = 0, then each next lowest index whose height is >= the previous pick."""
    if len(heights) == 0:
        raise ParameterError("growing subsequence of an empty sequence")
    G = [0]
    for k in range(1, len(heights)):
        if heights[k] >= heights[G[-1]]:
            G.append(k)
    return G


def ceil_to(x, step) -> Fraction:
    """Smallest multiple of `step` that is >= x."""
    x, step = Fraction(x), Fraction(step)
    return math.ceil(x / step) * step


@dataclass
class ShiftResult:
    deleted: set
    shift: dict  # item index -> new top, relative to the bottom of the interval
    levels: dict = field(default_factory=dict)  # round parameter -> ids in growing sequences


def delete_and_shift(interval_items: Sequence, r: int, eps=Fraction(1, 2), n: int | None = None,
                     profits: Sequence | None = None) -> ShiftResult:
    """Delete a cheap subset of a stack and push the rest down onto a small coordinate set.

    `interval_items` are heights listed bottom to top (or Items, whose h and
    p are used). Returned shifts are new top coordinates measured from the
    bottom of the stack and keyed by position in the input. `n` is the item
    count that fixes the rounding grid h/(2n) (defaults to the stack size).
    """
    if r < 1:
        raise ParameterError("round parameter must be >= 1")
    hs = [Fraction(getattr(x, "h", x)) for x in interval_items]
    ps = list(profits) if profits is not None else [getattr(x, "p", 1) for x in interval_items]
    n = len(hs) if n is None else n
    m = math.ceil(1 / Fraction(eps))
    levels: dict = {}
    deleted, shift = _dns(list(range(len(hs))), r, hs, ps, n, m, levels)
    return ShiftResult(deleted, shift, levels)


def _dns(B: list, r: int, hs, ps, n, m, levels):
    if not B:
        return set(), {}
    local = [hs[b] for b in B]
    G = [B[g] for g in growing_subsequence(local)]
    levels.setdefault(r, set()).update(G)
    bottom = {}
    acc = Fraction(0)
    for b in B:
        bottom[b] = acc
        acc += hs[b]
    bounds = G + [B[-1] + 1]
    blocks = [[b for b in B if bounds[q] < b < bounds[q + 1]] for q in range(len(G))]
    shift = {}
    if r == 1:
        for q, g in enumerate(G):
            base = ceil_to(bottom[g], hs[g] / 2)
            run = base
            for b in blocks[q]:
                run += ceil_to(hs[b], hs[g] / (2 * n))
                shift[b] = run
        return set(G), shift
    Dp = set()
    if len(G) >= m:
        classes = [[G[q] for q in range(len(G)) if (q + 1) % m == x] for x in range(m)]
        x = min(range(m), key=lambda x: (sum(ps[g] for g in classes[x]), x))
        Dp = set(classes[x])
    deleted = set(Dp)
    sub = []
    for q in range(len(G)):
        d, s = _dns(blocks[q], r - 1, hs, ps, n, m, levels)
        deleted |= d
        sub.append((s, max(s.values(), default=Fraction(0))))
    for q, g in enumerate(G):
        last = max((d for d in Dp if d <= g), default=None)
        if last is None:
            base = Fraction(0)
            lift = sum((hs[gk] for gk in G if gk <= g), Fraction(0))
            lift += sum((sub[k][1] for k, gk in enumerate(G) if gk < g), Fraction(0))
        else:
            base = ceil_to(bottom[last], hs[last] / 2)
            lift = sum((hs[gk] for gk in G if last < gk <= g), Fraction(0))
            lift += sum((sub[k][1] for k, gk in enumerate(G) if last <= gk < g), Fraction(0))
        if g not in Dp:
            shift[g] = base + lift
        for b, v in sub[q][0].items():
            shift[b] = base + lift + v
    return deleted, shift


# --- restricted coordinate sets -----------------------------------------------

@dataclass(frozen=True)
class RestrictedSets:
    T: tuple
    R: tuple
    r_level: int


def size_bound(n: int, r: int, eps) -> float:
    eps = Fraction(eps)
    e = (r + 2 + (r - 1) * eps) / eps ** (r - 1)
    return float(2 * n) ** float(e)


def _bits_to_values(bits: int, scale: int) -> tuple:
    out, k = [], 0
    while bits:
        low = bits & -bits
        k = low.bit_length() - 1
        out.append(Fraction(k, scale))
        bits ^= low
    return tuple(out)


def _sumset(a: int, b: int, mask: int) -> int:
    out, k = 0, 0
    while b:
        low = b & -b
        k = low.bit_length() - 1
        out |= (a << k) & mask
        b ^= low
    return out


def _side_sets(sizes: list, n: int, limit: int, m: int, levels: int, cap: int) -> list:
    """Coordinate sets for one arm, as bitsets over multiples of 1/(2n), capped at `limit`."""
    scale = 2 * n
    top = limit * scale
    mask = (1 << (top + 1)) - 1
    out = []
    if not sizes:
        return [1] * levels
    T1 = 0
    for s in sizes:
        for a in range(1, 4 * n * n + 1):
            v = a * s  # a * s / (2n) in scaled units
            if v > top:
                break
            T1 |= 1 << v
    out.append(T1 | 1)
    # sums of at most m-1 item sizes
    size_bits = 0
    for s in sizes:
        if s * scale <= top:
            size_bits |= 1 << (s * scale)
    H = 1
    for _ in range(m - 1):
        H |= _sumset(H, size_bits, mask)
    A = 0
    for s in sizes:
        for a in range(0, 2 * n):
            v = a * s * n  # a * s / 2
            if v > top:
                break
            A |= 1 << v
    base = _sumset(A, H, mask)
    for _ in range(2, levels + 1):
        prev = out[-1]
        S = 1
        for _ in range(m):
            S |= _sumset(S, prev, mask)
        cur = _sumset(base, S, mask) | 1
        if bin(cur).count("1") > cap:
            raise ResourceError(f"restricted set exceeds {cap} values", bin(cur).count("1"), cap)
        out.append(cur)
    return out


def build_restricted_sets(l_instance: LInstance, eps, cap: int = 200_000,
                          n: int | None = None) -> list:
    """Candidate top sets T^r and right sets R^r for r = 1..ceil(1/eps).

    Values above the arm length can never be a top (right) coordinate inside
    the L, so they are dropped while the sums are formed; every value is a
    multiple of 1/(2n), which keeps the sets small.
    """
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise ParameterError("eps must lie in (0, 1/2]")
    n = l_instance.n if n is None else n
    m = math.ceil(1 / eps)
    if n == 0:
        return [RestrictedSets((Fraction(0),), (Fraction(0),), r) for r in range(1, m + 1)]
    Ts = _side_sets([it.h for it in l_instance.hor], n, l_instance.shape.h_L, m, m, cap)
    Rs = _side_sets([it.w for it in l_instance.ver], n, l_instance.shape.w_L, m, m, cap)
    out = []
    for r in range(1, m + 1):
        T = _bits_to_values(Ts[r - 1], 2 * n)
        R = _bits_to_values(Rs[r - 1], 2 * n)
        bound = size_bound(n, r, eps)
        assert len(T) - 1 <= bound and len(R) - 1 <= bound
        out.append(RestrictedSets(T, R, r))
    return out


def t1_values(heights: Sequence[int], n: int) -> set:
    """Unpruned first-level set {a*h/(2n) : 1 <= a <= 4n^2} (reference for tests)."""
    return {Fraction(a * h, 2 * n) for h in heights for a in range(1, 4 * n * n + 1)}


# --- PTAS and oracle ---------------------------------------------------------

def lpack_ptas(l_instance: LInstance, eps, cap: int = 200_000, cell_cap: int = 20_000_000):
    """Best DP value over all (r_hor, r_ver) level pairs; >= (1 - 2 eps) * optimum."""
    sets = build_restricted_sets(l_instance, eps, cap)
    best, best_pk = -1, None
    for sh, sv in product(sets, sets):
        prof, pk = lpack_exact_dp(l_instance, sh.T, sv.R, cell_cap)
        if better(best, best_pk, prof, pk):
            best, best_pk = prof, pk
    return best, best_pk


def lpack_oracle(l_instance: LInstance, cap: int = 16):
    """Exact optimum over all subset pairs, each checked in normal form."""
    if l_instance.n > cap:
        raise ResourceError(f"oracle limited to {cap} long items, got {l_instance.n}",
                            l_instance.n, cap)
    hor, ver = list(l_instance.hor), list(l_instance.ver)
    N = l_instance.N
    hsubs = []
    for mask in range(1 << len(hor)):
        sel = [hor[k] for k in range(len(hor)) if mask >> k & 1]
        if sum(it.h for it in sel) <= l_instance.shape.h_L:
            hsubs.append(sel)
    vsubs = []
    for mask in range(1 << len(ver)):
        sel = [ver[k] for k in range(len(ver)) if mask >> k & 1]
        if sum(it.w for it in sel) <= l_instance.shape.w_L:
            vsubs.append(sel)
    hsubs.sort(key=lambda s: -_profit(s))
    vsubs.sort(key=lambda s: -_profit(s))
    best, best_pk = -1, None
    for hs in hsubs:
        ph = _profit(hs)
        if vsubs and ph + _profit(vsubs[0]) < best:
            break
        for vs in vsubs:
            tot = ph + _profit(vs)
            if tot < best:
                break
            pk = normalize_l_packing(hs, vs, l_instance.shape)
            if pk is not None and better(best, best_pk, tot, pk):
                best, best_pk = tot, pk
    if best_pk is None:
        best, best_pk = 0, Packing(Rect(0, 0, N, N), ())
    return best, best_pk
