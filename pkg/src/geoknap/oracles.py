"""Exact optima for tiny instances: subset enumeration and a grid integer program."""
from __future__ import annotations

import numpy as np

from .core import Instance, Packing, Placement, Rect, ResourceError, better, checked
from .placement import exact_pack


def brute_force_oracle(instance: Instance, cap: int = 8, budget: int = 100_000_000):
    """Optimum by trying subsets in decreasing profit order; returns (profit, Packing).

    Each subset is decided by the exhaustive placement search, so the first
    feasible subset in that order is optimal.
    """
    items = [it for it in instance.items]
    n, N = len(items), instance.N
    if n > cap:
        raise ResourceError(f"oracle limited to {cap} items, got {n}", n, cap)
    rot = instance.rotations
    cand = [it for it in items if it.w <= N and it.h <= N]
    subsets = []
    for mask in range(1 << len(cand)):
        sel = [cand[k] for k in range(len(cand)) if mask >> k & 1]
        if sum(it.area for it in sel) <= N * N:
            subsets.append((sum(it.p for it in sel), mask, sel))
    subsets.sort(key=lambda t: (-t[0], t[1]))
    infeasible = []
    best, best_pk = None, None
    for prof, mask, sel in subsets:
        if best is not None and prof < best:
            break
        if any(mask & bad == bad for bad in infeasible):
            continue
        pls = exact_pack(sel, N, N, rot, budget=budget)
        if pls is None:
            infeasible.append(mask)
            continue
        pk = Packing(Rect(0, 0, N, N), pls)
        if best is None or better(best, best_pk, prof, pk):
            best, best_pk = prof, pk
    if best is None:
        best, best_pk = 0, Packing(Rect(0, 0, N, N), ())
    return best, checked(instance, best_pk, rot)


def grid_ilp_oracle(instance: Instance, max_N: int = 8):
    """Optimum over all integer positions via a 0/1 program; returns (profit, Packing)."""
    from scipy.optimize import Bounds, LinearConstraint, milp

    N = instance.N
    if N > max_N:
        raise ResourceError(f"grid program limited to N <= {max_N}", N, max_N)
    cols = []  # (item index, x, y, rotated, w, h)
    for k, it in enumerate(instance.items):
        orients = [(it.w, it.h, False)]
        if instance.rotations and it.w != it.h:
            orients.append((it.h, it.w, True))
        for w, h, r in orients:
            for x in range(N - w + 1):
                for y in range(N - h + 1):
                    cols.append((k, x, y, r, w, h))
    if not cols:
        return 0, Packing(Rect(0, 0, N, N), ())
    nv = len(cols)
    n = len(instance.items)
    A = np.zeros((n + N * N, nv))
    for v, (k, x, y, r, w, h) in enumerate(cols):
        A[k, v] = 1
        for cx in range(x, x + w):
            for cy in range(y, y + h):
                A[n + cy * N + cx, v] = 1
    c = -np.array([instance.items[k].p for k, *_ in cols], dtype=float)
    res = milp(c, constraints=LinearConstraint(A, -np.inf, 1), integrality=np.ones(nv),
               bounds=Bounds(0, 1))
    if res.x is None:
        raise RuntimeError(f"grid program failed: {res.message}")
    pls = []
    for v in np.flatnonzero(res.x > 0.5):
        k, x, y, r, w, h = cols[v]
        pls.append(Placement(instance.items[k].id, x, y, r))
    pk = checked(instance, Packing(Rect(0, 0, N, N), pls), instance.rotations)
    return pk.profit(instance), pk
