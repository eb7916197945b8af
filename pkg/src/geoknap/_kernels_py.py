"""Pure-Python kernels; used when the compiled extension is unavailable."""
import sys

import numpy as np

NAME = "python"


def gap_dp_table(sizes, profits, caps):
    s = np.asarray(sizes, dtype=np.int64)
    p = np.asarray(profits, dtype=np.int64)
    C = [int(c) for c in caps]
    n, k = s.shape if s.size else (len(s), len(C))
    strides, S = [], 1
    for c in C:
        strides.append(S)
        S *= c + 1
    choice = np.full((n, S), -1, dtype=np.int8)
    old = np.zeros(S, dtype=np.int64)
    # per-bin digit of every flat capacity index
    idx = np.arange(S, dtype=np.int64)
    digits = [(idx // strides[j]) % (C[j] + 1) for j in range(k)]
    for i in range(n):
        new = old.copy()
        ch = choice[i]
        for j in range(k):
            sz = int(s[i, j])
            ok = digits[j] >= sz
            if not ok.any():
                continue
            src = np.where(ok, idx - sz * strides[j], 0)
            cand = np.where(ok, old[src] + int(p[i, j]), -1)
            better = cand > new
            new = np.where(better, cand, new)
            ch[better] = j
        old = new
    return int(old[S - 1]), choice


def lpack_table(hprof, vprof, hnext, hlim, vnext, vlim):
    hp = [int(v) for v in hprof]
    vp = [int(v) for v in vprof]
    hn = np.asarray(hnext, dtype=np.int64).tolist()
    vn = np.asarray(vnext, dtype=np.int64).tolist()
    hl = [int(v) for v in hlim]
    vl = [int(v) for v in vlim]
    nh, nv = len(hp), len(vp)
    KT = len(hn[0]) if nh else np.asarray(hnext).shape[1]
    KR = len(vn[0]) if nv else np.asarray(vnext).shape[1]
    V = np.zeros((nh + 1, KT, nv + 1, KR), dtype=np.int64)
    for i in range(nh, -1, -1):
        for j in range(nv, -1, -1):
            if i == nh and j == nv:
                continue
            cur = V[i, :, j, :]
            for t in range(KT):
                for r in range(KR):
                    best = 0
                    if i < nh:
                        best = V[i + 1, t, j, r]
                        nx = hn[i][t]
                        if nx >= 0 and r <= hl[i]:
                            best = max(best, hp[i] + V[i + 1, nx, j, r])
                    if j < nv:
                        best = max(best, V[i, t, j + 1, r])
                        nx = vn[j][r]
                        if nx >= 0 and t <= vl[j]:
                            best = max(best, vp[j] + V[i, t, j + 1, nx])
                    cur[t, r] = best
    return V


class _Budget(Exception):
    pass


def place_search(W, H, opts, same_prev, budget):
    m = len(opts)
    rows = [0] * H
    placed = [False] * m
    pos_out = [None] * m
    state = {"nodes": 0, "free": W * H, "need": sum(o[0][0] * o[0][1] for o in opts)}
    sp = [bool(same_prev[i]) and i > 0 for i in range(m)]

    def fits(x, y, w, h):
        if x + w > W or y + h > H:
            return False
        mask = ((1 << w) - 1) << x
        return all(not (rows[yy] & mask) for yy in range(y, y + h))

    def paint(x, y, w, h):
        mask = ((1 << w) - 1) << x
        for yy in range(y, y + h):
            rows[yy] ^= mask

    def rec(pos, left):
        if left == 0:
            return True
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _Budget
        if state["free"] < state["need"]:
            return False
        total = W * H
        while pos < total and (rows[pos // W] >> (pos % W)) & 1:
            pos += 1
        if pos >= total:
            return False
        x, y = pos % W, pos // W
        for i in range(m):
            if placed[i] or (sp[i] and not placed[i - 1]):
                continue
            for o, (w, h) in enumerate(opts[i]):
                if fits(x, y, w, h):
                    paint(x, y, w, h)
                    placed[i] = True
                    pos_out[i] = (x, y, o)
                    state["free"] -= w * h
                    state["need"] -= w * h
                    ok = rec(pos + 1, left - 1)
                    state["free"] += w * h
                    state["need"] += w * h
                    placed[i] = False
                    paint(x, y, w, h)
                    if ok:
                        return True
        paint(x, y, 1, 1)
        state["free"] -= 1
        ok = rec(pos + 1, left)
        state["free"] += 1
        paint(x, y, 1, 1)
        return ok

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, W * H + m + 1000))
    try:
        found = rec(0, m)
    except _Budget:
        return -1, None, state["nodes"]
    finally:
        sys.setrecursionlimit(old)
    if found:
        return 1, list(pos_out), state["nodes"]
    return 0, None, state["nodes"]
