# cython: language_level=3
"""Compiled hot loops. Semantics mirror _kernels_py exactly."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int8_t, uint64_t
from libc.stdlib cimport malloc, calloc, free

cnp.import_array()

NAME = "cython"


def gap_dp_table(sizes, profits, caps):
    """Dense GAP table over capacity vectors.

    Returns (best profit, choice) where choice[i, c] is the bin item i goes to
    in an optimal solution for items 0..i with capacity vector index c, or -1.
    """
    cdef cnp.int64_t[:, :] s = np.ascontiguousarray(sizes, dtype=np.int64)
    cdef cnp.int64_t[:, :] p = np.ascontiguousarray(profits, dtype=np.int64)
    cdef cnp.int64_t[:] C = np.ascontiguousarray(caps, dtype=np.int64)
    cdef Py_ssize_t n = s.shape[0], k = C.shape[0]
    cdef Py_ssize_t S = 1, j, i, c, prev
    cdef int64_t stride[32]
    cdef int64_t dig, cand, best
    if k > 32:
        raise ValueError("too many bins")
    for j in range(k):
        stride[j] = S
        S *= C[j] + 1
    choice_np = np.full((n, S), -1, dtype=np.int8)
    cdef cnp.int8_t[:, :] choice = choice_np
    old_np = np.zeros(S, dtype=np.int64)
    new_np = np.zeros(S, dtype=np.int64)
    cdef cnp.int64_t[:] old = old_np
    cdef cnp.int64_t[:] new = new_np
    cdef cnp.int64_t[:] tmp
    for i in range(n):
        for c in range(S):
            best = old[c]
            for j in range(k):
                dig = (c // stride[j]) % (C[j] + 1)
                if s[i, j] <= dig:
                    cand = old[c - s[i, j] * stride[j]] + p[i, j]
                    if cand > best:
                        best = cand
                        choice[i, c] = <cnp.int8_t>j
            new[c] = best
        tmp = old
        old = new
        new = tmp
    return int(old[S - 1]), choice_np


def lpack_table(hprof, vprof, hnext, hlim, vnext, vlim):
    """Value table V[i, t, j, r] of the L-packing recursion (see lpack.py)."""
    cdef cnp.int64_t[:] hp = np.ascontiguousarray(hprof, dtype=np.int64)
    cdef cnp.int64_t[:] vp = np.ascontiguousarray(vprof, dtype=np.int64)
    cdef cnp.int64_t[:, :] hn = np.ascontiguousarray(hnext, dtype=np.int64)
    cdef cnp.int64_t[:, :] vn = np.ascontiguousarray(vnext, dtype=np.int64)
    cdef cnp.int64_t[:] hl = np.ascontiguousarray(hlim, dtype=np.int64)
    cdef cnp.int64_t[:] vl = np.ascontiguousarray(vlim, dtype=np.int64)
    cdef Py_ssize_t nh = hp.shape[0], nv = vp.shape[0]
    cdef Py_ssize_t KT = hn.shape[1], KR = vn.shape[1]
    cdef Py_ssize_t i, j, t, r
    cdef int64_t best, cand, nx
    V_np = np.zeros((nh + 1, KT, nv + 1, KR), dtype=np.int64)
    cdef cnp.int64_t[:, :, :, :] V = V_np
    for i in range(nh, -1, -1):
        for j in range(nv, -1, -1):
            if i == nh and j == nv:
                continue
            for t in range(KT):
                for r in range(KR):
                    best = 0
                    if i < nh:
                        best = V[i + 1, t, j, r]
                        nx = hn[i, t]
                        if nx >= 0 and r <= hl[i]:
                            cand = hp[i] + V[i + 1, nx, j, r]
                            if cand > best:
                                best = cand
                    if j < nv:
                        cand = V[i, t, j + 1, r]
                        if cand > best:
                            best = cand
                        nx = vn[j, r]
                        if nx >= 0 and t <= vl[j]:
                            cand = vp[j] + V[i, t, j + 1, nx]
                            if cand > best:
                                best = cand
                    V[i, t, j, r] = best
    return V_np


cdef struct Search:
    int W
    int H
    int words
    int m
    uint64_t* grid
    int* ow
    int* oh
    int* nopt
    int* same_prev
    int* placed
    int* px
    int* py
    int* orient
    int64_t nodes
    int64_t budget
    int64_t free_cells
    int64_t need


cdef inline bint fits(Search* S, int x, int y, int w, int h) nogil:
    cdef int yy, b, lo, hi, wlo, whi
    cdef uint64_t mask
    if x + w > S.W or y + h > S.H:
        return False
    for yy in range(y, y + h):
        lo = x
        hi = x + w
        while lo < hi:
            b = lo >> 6
            wlo = lo & 63
            whi = 64 if (hi - (b << 6)) >= 64 else hi - (b << 6)
            if whi - wlo == 64:
                mask = <uint64_t>0xFFFFFFFFFFFFFFFF
            else:
                mask = ((<uint64_t>1 << (whi - wlo)) - 1) << wlo
            if S.grid[yy * S.words + b] & mask:
                return False
            lo = (b << 6) + whi
    return True


cdef inline void paint(Search* S, int x, int y, int w, int h) nogil:
    cdef int yy, b, lo, hi, wlo, whi
    cdef uint64_t mask
    for yy in range(y, y + h):
        lo = x
        hi = x + w
        while lo < hi:
            b = lo >> 6
            wlo = lo & 63
            whi = 64 if (hi - (b << 6)) >= 64 else hi - (b << 6)
            if whi - wlo == 64:
                mask = <uint64_t>0xFFFFFFFFFFFFFFFF
            else:
                mask = ((<uint64_t>1 << (whi - wlo)) - 1) << wlo
            S.grid[yy * S.words + b] ^= mask
            lo = (b << 6) + whi


cdef inline bint cell_set(Search* S, int x, int y) nogil:
    return (S.grid[y * S.words + (x >> 6)] >> (x & 63)) & 1


cdef int rec(Search* S, int pos, int left) nogil:
    # 1 found, 0 exhausted, -1 budget
    cdef int x, y, i, o, w, h, res
    if left == 0:
        return 1
    S.nodes += 1
    if S.nodes > S.budget:
        return -1
    if S.free_cells < S.need:
        return 0
    while pos < S.W * S.H:
        if not cell_set(S, pos % S.W, pos // S.W):
            break
        pos += 1
    if pos >= S.W * S.H:
        return 0
    x = pos % S.W
    y = pos // S.W
    for i in range(S.m):
        if S.placed[i]:
            continue
        if S.same_prev[i] and not S.placed[i - 1]:
            continue
        for o in range(S.nopt[i]):
            w = S.ow[2 * i + o]
            h = S.oh[2 * i + o]
            if fits(S, x, y, w, h):
                paint(S, x, y, w, h)
                S.placed[i] = 1
                S.px[i] = x
                S.py[i] = y
                S.orient[i] = o
                S.free_cells -= w * h
                S.need -= w * h
                res = rec(S, pos + 1, left - 1)
                S.free_cells += w * h
                S.need += w * h
                S.placed[i] = 0
                paint(S, x, y, w, h)
                if res != 0:
                    return res
    # leave this cell empty for good
    paint(S, x, y, 1, 1)
    S.free_cells -= 1
    res = rec(S, pos + 1, left)
    S.free_cells += 1
    paint(S, x, y, 1, 1)
    return res


def place_search(int W, int H, opts, same_prev, long budget):
    """Exact feasibility of packing all items into a W x H grid box.

    opts[i] is a list of one or two (w, h) orientations. Returns
    (status, positions) with status 1 = packed, 0 = infeasible,
    -1 = node budget exhausted; positions[i] = (x, y, orientation index).
    """
    cdef Search S
    cdef int m = len(opts), i
    cdef int64_t free_cells = <int64_t>W * H
    S.W = W
    S.H = H
    S.words = (W + 63) // 64
    S.m = m
    S.nodes = 0
    S.budget = budget
    S.grid = <uint64_t*>calloc(max(1, S.words * H), sizeof(uint64_t))
    S.ow = <int*>calloc(2 * max(m, 1), sizeof(int))
    S.oh = <int*>calloc(2 * max(m, 1), sizeof(int))
    S.nopt = <int*>calloc(max(m, 1), sizeof(int))
    S.same_prev = <int*>calloc(max(m, 1), sizeof(int))
    S.placed = <int*>calloc(max(m, 1), sizeof(int))
    S.px = <int*>calloc(max(m, 1), sizeof(int))
    S.py = <int*>calloc(max(m, 1), sizeof(int))
    S.orient = <int*>calloc(max(m, 1), sizeof(int))
    S.need = 0
    try:
        for i in range(m):
            o = opts[i]
            S.nopt[i] = len(o)
            S.ow[2 * i] = o[0][0]
            S.oh[2 * i] = o[0][1]
            if len(o) > 1:
                S.ow[2 * i + 1] = o[1][0]
                S.oh[2 * i + 1] = o[1][1]
            S.same_prev[i] = 1 if (i > 0 and same_prev[i]) else 0
            S.need += o[0][0] * o[0][1]
        S.free_cells = free_cells
        with nogil:
            res = rec(&S, 0, m)
        if res == 1:
            return 1, [(S.px[i], S.py[i], S.orient[i]) for i in range(m)], S.nodes
        return res, None, S.nodes
    finally:
        free(S.grid)
        free(S.ow)
        free(S.oh)
        free(S.nopt)
        free(S.same_prev)
        free(S.placed)
        free(S.px)
        free(S.py)
        free(S.orient)
