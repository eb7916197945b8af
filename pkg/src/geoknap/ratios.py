"""Exact reproduction of the cardinality case-analysis LPs and ratio arithmetic.

Variables x1..x4 are the shares of the optimum that are (long and thin),
(long, not thin), (short and thin), (short, not thin). Each bank row says
that some candidate packing reaches z >= sum_k c_k x_k once the epsilon
terms are dropped.
"""
from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .core import ParameterError

INEQUALITIES = {
    1: (F(3, 4), F(3, 4), F(1), F(1, 2)),
    2: (F(3, 4), F(3, 4), F(0), F(0)),
    3: (F(1, 2), F(1, 2), F(3, 4), F(3, 4)),
    4: (F(0), F(1), F(0), F(1)),
    5: (F(1, 2), F(1), F(0), F(1, 2)),
    6: (F(3, 4), F(3, 4), F(1), F(0)),
    7: (F(3, 4), F(0), F(1), F(5, 6)),
    8: (F(3, 4), F(3, 4), F(5, 12), F(5, 12)),
    9: (F(3, 4), F(0), F(1), F(2, 3)),
    10: (F(3, 4), F(3, 4), F(1), F(7, 48)),
    11: (F(3, 4), F(3, 4), F(1), F(5, 36)),
    12: (F(1, 2), F(1, 2), F(1), F(3, 4)),
    13: (F(3, 4), F(0), F(1), F(1)),
}

# case name -> (active rows, dual solution, expected value)
CASES = {
    "1": ((1, 3, 4, 5), {1: F(1, 2), 3: F(1, 2)}, F(5, 8)),
    "2A(i)": ((3, 4, 5, 6, 7), {3: F(17, 54), 5: F(1, 3), 6: F(7, 54), 7: F(2, 9)}, F(127, 216)),
    "2A(ii)": ((3, 4, 5, 6, 8), {3: F(4, 7), 8: F(3, 7)}, F(17, 28)),
    "2A(iii)a": ((3, 4, 5, 9, 10), {3: F(124, 369), 5: F(1, 3), 9: F(2, 9), 10: F(40, 369)},
                 F(215, 369)),
    "2A(iii)b": ((3, 4, 5, 9, 11), {3: F(94, 279), 5: F(1, 3), 9: F(2, 9), 11: F(10, 93)},
                 F(325, 558)),
    "2B": ((2, 4, 5, 12, 13), {2: F(8, 41), 5: F(9, 41), 12: F(18, 41), 13: F(6, 41)}, F(24, 41)),
}


def _solve(a: list, b: list):
    """Gauss-Jordan over Fractions; None if singular."""
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                fac = m[r][col]
                m[r] = [vr - fac * vc for vr, vc in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def minmax_value(rows: Sequence[Sequence], nvars: int | None = None):
    """min z s.t. z >= row.x for all rows, sum x = 1, x >= 0, z >= 0.

    Solved by enumerating the vertices of the feasible polyhedron exactly.
    Returns (z, x).
    """
    rows = [tuple(F(c) for c in r) for r in rows]
    if not rows:
        raise ParameterError("need at least one inequality")
    n = nvars if nvars is not None else len(rows[0])
    if any(len(r) != n for r in rows):
        raise ParameterError("inconsistent row lengths")
    # unknowns: (z, x_1..x_n); constraints written as g.v >= 0
    ineqs = [[F(1)] + [-c for c in r] for r in rows]
    ineqs += [[F(0)] + [F(int(i == k)) for i in range(n)] for k in range(n)]
    ineqs.append([F(1)] + [F(0)] * n)
    eq = [F(0)] + [F(1)] * n
    G = np.array(ineqs, dtype=float)
    E = np.array(eq, dtype=float)
    rhs = np.zeros(n + 1)
    rhs[0] = 1.0
    best = None
    for tight in combinations(range(len(ineqs)), n):
        # float screen first; only near-feasible vertices are solved exactly
        A = np.vstack([E, G[list(tight)]])
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        approx = np.linalg.solve(A, rhs)
        if (G @ approx).min() < -1e-9 or (best is not None and approx[0] > best[0] + 1e-9):
            continue
        sol = _solve([eq] + [ineqs[t] for t in tight], [F(1)] + [F(0)] * n)
        if sol is None:
            continue
        if all(sum(g * v for g, v in zip(row, sol)) >= 0 for row in ineqs):
            if best is None or sol[0] < best[0]:
                best = (sol[0], tuple(sol[1:]))
    return best


def solve_case_lp(active_set: Sequence[int], bank: Mapping[int, Sequence] | None = None) -> F:
    bank = INEQUALITIES if bank is None else bank
    bad = [j for j in active_set if j not in bank]
    if bad:
        raise ParameterError(f"unknown inequality indices {bad}")
    return minmax_value([bank[j] for j in active_set], 4)[0]


def verify_dual(active_set: Sequence[int], duals: Mapping[int, object], w=None,
                bank: Mapping[int, Sequence] | None = None):
    """Check a dual solution of the case LP and return (valid, bound).

    Feasibility: y >= 0, sum y <= 1 and sum_j c_jk y_j + w >= 0 for every k.
    When w is omitted the tightest value w = -min_k sum_j c_jk y_j is used;
    the implied lower bound on the case LP is -w.
    """
    bank = INEQUALITIES if bank is None else bank
    if any(j not in active_set for j in duals):
        raise ParameterError("duals must be indexed by the active set")
    y = {j: F(duals.get(j, 0)) for j in active_set}
    cols = [sum(bank[j][k] * y[j] for j in active_set) for k in range(4)]
    if w is None:
        w = -min(cols)
    w = F(w)
    ok = all(v >= 0 for v in y.values()) and sum(y.values()) <= 1
    ok = ok and all(c + w >= 0 for c in cols)
    return ok, -w


def table() -> list:
    """Rows (case, active set, primal value, dual bound, dual valid, expected)."""
    out = []
    for name, (act, duals, expected) in CASES.items():
        ok, bound = verify_dual(act, duals)
        out.append((name, act, solve_case_lp(act), bound, ok, expected))
    return out


def format_table() -> str:
    lines = [f"{'case':<10} {'rows':<18} {'LP value':>10} {'dual':>10} {'expected':>10}"]
    for name, act, val, bound, ok, exp in table():
        mark = "" if (val == bound == exp and ok) else "  MISMATCH"
        lines.append(f"{name:<10} {','.join(map(str, act)):<18} {str(val):>10} "
                     f"{str(bound):>10} {str(exp):>10}{mark}")
    worst = min(r[2] for r in table())
    lines.append(f"worst case: {worst}  (approximation factor {1 / worst})")
    return "\n".join(lines)


# candidate bounds for the two mixing arguments, as coefficient rows
CARDINALITY_MIX = {
    # (long, short) shares of the optimum
    "L-packing of long items": (F(3, 4), F(0)),
    "container packing after strip removal": (F(1, 2), F(3, 4)),
}

WEIGHTED_MIX = {
    # (LF, SF, LT, ST, small)
    "fat and small": (F(1), F(1), F(0), F(0), F(1)),
    "long thin half": (F(1), F(1, 2), F(1, 2), F(0), F(1)),
    "short thin half": (F(1), F(1, 2), F(0), F(1, 2), F(1)),
    "ring plus shorts": (F(0), F(1, 2), F(3, 4), F(1), F(1)),
}


def worst_case_mixes(bounds: Mapping[str, Mapping] | None = None) -> dict:
    """Adversarial mix of profit classes against the best candidate.

    Each system is min over shares (summing to 1) of the max of its
    candidate bounds. Returns {name: (value, shares)}.
    """
    systems = bounds if bounds is not None else {
        "cardinality": CARDINALITY_MIX, "weighted": WEIGHTED_MIX}
    out = {}
    for name, rows in systems.items():
        z, x = minmax_value(list(rows.values()))
        out[name] = (z, x)
    return out
