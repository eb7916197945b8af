"""Maximum generalized assignment with a constant number of bins.

Three solvers share one instance type: full enumeration, the dense
capacity-vector DP (exact, pseudo-polynomial), the same DP on a rounded
instance with (1+eps)-augmented bins, and the guessing PTAS that respects the
original capacities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .core import ParameterError, ParseError, ResourceError

INF = math.inf


@dataclass(frozen=True)
class GapInstance:
    capacities: tuple
    sizes: tuple    # sizes[i][j]; math.inf marks "item i may not use bin j"
    profits: tuple  # profits[i][j]

    def __post_init__(self):
        object.__setattr__(self, "capacities", tuple(self.capacities))
        object.__setattr__(self, "sizes", tuple(tuple(r) for r in self.sizes))
        object.__setattr__(self, "profits", tuple(tuple(r) for r in self.profits))
        k = len(self.capacities)
        if k < 1:
            raise ParameterError("need at least one bin")
        if len(self.sizes) != len(self.profits):
            raise ParameterError("sizes and profits disagree on item count")
        for i, (s, p) in enumerate(zip(self.sizes, self.profits)):
            if len(s) != k or len(p) != k:
                raise ParameterError(f"item {i}: expected {k} sizes and profits")
            if any(v < 0 for v in s) or any(v < 0 for v in p):
                raise ParameterError(f"item {i}: negative size or profit")
        if any(c < 0 for c in self.capacities):
            raise ParameterError("negative capacity")

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def k(self) -> int:
        return len(self.capacities)

    @classmethod
    def from_dict(cls, d) -> "GapInstance":
        try:
            caps = [int(c) for c in d["capacities"]]
            sizes = [[int(v) for v in row] for row in d["sizes"]]
            profits = [[int(v) for v in row] for row in d["profits"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"gap instance: {e}") from None
        try:
            return cls(caps, sizes, profits)
        except ParameterError as e:
            raise ParseError(f"gap instance: {e}") from None

    def profit_of(self, assignment: Sequence) -> int:
        return sum(self.profits[i][j] for i, j in enumerate(assignment) if j is not None)

    def loads(self, assignment: Sequence) -> list:
        load = [0] * self.k
        for i, j in enumerate(assignment):
            if j is not None:
                load[j] += self.sizes[i][j]
        return load

    def feasible(self, assignment: Sequence, factor=1) -> bool:
        return all(l <= factor * c for l, c in zip(self.loads(assignment), self.capacities))


def gap_oracle(inst: GapInstance, cap: int = 2_000_000):
    """Exact optimum by enumerating every item-to-bin assignment."""
    n, k = inst.n, inst.k
    if (k + 1) ** n > cap:
        raise ResourceError(f"oracle needs {(k + 1) ** n} assignments", (k + 1) ** n, cap)
    best = [0, (None,) * n]
    cur = [None] * n
    load = [0] * k
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + max(inst.profits[i], default=0)

    def rec(i, prof):
        if prof + suffix[i] < best[0]:
            return
        if i == n:
            if prof > best[0]:
                best[0], best[1] = prof, tuple(cur)
            return
        for j in range(k):
            s = inst.sizes[i][j]
            if load[j] + s <= inst.capacities[j]:
                load[j] += s
                cur[i] = j
                rec(i + 1, prof + inst.profits[i][j])
                load[j] -= s
        cur[i] = None
        rec(i + 1, prof)

    rec(0, 0)
    return best[0], best[1]


def _int_caps(caps) -> list:
    return [int(math.floor(c)) for c in caps]


def _dp(sizes: list, profits: list, caps: list, cap_cells: int):
    """Run the dense DP kernel; sizes may contain inf (never fits).

    Each bin's axis is shrunk first: capacity is clipped to the total size of
    the items that can enter it, and sizes and capacity are divided by the
    gcd of those sizes. Neither step changes which item sets fit.
    """
    n, k = len(sizes), len(caps)
    if n == 0:
        return 0, ()
    fits = [[row[j] for row in sizes if row[j] != INF and row[j] <= caps[j]] for j in range(k)]
    div = [math.gcd(*[int(v) for v in f]) or 1 for f in fits]
    caps = [min(c, int(sum(f))) // g for c, f, g in zip(caps, fits, div)]
    cells = 1
    for c in caps:
        cells *= c + 1
    if cells > cap_cells or cells * n > 40 * cap_cells:
        raise ResourceError(f"GAP table needs {cells} cells per item", cells, cap_cells)
    big = max(caps) + 1
    s = np.array([[big if (v == INF or v > c * g) else int(v) // g
                   for v, c, g in zip(row, caps, div)] for row in sizes], dtype=np.int64)
    p = np.array([[int(v) for v in row] for row in profits], dtype=np.int64)
    best, choice = kernels.gap_dp_table(s, p, np.array(caps, dtype=np.int64))
    strides, S = [], 1
    for c in caps:
        strides.append(S)
        S *= c + 1
    c = S - 1
    assign = [None] * n
    for i in range(n - 1, -1, -1):
        j = int(choice[i, c])
        if j >= 0:
            assign[i] = j
            c -= int(s[i, j]) * strides[j]
    return best, tuple(assign)


def gap_dp(inst: GapInstance, cap_cells: int = 4_000_000):
    """Exact optimum via P[i, c_1..c_k] = max(P[i-1, c], max_j p_ij + P[i-1, c - s_ij e_j])."""
    caps = _int_caps(inst.capacities)
    return _dp([list(r) for r in inst.sizes], [list(r) for r in inst.profits], caps, cap_cells)


def gap_augmented(inst: GapInstance, eps, capacities: Sequence | None = None,
                  cap_cells: int = 4_000_000):
    """Solve the rounded instance; the result may exceed bins by a (1+eps) factor.

    With mu_j = eps*C_j/n, sizes become ceil(s/mu_j) and bins floor((1+eps)C_j/mu_j),
    so every set that fit the original bin still fits, and anything that fits
    the rounded bin uses at most (1+eps)C_j. Bins with eps*C_j < n are left
    unrounded. `capacities` overrides the instance's (rationals allowed).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ParameterError("eps must be positive")
    caps = [Fraction(c) for c in (inst.capacities if capacities is None else capacities)]
    n = inst.n
    if n == 0:
        return 0, ()
    sizes = [[0] * inst.k for _ in range(n)]
    rcaps = []
    for j, C in enumerate(caps):
        if eps * C < n:
            rcaps.append(int(math.floor(C)))
            for i in range(n):
                sizes[i][j] = inst.sizes[i][j]
        else:
            mu = eps * C / n
            rcaps.append(int(math.floor((1 + eps) * C / mu)))
            for i in range(n):
                s = inst.sizes[i][j]
                sizes[i][j] = INF if s == INF else int(math.ceil(Fraction(s) / mu))
    _, assign = _dp(sizes, [list(r) for r in inst.profits], rcaps, cap_cells)
    return inst.profit_of(assign), assign


def gap_ptas(inst: GapInstance, eps, budget: int = 200_000, cap_cells: int = 4_000_000):
    """(1-3eps)-approximation under the original capacities.

    For each bin a set X_j of at most 1/eps^2 items is guessed; every guessed
    item must be larger than eps times the room left after the guess, which
    is the shape of the sets the analysis builds, so nothing is lost by
    skipping other guesses. The rest goes through `gap_augmented` with bins
    (1-eps)*residual, which after (1+eps) augmentation still fits.
    """
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 3):
        raise ParameterError("eps must lie in (0, 1/3)")
    n, k = inst.n, inst.k
    if n == 0:
        return 0, ()
    per_bin = int(1 / (eps * eps))
    caps = inst.capacities
    maxp = [max(r) for r in inst.profits]
    total_max = sum(maxp)
    best = [-1, None]
    guess = [None] * n
    load = [0] * k
    count = [0] * k
    state = {"leaves": 0}

    def evaluate(pX):
        resid = [caps[j] - load[j] for j in range(k)]
        for i in range(n):
            j = guess[i]
            if j is not None and not inst.sizes[i][j] > eps * resid[j]:
                return
        rest_bound = total_max - sum(maxp[i] for i in range(n) if guess[i] is not None)
        if pX + rest_bound <= best[0]:
            return
        state["leaves"] += 1
        if state["leaves"] > budget:
            raise ResourceError(f"PTAS guess loop exceeded budget {budget}", None, budget)
        rest = [i for i in range(n) if guess[i] is None]
        sub = GapInstance(caps, [inst.sizes[i] for i in rest], [inst.profits[i] for i in rest])
        pr, a = gap_augmented(sub, eps, [(1 - eps) * r for r in resid], cap_cells)
        full = list(guess)
        for i, j in zip(rest, a):
            full[i] = j
        tot = pX + pr
        if tot > best[0]:
            best[0], best[1] = tot, tuple(full)

    # identical items are interchangeable: only guess them in non-increasing bin order
    order = sorted(range(n), key=lambda i: (inst.sizes[i], inst.profits[i], i))
    twin = [k_ > 0 and inst.sizes[order[k_]] == inst.sizes[order[k_ - 1]]
            and inst.profits[order[k_]] == inst.profits[order[k_ - 1]] for k_ in range(n)]

    def rec(pos, pX):
        if pos == n:
            evaluate(pX)
            return
        i = order[pos]
        top = k
        if twin[pos]:
            prev = guess[order[pos - 1]]
            top = -1 if prev is None else prev + 1
        rec(pos + 1, pX)
        for j in range(max(top, 0) if twin[pos] else k):
            s = inst.sizes[i][j]
            if count[j] < per_bin and load[j] + s <= caps[j]:
                guess[i] = j
                load[j] += s
                count[j] += 1
                rec(pos + 1, pX + inst.profits[i][j])
                count[j] -= 1
                load[j] -= s
                guess[i] = None

    rec(0, 0)
    profit, assign = best
    if not inst.feasible(assign):
        raise AssertionError("PTAS produced an over-full bin")
    return profit, assign
