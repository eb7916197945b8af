"""Benchmark harness: solve a corpus in several modes and write CSV rows."""
from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .core import Instance, ParameterError
from .oracles import brute_force_oracle
from .solvers import solve_cardinality, solve_rotations, solve_weighted

HEADER = ["instance", "mode", "n", "N", "profit", "oracle", "ratio", "seconds"]
MODES = ("card", "weighted", "rotations")


def _solve(inst: Instance, mode: str, eps):
    if mode == "card":
        return solve_cardinality(inst, eps)
    if mode == "weighted":
        return solve_weighted(inst, eps)
    return solve_rotations(Instance(inst.N, inst.items, True), eps)


def _one(job):
    name, inst, mode, eps, oracle_cap = job
    t0 = time.perf_counter()
    rep = _solve(inst, mode, eps)
    dt = time.perf_counter() - t0
    oracle = ratio = ""
    if len(inst.items) <= oracle_cap:
        target = Instance(inst.N, inst.items, True) if mode == "rotations" else inst
        op, _ = brute_force_oracle(target, cap=oracle_cap)
        oracle = op
        if op > 0:
            ratio = f"{float(Fraction(rep.profit, op)):.6f}"
    return [name, mode, len(inst.items), inst.N, rep.profit, oracle, ratio, f"{dt:.4f}"]


def bench(corpus, modes=("card",), eps=Fraction(1, 13), oracle_cap: int = 8, jobs: int = 1) -> list:
    """Rows for every (instance, mode); corpus is a list of (name, Instance)."""
    for m in modes:
        if m not in MODES:
            raise ParameterError(f"unknown mode {m!r}; choose from {MODES}")
    work = [(name, inst, m, Fraction(eps), oracle_cap) for name, inst in corpus for m in modes]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_one, work))
    return [_one(w) for w in work]


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    w.writerows(rows)
    return buf.getvalue()
