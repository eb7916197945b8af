"""Shared random generators for packings and instances used across the suite."""
from __future__ import annotations

import random
import sys
from contextlib import contextmanager

import pytest

from geoknap import kernels
from geoknap.core import Instance, Item, Packing, Placement, Rect
from geoknap.lpack import LInstance


def random_packing(rng: random.Random, N: int, tries: int = 60, maxside=None, thin=None,
                   max_profit: int = 20):
    """Rejection-sampled valid packing of the N x N knapsack. Returns (items, packing)."""
    items, pls, rects = [], [], []
    for _ in range(tries):
        if thin:
            a, b = rng.randint(1, thin), rng.randint(1, N)
            w, h = (a, b) if rng.random() < .5 else (b, a)
        else:
            w, h = rng.randint(1, maxside or N), rng.randint(1, maxside or N)
        x, y = rng.randint(0, N - w), rng.randint(0, N - h)
        r = Rect(x, y, w, h)
        if any(r.overlaps(q) for q in rects):
            continue
        i = len(items)
        items.append(Item(i, w, h, rng.randint(1, max_profit)))
        pls.append(Placement(i, x, y))
        rects.append(r)
    return items, Packing(Rect(0, 0, N, N), pls)


def thin_packing(rng: random.Random, N: int, tries: int, full_cols: int = 0):
    """Unit-width skinny items (plus optional full-height columns), unit profits."""
    items, pls, rects = [], [], []
    for k in range(tries):
        if k < full_cols:
            w, h = 1, N
        else:
            b = rng.randint(1, N)
            w, h = (1, b) if rng.random() < .5 else (b, 1)
        x, y = rng.randint(0, N - w), rng.randint(0, N - h)
        r = Rect(x, y, w, h)
        if any(r.overlaps(q) for q in rects):
            continue
        i = len(items)
        items.append(Item(i, w, h))
        pls.append(Placement(i, x, y))
        rects.append(r)
    return items, Packing(Rect(0, 0, N, N), pls)


def long_packing(rng: random.Random, N: int, tries: int = 30):
    """Packing of long items only: horizontals wider than N/2, verticals taller."""
    items, pls, rects = [], [], []
    for _ in range(tries):
        if rng.random() < .5:
            w, h = rng.randint(N // 2 + 1, N), rng.randint(1, max(1, N // 5))
        else:
            w, h = rng.randint(1, max(1, N // 5)), rng.randint(N // 2 + 1, N)
        x, y = rng.randint(0, N - w), rng.randint(0, N - h)
        r = Rect(x, y, w, h)
        if any(r.overlaps(q) for q in rects):
            continue
        i = len(items)
        items.append(Item(i, w, h, rng.randint(1, 10)))
        pls.append(Placement(i, x, y))
        rects.append(r)
    return items, Packing(Rect(0, 0, N, N), pls)


def random_l_instance(rng: random.Random, nmax: int, Nmax: int) -> LInstance:
    N = rng.randint(2, Nmax)
    items = []
    for i in range(rng.randint(0, nmax)):
        if rng.random() < .5:
            w, h = rng.randint(N // 2 + 1, N), rng.randint(1, max(1, N // 3))
        else:
            w, h = rng.randint(1, max(1, N // 3)), rng.randint(N // 2 + 1, N)
        items.append(Item(i, w, h, rng.randint(1, 10)))
    return LInstance.from_instance(Instance(N, items), rng.randint(0, N), rng.randint(0, N))


def random_instance(rng: random.Random, n: int, N: int, unit: bool = True, rotations: bool = False):
    items = [Item(i, rng.randint(1, N), rng.randint(1, N), 1 if unit else rng.randint(1, 20))
             for i in range(n)]
    return Instance(N, items, rotations)


@contextmanager
def python_kernels():
    """Temporarily route every kernel call to the pure-Python implementation."""
    py = kernels.backend("python")
    saved = (kernels.gap_dp_table, kernels.lpack_table, kernels.place_search)
    kernels.gap_dp_table, kernels.lpack_table, kernels.place_search = (
        py.gap_dp_table, py.lpack_table, py.place_search)
    try:
        yield
    finally:
        kernels.gap_dp_table, kernels.lpack_table, kernels.place_search = saved


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
