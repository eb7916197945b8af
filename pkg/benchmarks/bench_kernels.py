"""Time the compiled kernels against the pure-Python fallback.

Each workload runs once per backend on identical inputs. Results must match;
the script prints seconds per backend and the speedup.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time
from contextlib import contextmanager

from geoknap import kernels
from geoknap.core import Instance, Item
from geoknap.gap import GapInstance, gap_dp
from geoknap.lpack import LInstance, full_grid, lpack_exact_dp
from geoknap.placement import exact_pack

NAMES = ("gap_dp_table", "lpack_table", "place_search")


@contextmanager
def use(name):
    mod = kernels.backend(name)
    saved = [getattr(kernels, k) for k in NAMES]
    for k in NAMES:
        setattr(kernels, k, getattr(mod, k))
    try:
        yield
    finally:
        for k, v in zip(NAMES, saved):
            setattr(kernels, k, v)


def gap_work():
    rng = random.Random(1)
    cases = [GapInstance([rng.randint(150, 250) for _ in range(2)],
                         [[rng.randint(5, 60) for _ in range(2)] for _ in range(18)],
                         [[rng.randint(1, 9) for _ in range(2)] for _ in range(18)])
             for _ in range(20)]
    return lambda: [gap_dp(g)[0] for g in cases]


def lpack_work():
    rng = random.Random(2)
    cases = []
    for _ in range(4):
        N = 60
        items = [Item(i, rng.randint(31, N), rng.randint(1, 12)) if i % 2 else
                 Item(i, rng.randint(1, 12), rng.randint(31, N)) for i in range(10)]
        cases.append(LInstance.from_instance(Instance(N, items), 25, 25))
    return lambda: [lpack_exact_dp(li, full_grid(li.N), full_grid(li.N))[0] for li in cases]


def place_work():
    rng = random.Random(3)
    cases = []
    for _ in range(40):
        items = [Item(i, rng.randint(1, 5), rng.randint(1, 5)) for i in range(6)]
        cases.append(items)
    return lambda: [exact_pack(items, 8, 8) is not None for items in cases]


def timed(fn, repeat):
    best, out = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled_kernels is None:
        print("compiled kernels not built; nothing to compare")
        return 1
    print(f"{'workload':<10} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for name, make in (("gap_dp", gap_work), ("lpack", lpack_work), ("placement", place_work)):
        fn = make()
        with use("cython"):
            tc, rc = timed(fn, args.repeat)
        with use("python"):
            tp, rp = timed(fn, args.repeat)
        assert rc == rp, f"{name}: backends disagree"
        print(f"{name:<10} {tc:>10.4f} {tp:>10.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
