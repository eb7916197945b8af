"""Random instance generation with a few named profiles."""
from __future__ import annotations

import random

from .core import Instance, Item, ParameterError

# class name -> share of the items; exact counts use largest remainders
PROFILES = {
    "uniform": None,
    "long-heavy": {"long": 1.0},
    "small-only": {"small": 1.0},
    "mixed-skewed": {"long": 0.3, "medium": 0.2, "small": 0.5},
}


def class_counts(shares: dict, n: int) -> dict:
    raw = {k: v * n for k, v in shares.items()}
    counts = {k: int(v) for k, v in raw.items()}
    rest = n - sum(counts.values())
    for k in sorted(raw, key=lambda k: (-(raw[k] - counts[k]), k))[:rest]:
        counts[k] += 1
    return counts


def item_class(w: int, h: int, N: int) -> str:
    if 2 * max(w, h) > N:
        return "long"
    if 10 * max(w, h) <= N:
        return "small"
    return "medium"


def _draw(rng: random.Random, cls: str, N: int):
    if cls == "long":
        a = rng.randint(N // 2 + 1, N)
        b = rng.randint(1, max(1, N // 2))
        return (a, b) if rng.random() < 0.5 else (b, a)
    if cls == "small":
        hi = max(1, N // 10)
        return rng.randint(1, hi), rng.randint(1, hi)
    lo, hi = N // 10 + 1, max(N // 10 + 1, N // 2)
    return rng.randint(lo, hi), rng.randint(lo, hi)


def gen_instance(n: int, N: int, seed: int = 0, profile: str = "uniform",
                 rotations: bool = False, max_profit: int = 20) -> Instance:
    """Deterministic under (n, N, seed, profile)."""
    if profile not in PROFILES:
        raise ParameterError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    if n < 0 or N < 1:
        raise ParameterError("need n >= 0 and N >= 1")
    if profile in ("long-heavy", "mixed-skewed") and N < 2:
        raise ParameterError("long items need N >= 2")
    if profile == "mixed-skewed" and N < 10:
        raise ParameterError("mixed-skewed needs N >= 10 so every class is non-empty")
    rng = random.Random(f"{profile}:{seed}:{n}:{N}")
    if PROFILES[profile] is None:
        sizes = [(rng.randint(1, N), rng.randint(1, N)) for _ in range(n)]
        profits = [rng.randint(1, max_profit) for _ in range(n)]
    else:
        classes = [c for c, k in sorted(class_counts(PROFILES[profile], n).items()) for _ in range(k)]
        rng.shuffle(classes)
        sizes = [_draw(rng, c, N) for c in classes]
        # skew: long items are worth more
        profits = [rng.randint(1, max_profit) * (3 if c == "long" and profile == "mixed-skewed" else 1)
                   for c in classes]
    items = [Item(i, w, h, p) for i, ((w, h), p) in enumerate(zip(sizes, profits))]
    return Instance(N, items, rotations)
