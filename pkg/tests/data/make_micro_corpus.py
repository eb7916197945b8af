"""Regenerate micro_corpus.json: 100 unit-profit instances with n <= 7, N <= 15.

The oracle optimum is computed once here and frozen next to each instance.
"""
import json
import random
from pathlib import Path

from geoknap.core import Instance, Item, instance_to_dict
from geoknap.oracles import brute_force_oracle


def main(seed: int = 2024, count: int = 100):
    rng = random.Random(seed)
    out = []
    for k in range(count):
        N = rng.randint(6, 15)
        n = rng.randint(1, 7)
        inst = Instance(N, [Item(i, rng.randint(1, N), rng.randint(1, N)) for i in range(n)])
        opt, _ = brute_force_oracle(inst)
        out.append({"name": f"micro-{k:03d}", "instance": instance_to_dict(inst), "oracle": opt})
    path = Path(__file__).with_name("micro_corpus.json")
    path.write_text(json.dumps({"seed": seed, "instances": out}, indent=1) + "\n")


if __name__ == "__main__":
    main()
