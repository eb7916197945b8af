"""geoknap command line: gen, solve, lpack, gap, ratios, verify, render, bench.

Exit codes: 0 ok, 1 other errors (bad parameters or inputs), 2 validation
failure, 3 resource cap hit, 4 parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .core import (GeoknapError, Instance, ParseError, ResourceError, ValidationFailure, dumps,
                   instance_from_dict, instance_to_dict, load_instance, load_packing,
                   packing_to_dict, read_json, validate_packing)

EXIT_OK, EXIT_ERROR, EXIT_INVALID, EXIT_RESOURCE, EXIT_PARSE = 0, 1, 2, 3, 4


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _emit_packing(args, items, packing, rotations) -> None:
    rep = validate_packing(items, packing, rotations)
    if not rep.ok:
        raise ValidationFailure(rep)
    _write(args.out, dumps(packing_to_dict(packing)))


# --- subcommands -------------------------------------------------------------------

def cmd_gen(args) -> int:
    from .generate import gen_instance
    inst = gen_instance(args.n, args.N, args.seed, args.profile, args.rotations)
    _write(args.out, dumps(instance_to_dict(inst)))
    return EXIT_OK


def cmd_solve(args) -> int:
    from .solvers import solve_cardinality, solve_rotations, solve_weighted
    inst = load_instance(args.inp)
    if args.rotations and not inst.rotations:
        inst = Instance(inst.N, inst.items, True)
    if inst.rotations:
        rep = solve_rotations(inst, args.eps, args.oracle)
    elif args.mode == "card":
        rep = solve_cardinality(inst, args.eps, args.oracle)
    else:
        rep = solve_weighted(inst, args.eps, args.oracle)
    _emit_packing(args, inst, rep.packing, inst.rotations)
    summary = {"profit": rep.profit, "best": rep.best_candidate, "candidates": rep.candidates,
               "seed": args.seed}
    if rep.oracle_profit is not None:
        summary.update(oracle=rep.oracle_profit, ratio=str(rep.ratio))
    print(json.dumps(summary, sort_keys=True), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_lpack(args) -> int:
    from .lpack import LInstance, full_grid, lpack_exact_dp, lpack_oracle, lpack_ptas
    raw = read_json(args.inp)
    inst = instance_from_dict(raw)
    try:
        w_l, h_l = int(raw["w_l"]), int(raw["h_l"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("lpack input needs integer fields 'w_l' and 'h_l'") from None
    li = LInstance.from_instance(inst, w_l, h_l)
    if args.oracle:
        prof, pk = lpack_oracle(li)
    elif args.exact:
        g = full_grid(li.N)
        prof, pk = lpack_exact_dp(li, g, g)
    else:
        prof, pk = lpack_ptas(li, args.eps)
    _emit_packing(args, li.items, pk, False)
    print(json.dumps({"profit": prof}), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_gap(args) -> int:
    from .gap import GapInstance, gap_augmented, gap_dp, gap_oracle, gap_ptas
    inst = GapInstance.from_dict(read_json(args.inp))
    if args.method == "dp":
        prof, assign = gap_dp(inst)
    elif args.method == "oracle":
        prof, assign = gap_oracle(inst)
    elif args.method == "augmented":
        prof, assign = gap_augmented(inst, args.eps)
    else:
        prof, assign = gap_ptas(inst, args.eps)
    out = {"profit": prof, "assignment": list(assign), "loads": inst.loads(assign)}
    _write(args.out, json.dumps(out) + "\n")
    return EXIT_OK


def cmd_ratios(args) -> int:
    from .ratios import format_table, worst_case_mixes
    if args.table:
        print(format_table())
    for name, (val, shares) in worst_case_mixes().items():
        print(f"{name}: {val}  shares {', '.join(str(s) for s in shares)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = load_instance(args.inp)
    pk = load_packing(args.packing)
    rep = validate_packing(inst, pk)
    if rep.ok:
        print(f"valid: {len(pk.placements)} items, profit {pk.profit(inst)}")
        return EXIT_OK
    for v in rep.violations:
        print(f"violation: {v}")
    return EXIT_INVALID


def cmd_render(args) -> int:
    from .render import render_svg
    inst = load_instance(args.inp)
    pk = load_packing(args.packing)
    rep = validate_packing(inst, pk)
    if not rep.ok:
        raise ValidationFailure(rep)
    _write(args.out, render_svg(pk, inst, args.scale))
    return EXIT_OK


def _corpus(path: str):
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.json"))
        return [(f.stem, load_instance(f)) for f in files]
    data = read_json(p)
    if not isinstance(data, list):
        raise ParseError(f"{path}: corpus file must hold a JSON list of instances")
    return [(f"{p.stem}[{k}]", instance_from_dict(d)) for k, d in enumerate(data)]


def cmd_bench(args) -> int:
    from .bench import bench, to_csv
    corpus = _corpus(args.corpus) if args.corpus else []
    rows = bench(corpus, tuple(args.modes.split(",")), args.eps, args.oracle_cap, args.jobs)
    _write(args.out, to_csv(rows))
    return EXIT_OK


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .generate import PROFILES
    ap = argparse.ArgumentParser(prog="geoknap", description="2D geometric knapsack toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("--n", type=int, required=True, help="number of items")
    g.add_argument("--N", type=int, required=True, help="knapsack side")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--profile", choices=sorted(PROFILES), default="uniform")
    g.add_argument("--rotations", action="store_true")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("--eps", type=_fraction, default=Fraction(1, 13))
    s.add_argument("--mode", choices=("card", "weighted"), default="card")
    s.add_argument("--rotations", action="store_true")
    s.add_argument("--oracle", action="store_true", help="also compute the exact optimum")
    s.add_argument("--seed", type=int, default=0, help="recorded in the summary; solvers are deterministic")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_solve)

    lp = sub.add_parser("lpack", help="pack long items into a boundary L")
    lp.add_argument("--eps", type=_fraction, default=Fraction(1, 2))
    lp.add_argument("--exact", action="store_true", help="DP over every integer coordinate")
    lp.add_argument("--oracle", action="store_true", help="enumerate subsets")
    lp.add_argument("--in", dest="inp", required=True)
    lp.add_argument("--out", default="-")
    lp.set_defaults(func=cmd_lpack)

    gp = sub.add_parser("gap", help="solve a generalized assignment instance")
    gp.add_argument("--method", choices=("dp", "ptas", "augmented", "oracle"), default="dp")
    gp.add_argument("--eps", type=_fraction, default=Fraction(1, 4))
    gp.add_argument("--in", dest="inp", required=True)
    gp.add_argument("--out", default="-")
    gp.set_defaults(func=cmd_gap)

    r = sub.add_parser("ratios", help="case LPs and worst-case mixes")
    r.add_argument("--table", action="store_true", help="print the per-case table")
    r.set_defaults(func=cmd_ratios)

    v = sub.add_parser("verify", help="check a packing against an instance")
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--packing", required=True)
    v.set_defaults(func=cmd_verify)

    rd = sub.add_parser("render", help="draw a packing as SVG")
    rd.add_argument("--in", dest="inp", required=True)
    rd.add_argument("--packing", required=True)
    rd.add_argument("--scale", type=int, default=20)
    rd.add_argument("--out", default="-")
    rd.set_defaults(func=cmd_render)

    b = sub.add_parser("bench", help="solve a corpus and write CSV")
    b.add_argument("--corpus", help="directory of instance files or a JSON list")
    b.add_argument("--modes", default="card", help="comma list of card, weighted, rotations")
    b.add_argument("--eps", type=_fraction, default=Fraction(1, 13))
    b.add_argument("--oracle-cap", type=int, default=8)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except GeoknapError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
