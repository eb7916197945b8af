import csv
import json
from collections import Counter
from pathlib import Path

import pytest

from geoknap.bench import HEADER, bench, to_csv
from geoknap.cli import main
from geoknap.core import (Instance, Item, Packing, ParameterError, Placement, Rect, dumps,
                          instance_to_dict, packing_to_dict)
from geoknap.generate import PROFILES, class_counts, gen_instance, item_class
from geoknap.render import render_svg

DATA = Path(__file__).parent / "data"


def small_case():
    items = [Item(0, 4, 2, 3), Item(1, 2, 5, 1), Item(2, 3, 3, 2)]
    pk = Packing(Rect(0, 0, 8, 8), (Placement(0, 0, 0), Placement(1, 4, 0), Placement(2, 0, 2)))
    return Instance(8, items), pk


# --- generation ---

def test_gen_deterministic(capsys):
    assert main(["gen", "--n", "5", "--N", "20", "--seed", "1"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--n", "5", "--N", "20", "--seed", "1"]) == 0
    assert capsys.readouterr().out == first
    assert len(json.loads(first)["items"]) == 5


def test_long_heavy_all_long():
    inst = gen_instance(40, 30, seed=3, profile="long-heavy")
    assert all(2 * max(it.w, it.h) > 30 for it in inst.items)


def test_mixed_histogram_matches_counts():
    for n in (7, 10, 33):
        inst = gen_instance(n, 50, seed=n, profile="mixed-skewed")
        hist = Counter(item_class(it.w, it.h, 50) for it in inst.items)
        assert hist == Counter(class_counts(PROFILES["mixed-skewed"], n))


def test_gen_bad_parameters():
    with pytest.raises(ParameterError):
        gen_instance(3, 10, profile="nope")
    with pytest.raises(ParameterError):
        gen_instance(3, 5, profile="mixed-skewed")
    assert main(["gen", "--n", "-1", "--N", "5"]) == 1


# --- rendering ---

def test_render_empty_and_counts():
    svg = render_svg(Packing.empty(10), [])
    assert '<g class="items">\n</g>' in svg
    inst, pk = small_case()
    svg = render_svg(pk, inst)
    assert svg.count("<rect data-id=") == len(pk.placements)


def test_render_golden():
    inst, pk = small_case()
    assert render_svg(pk, inst.items, 10) == (DATA / "golden_small.svg").read_text()


# --- cli ---

@pytest.fixture
def files(tmp_path):
    inst, pk = small_case()
    ip, pp = tmp_path / "inst.json", tmp_path / "pack.json"
    ip.write_text(dumps(instance_to_dict(inst)))
    pp.write_text(dumps(packing_to_dict(pk)))
    return tmp_path, ip, pp


def test_cli_solve_verify_render(files, capsys):
    d, ip, pp = files
    out = d / "sol.json"
    assert main(["solve", "--in", str(ip), "--out", str(out), "--oracle"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["profit"] == summary["oracle"]
    assert main(["verify", "--in", str(ip), "--packing", str(out)]) == 0
    assert main(["render", "--in", str(ip), "--packing", str(pp), "--out", str(d / "p.svg")]) == 0
    assert (d / "p.svg").read_text().startswith("<svg")


def test_cli_invalid_packing_exit_2(files, capsys):
    d, ip, _ = files
    bad = d / "bad.json"
    bad.write_text(dumps(packing_to_dict(Packing(Rect(0, 0, 8, 8), (Placement(0, 0, 0), Placement(2, 1, 1))))))
    assert main(["verify", "--in", str(ip), "--packing", str(bad)]) == 2
    assert main(["render", "--in", str(ip), "--packing", str(bad)]) == 2


def test_cli_resource_exit_3(tmp_path):
    g = tmp_path / "gap.json"
    g.write_text(json.dumps({"capacities": [10 ** 6, 10 ** 6, 10 ** 6],
                             "sizes": [[1, 2, 3]] * 2000, "profits": [[1, 1, 1]] * 2000}))
    assert main(["gap", "--in", str(g), "--method", "dp"]) == 3


def test_cli_parse_exit_4(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    assert main(["solve", "--in", str(p)]) == 4
    p.write_text(json.dumps({"n": 5}))
    assert main(["solve", "--in", str(p)]) == 4


def test_cli_gap_and_ratios(tmp_path, capsys):
    g = tmp_path / "gap.json"
    g.write_text(json.dumps({"capacities": [7], "sizes": [[3], [4], [5]], "profits": [[4], [5], [6]]}))
    assert main(["gap", "--in", str(g)]) == 0
    assert json.loads(capsys.readouterr().out)["profit"] == 9
    assert main(["ratios", "--table"]) == 0
    out = capsys.readouterr().out
    assert "325/558" in out and "cardinality: 9/16" in out and "weighted: 9/17" in out


# --- bench ---

def test_bench_empty_header_only(capsys):
    assert to_csv(bench([])) == ",".join(HEADER) + "\n"
    assert main(["bench"]) == 0
    assert capsys.readouterr().out.strip() == ",".join(HEADER)


def test_bench_rows_stable(tmp_path):
    corpus = [(f"g{s}", gen_instance(5, 12, seed=s)) for s in range(3)]
    rows = bench(corpus, ("card", "weighted"))
    assert len(rows) == 6
    for r in rows:
        assert 0 < float(r[6]) <= 1
    again = bench(corpus, ("card", "weighted"))
    assert [r[:7] for r in rows] == [r[:7] for r in again]
    path = tmp_path / "c.json"
    path.write_text(json.dumps([instance_to_dict(i) for _, i in corpus]))
    assert main(["bench", "--corpus", str(path), "--out", str(tmp_path / "o.csv")]) == 0
    parsed = list(csv.reader((tmp_path / "o.csv").read_text().splitlines()))
    assert parsed[0] == HEADER and len(parsed) == 4
