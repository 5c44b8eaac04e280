import io as _io
import json
from pathlib import Path

import numpy as np
import pytest

from subgraphspace import io as gio
from subgraphspace.census import exact_census
from subgraphspace.cli import main
from subgraphspace.graphs import canonical_code, cycle_graph, edge_density

from conftest import random_graph


def test_edge_list_arbitrary_labels():
    text = [
        "# a comment",
        "alice bob",
        "bob carol",
        "",
        "carol alice",
    ]
    g = gio.parse_edge_list(text)
    assert g.n == 3 and g.edge_count == 3


def test_edge_list_declared_isolated_nodes():
    g = gio.parse_edge_list(["n 5", "0 1", "3 4"])
    assert g.n == 5 and g.edge_count == 2


def test_edge_list_errors_carry_line_numbers():
    with pytest.raises(ValueError, match=":2:"):
        gio.parse_edge_list(["a b", "c"], name="f")
    with pytest.raises(ValueError, match=":2:"):
        gio.parse_edge_list(["n 3", "0 7"], name="f")
    with pytest.raises(ValueError, match="self-loop"):
        gio.parse_edge_list(["x x"])


def test_edge_list_round_trip(tmp_path, rng):
    graphs = [random_graph(rng, int(rng.integers(3, 15)), 0.4) for _ in range(4)]
    gio.write_collection(tmp_path / "coll", graphs)
    back = gio.read_collection(tmp_path / "coll")
    assert len(back) == 4
    for (gid, h), g in zip(back, graphs):
        assert h.n == g.n
        assert canonical_code(h) == canonical_code(g) if g.n <= 8 else True
        assert h.edges == g.edges  # labels are preserved verbatim


def test_jsonl_collection(tmp_path):
    path = tmp_path / "coll.jsonl"
    with open(path, "w") as out:
        out.write(json.dumps({"id": "a", "n": 4, "edges": [[0, 1], [2, 3]]}))
        out.write("\n")
        out.write(json.dumps({"id": "b", "n": 3, "edges": []}))
        out.write("\n")
    coll = gio.read_collection(path)
    assert [gid for gid, _ in coll] == ["a", "b"]
    assert coll[0][1].edge_count == 2
    with open(path, "a") as out:
        out.write("{broken\n")
    with pytest.raises(ValueError, match=":3:"):
        gio.read_collection(path)


def test_census_csv_round_trip(tmp_path):
    g = cycle_graph(7)
    fv = exact_census(g, 3)
    path = tmp_path / "census.csv"
    with open(path, "w", newline="") as out:
        gio.write_census_csv(out, [("c7", 7, edge_density(g), fv)], 3)
    k, rows = gio.read_census_csv(path)
    assert k == 3 and len(rows) == 1
    assert rows[0]["id"] == "c7" and rows[0]["n"] == 7
    assert np.abs(rows[0]["census"].values - fv.values).max() < 1e-10


def test_cli_simulate_census_roundtrip(tmp_path, capsys):
    outdir = tmp_path / "sim"
    rc = main(
        [
            "simulate", "-n", "16", "--nu", "1.0", "--lam", "0.5",
            "--count", "4", "--seed", "3", str(outdir),
        ]
    )
    assert rc == 0
    manifest = json.loads((outdir / "manifest.json").read_text())
    assert manifest["count"] == 4 and len(manifest["graph_seeds"]) == 4
    assert len(list(outdir.glob("*.txt"))) == 4

    rc = main(["census", str(outdir), "-k", "3", "--seed", "1"])
    assert rc == 0
    first = capsys.readouterr().out
    rc = main(["census", str(outdir), "-k", "3", "--seed", "1"])
    assert rc == 0
    second = capsys.readouterr().out
    assert first == second  # byte-identical reruns
    assert first.splitlines()[0] == "id,n,density,s_000,s_001,s_011,s_111"
    values = first.splitlines()[1].split(",")
    assert abs(sum(float(v) for v in values[3:]) - 1.0) < 1e-9


def test_cli_simulate_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        rc = main(
            [
                "simulate", "-n", "12", "--nu", "0.8", "--count", "3",
                "--seed", "77", str(d),
            ]
        )
        assert rc == 0
    for fa, fb in zip(sorted(a.glob("*.txt")), sorted(b.glob("*.txt"))):
        assert fa.read_text() == fb.read_text()


def test_cli_fit_pipeline(tmp_path, capsys):
    outdir = tmp_path / "gnp"
    from subgraphspace.generators import sample_gnp
    from subgraphspace import io as _gio

    graphs = [sample_gnp(30, p, seed=i) for i, p in enumerate([0.3, 0.4, 0.5, 0.6])]
    _gio.write_collection(outdir, graphs)
    census_path = tmp_path / "census.csv"
    rc = main(
        ["census", str(outdir), "-k", "3", "-o", str(census_path)]
    )
    assert rc == 0
    rc = main(["fit", str(census_path), "--grid", "5"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "# lambda_opt=" in out and "# objective_at_zero=" in out
    lam = float(
        [l for l in out.splitlines() if l.startswith("# lambda_opt=")][0]
        .split("=")[1]
    )
    assert lam <= 0.5  # pure random graphs carry no closure signal


def test_cli_bounds_check_on_random_graphs(tmp_path, capsys):
    outdir = tmp_path / "coll"
    rng = np.random.default_rng(0)
    graphs = [random_graph(rng, 30, 0.5) for _ in range(3)]
    gio.write_collection(outdir, graphs)
    census_path = tmp_path / "c.csv"
    rc = main(["census", str(outdir), "-k", "3", "-o", str(census_path)])
    assert rc == 0
    rc = main(
        ["bounds", "-k", "3", "--grid", "11", "--check", str(census_path)]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "# graphs=3 violations=0" in out
    # envelope rows include the forbidden-triad peak
    path_rows = [
        l for l in out.splitlines() if l.startswith("0.5,2,")
    ]
    assert path_rows and float(path_rows[0].split(",")[3]) == pytest.approx(0.75)


def test_cli_classify_smoke(tmp_path, capsys):
    from subgraphspace.generators import sample_gnp

    a, b = tmp_path / "a", tmp_path / "b"
    gio.write_collection(a, [sample_gnp(14, 0.2, seed=i) for i in range(20)])
    gio.write_collection(b, [sample_gnp(14, 0.8, seed=100 + i) for i in range(24)])
    rc = main(
        [
            "classify", str(a), str(b), "--features", "edges",
            "--folds", "4", "--seed", "5",
        ]
    )
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("features,task,mean_accuracy")
    fields = out[1].split(",")
    assert fields[0] == "edges"
    assert float(fields[2]) > 0.9  # density-separated task is easy
    assert int(fields[5]) == 40  # balanced subsample to the smaller side


def test_cli_catalog(capsys):
    rc = main(["catalog", "-k", "4"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "index,edge_count,aut,code"
    assert len(lines) == 12
    assert lines[1].startswith("0,0,24,000000")


def test_cli_error_exit(tmp_path, capsys):
    rc = main(["census", str(tmp_path / "missing"), "-k", "3"])
    assert rc == 1
    assert capsys.readouterr().err.startswith("error:")


def test_cli_census_skips_small_graphs(tmp_path, capsys):
    gio.write_collection(
        tmp_path / "coll",
        [cycle_graph(3), cycle_graph(8)],
        ids=["tiny", "ok"],
    )
    rc = main(["census", str(tmp_path / "coll"), "-k", "4"])
    assert rc == 0
    captured = capsys.readouterr()
    assert "skipping tiny" in captured.err
    assert "ok," in captured.out
