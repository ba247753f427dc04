from __future__ import annotations

import csv
import io
import json
import operator
import subprocess
import sys

import pytest

from sublinear_vc import oracles
from sublinear_vc.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from sublinear_vc.generators import gen_named


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_estimate_generated_trials(capsys):
    code, out, _ = run(["estimate", "--gen", "regular:n=2000,d=10,seed=1", "--eps", "0.1",
                        "--mode", "max-deg", "--trials", "2", "--samples", "300"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["reports"]) == 2
    assert {"median_estimate", "mean_queries", "trials"} <= set(doc["summary"])
    assert all(r["schema_version"] == 1 for r in doc["reports"])


def test_estimate_dense_from_file(tmp_path, capsys):
    g = gen_named("gnp", {"n": 120, "p": 0.5}, seed=4)
    path = tmp_path / "g.txt"
    path.write_text(g.serialize())
    code, out, _ = run(["estimate", "--input", str(path), "--eps", "0.2", "--mode", "dense",
                        "--samples", "100", "--no-fallback"], capsys)
    assert code == EXIT_OK
    rep = json.loads(out)["reports"][0]
    assert rep["pair_queries"] > 0 and rep["neighbor_queries"] == 0


def test_estimate_csv_to_file(tmp_path, capsys):
    out_path = tmp_path / "r.csv"
    code, _, _ = run(["estimate", "--gen", "cycle:n=300", "--eps", "0.3", "--format", "csv",
                      "--out", str(out_path), "--trials", "2"], capsys)
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out_path.read_text())))
    assert len(rows) == 2 and rows[0]["schema_version"] == "1"


@pytest.mark.parametrize("argv", [
    ["estimate", "--gen", "cycle:n=30"],
    ["estimate", "--gen", "cycle:n=30", "--eps", "1.5"],
    ["estimate", "--eps", "0.2"],
    ["estimate", "--gen", "cycle:n=30", "--input", "x", "--eps", "0.2"],
    ["estimate", "--gen", "bogus:n=3", "--eps", "0.2"],
    ["estimate", "--input", "/nonexistent/g.txt", "--eps", "0.2"],
    ["estimate", "--gen", "path:n=5", "--eps", "0.2", "--mode", "warp"],
    ["bench", "--n", "", "--d", "4", "--eps", "0.2"],
    ["verify", "medium"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == EXIT_USAGE


def test_bad_graph_file_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 1\n0 9\n")
    code, _, err = run(["estimate", "--input", str(path), "--eps", "0.2"], capsys)
    assert code == EXIT_USAGE and "line 2" in err


def test_bench_rows(capsys):
    code, out, _ = run(["bench", "--n", "1200", "--d", "4,8,16", "--eps", "0.3", "--trials", "2",
                        "--samples", "100", "--format", "csv"], capsys)
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert [int(r["d"]) for r in rows] == [4, 4, 8, 8, 16, 16]
    assert all(float(r["mean_calls"]) > 0 for r in rows)


def test_verify_quick_passes(capsys):
    code, out, _ = run(["verify", "quick"], capsys)
    assert code == EXIT_OK
    assert out.count("[PASS]") == 5


def test_verify_reports_shrunk_counterexample(monkeypatch, capsys):
    monkeypatch.setattr(oracles, "precedes", operator.gt)
    code, out, err = run(["verify", "quick"], capsys)
    assert code == EXIT_FAIL
    assert "[FAIL]" in out
    header = err.splitlines()[2]
    assert int(header.split()[0]) <= 10


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sublinear_vc", "estimate", "--gen", "path:n=10", "--eps", "0.5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["reports"][0]["fallback"] is True
