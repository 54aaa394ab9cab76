import json
import math

import numpy as np
import pytest

from cogs.bench import fit_loglog_slope
from core import Conduit, Constants, PreconditionError, UsageError, dump_report

EXACT = ["--override", "inject_failures=false"]


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = Conduit(Constants()).run([*argv, "--out", str(out)])
    return code, json.loads(out.read_text())


def test_flow(tmp_path):
    code, report = run(tmp_path, "flow", "--family", "parallel-paths", "--params", "lengths=1,2")
    assert code == 0
    assert report["kind"] == "flow"
    assert report["R"] == pytest.approx(2 / 3)
    assert report["q"]["0,1:0"] == pytest.approx(1 / 3)


def test_resistance_with_upper_case_parameter(tmp_path):
    code, report = run(tmp_path, "resistance", "--family", "path", "--params", "L=3")
    assert code == 0
    assert report["R"] == pytest.approx(3)


def test_disconnected_graph_file(tmp_path):
    graph = tmp_path / "graph.json"
    graph.write_text(json.dumps({"n": 3, "s": 0, "t": 2, "edges": [[0, 1], [1, 2]], "x": "10"}))
    code, report = run(tmp_path, "resistance", "--graph", str(graph))
    assert (code, report["R"]) == (0, "inf")
    code, report = run(tmp_path, "flow", "--graph", str(graph))
    assert (code, report["R"], report["q"]) == (0, "inf", {})
    code, report = run(tmp_path, "sample-edge", "--graph", str(graph), "--seed", "1")
    assert code == 1
    assert report["error"] == "DisconnectedError"


def test_generate(tmp_path):
    code, report = run(tmp_path, "generate", "--family", "path", "--params", "l=2")
    assert code == 0
    assert report["instance"]["family"] == "path"
    assert report["instance"]["truth"]["R"] == pytest.approx(2)


def test_randomized_command_needs_a_seed(tmp_path):
    code, report = run(tmp_path, "sample-edge", "--family", "path", "--params", "l=2")
    assert code == 1
    assert report["usage"] is True
    assert "--seed" in report["message"]


def test_graph_source_is_required(tmp_path):
    code, report = run(tmp_path, "flow")
    assert code == 1
    assert report["usage"] is True


def test_sample_edge_is_reproducible(tmp_path):
    argv = [
        "sample-edge", "--family", "parallel-paths", "--params", "lengths=1,2",
        "--p", "0.1", "--trials", "20", "--seed", "1",
    ]
    out = tmp_path / "report.json"
    assert Conduit(Constants()).run([*argv, "--out", str(out)]) == 0
    first = out.read_bytes()
    assert Conduit(Constants()).run([*argv, "--out", str(out)]) == 0
    assert out.read_bytes() == first

    report = json.loads(first)
    assert report["trials"] == 20
    assert report["samples"] + round(report["failure_rate"] * 20) == 20
    assert report["tv_bound"] == pytest.approx(3 * math.sqrt(0.1))
    assert report["path_edge_rate"] == pytest.approx(1.0)
    assert report["ledger"]["exact_queries"]["min"] > 0


def test_find_path_single(tmp_path):
    code, report = run(
        tmp_path, "find-path", "--mode", "single", "--family", "path", "--params", "l=3",
        "--seed", "2", *EXACT,
    )
    assert code == 0
    assert report["valid"] is True
    assert report["matches_truth"] is True
    assert report["path"] == [[0, 1], [1, 2], [2, 3]]


def test_find_path_general(tmp_path):
    code, report = run(
        tmp_path, "find-path", "--family", "parallel-paths", "--params", "lengths=2,3",
        "--seed", "2", *EXACT,
    )
    assert code == 0
    assert report["mode"] == "general"
    assert report["valid"] is True
    assert "matches_truth" not in report
    assert report["path"][0][0] == 0 and report["path"][-1][1] == 1


@pytest.mark.parametrize("mode", ["single", "general"])
def test_find_path_with_equal_terminals(tmp_path, mode):
    graph = tmp_path / "graph.json"
    graph.write_text(json.dumps({"n": 3, "s": 1, "t": 1, "edges": [[0, 1], [1, 2]]}))
    code, report = run(
        tmp_path, "find-path", "--mode", mode, "--graph", str(graph), "--seed", "1"
    )
    assert code == 0
    assert report["path"] == []
    assert report["valid"] is True
    assert report["ledger"]["bit_reads"] == 0

    code, report = run(tmp_path, "flow", "--graph", str(graph))
    assert (code, report["R"], report["q"]) == (0, 0.0, {})


def test_find_cutset(tmp_path):
    code, report = run(tmp_path, "find-cutset", "--family", "path", "--params", "l=2", "--seed", "3")
    assert code == 1
    assert "--r-bound" in report["message"]

    code, report = run(
        tmp_path, "find-cutset", "--family", "path", "--params", "l=2", "--seed", "3",
        "--r-bound", "2", "--g-bound", "1", *EXACT,
    )
    assert code == 0
    assert report["edges"] == [[0, 1], [1, 2]]
    assert report["promise"]["cut_ok"] is True


def test_unknown_command(capsys):
    assert Conduit(Constants()).run(["teleport"]) == 1
    assert json.loads(capsys.readouterr().out)["usage"] is True


def test_unknown_override(capsys):
    argv = ["flow", "--family", "path", "--params", "l=2", "--override", "c_warp=2"]
    assert Conduit(Constants()).run(argv) == 1
    assert "c_warp" in json.loads(capsys.readouterr().out)["message"]


def test_help(tmp_path):
    code, report = run(tmp_path, "help")
    assert code == 0
    assert set(report["categories"]) == {"Bench", "Cuts", "Flows", "Paths", "Sampling", "Verify"}
    assert report["categories"]["Sampling"]["commands"]["sample-edge"]["randomized"] is True


def test_verify(tmp_path):
    code, report = run(tmp_path, "verify", "--max-n", "3")
    assert code == 0
    assert report["max_n"] == 3
    assert report["instances"] == 7
    assert set(report["suites"]) == {
        "flows", "distribution", "span", "spectral", "sandwich", "random_walk", "spectral_gap",
    }
    assert all(suite["passed"] for suite in report["suites"].values())
    assert report["suites"]["random_walk"]["checked"] == 7
    assert report["suites"]["spectral_gap"]["checked"] == 100


def test_verify_defaults_to_seven_vertices():
    app = Conduit(Constants())
    app.load_extensions("cogs")
    assert app.make_config(["verify"]).max_n == 7


def bench_slope(tmp_path, algorithm):
    code, report = run(
        tmp_path, "bench", "--algorithm", algorithm, "--family", "path",
        "--params", "n=17", "parent=complete", "--grid", "l=2,4,8,16",
        "--trials", "5", "--seed", "7", *EXACT,
    )
    assert code == 0
    assert [row["l"] for row in report["rows"]] == [2, 4, 8, 16]
    return report["slope"]


@pytest.mark.slow
def test_edge_sampling_grows_like_the_root_of_the_length(tmp_path):
    assert bench_slope(tmp_path, "sample-edge") == pytest.approx(0.5, abs=0.2)


@pytest.mark.slow
def test_general_path_finder_grows_like_the_length_to_three_halves(tmp_path):
    assert bench_slope(tmp_path, "find-path-general") == pytest.approx(1.5, abs=0.4)


@pytest.mark.slow
def test_single_path_finder_grows_subquadratically(tmp_path):
    assert bench_slope(tmp_path, "find-path-single") < 2


def test_bench(tmp_path):
    code, report = run(
        tmp_path, "bench", "--family", "path", "--params", "n=9", "parent=complete",
        "--grid", "l=2,4,8", "--trials", "3", "--seed", "7", *EXACT,
    )
    assert code == 0
    assert [row["l"] for row in report["rows"]] == [2, 4, 8]
    assert all(row["n"] == 9 for row in report["rows"])
    assert isinstance(report["slope"], float)


@pytest.mark.parametrize(
    "extra",
    [
        ["--grid", "l=2,4", "n=9,10"],
        ["--grid", "l=2,4", "--algorithm", "teleport"],
    ],
)
def test_bench_usage_errors(tmp_path, extra):
    code, report = run(
        tmp_path, "bench", "--family", "path", "--params", "n=9", "--seed", "1", *extra
    )
    assert code == 1
    assert report["usage"] is True


def test_fit_loglog_slope():
    assert fit_loglog_slope([1, 2, 4], [1, 4, 16]) == pytest.approx(2.0)
    with pytest.raises(PreconditionError):
        fit_loglog_slope([1], [1])
    with pytest.raises(PreconditionError):
        fit_loglog_slope([0, 1], [1, 2])


def test_constants_from_env(monkeypatch):
    monkeypatch.setenv("CONDUIT_C_PD", "3")
    monkeypatch.setenv("CONDUIT_INJECT_FAILURES", "false")
    constants = Constants.from_env()
    assert constants.c_pd == 3.0
    assert constants.inject_failures is False
    assert constants.override(length_source="estimate").length_source == "estimate"
    with pytest.raises(UsageError):
        constants.override(length_source="oracle")


def test_dump_report():
    text = dump_report({"R": math.inf, "count": np.int64(3), "seen": {2, 1}, "ok": np.bool_(True)})
    assert json.loads(text) == {"R": "inf", "count": 3, "seen": [1, 2], "ok": True}
