"""End-to-end runs of every subcommand in a fresh interpreter."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

import zecap
from zecap.formats import dumps_canonical, graph_to_json
from zecap import cycle_graph

from cliutil import load_stdout_json, run_cli, write_spec

PENTAGON_ADJACENCY = [[1, 4], [0, 2], [1, 3], [2, 4], [0, 3]]


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_validate_accepts_builtin_specs(tmp_path):
    spec = write_spec(tmp_path / "pent.json", "pentagon")
    proc = run_cli(["validate", spec])
    assert proc.returncode == 0
    assert proc.stdout.startswith("OK: pentagon")
    assert "5 states" in proc.stdout and "5-outcome POVM" in proc.stdout


def test_validate_rejects_bad_math_with_exit_1(tmp_path):
    doc = {"name": "broken", "kraus": [[[ [2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [2.0, 0.0]]]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    proc = run_cli(["validate", str(path)])
    assert proc.returncode == 1
    assert "error" in proc.stderr


def test_missing_and_malformed_files_exit_2(tmp_path):
    proc = run_cli(["validate", str(tmp_path / "absent.json")])
    assert proc.returncode == 2
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    proc = run_cli(["validate", str(garbled)])
    assert proc.returncode == 2
    assert "not valid JSON" in proc.stderr


# ---------------------------------------------------------------------------
# builtin
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "name", ["identity-d2", "identity-d5", "depolarizing-p1.0", "dephasing-p0.5", "bitflip-p0.25", "pentagon"]
)
def test_builtin_emits_canonical_parseable_specs(name):
    proc = run_cli(["builtin", name])
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["name"] == name
    assert proc.stdout == dumps_canonical(doc)


def test_builtin_unknown_name_exits_1():
    proc = run_cli(["builtin", "wormhole"])
    assert proc.returncode == 1
    assert "unknown builtin" in proc.stderr


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def test_analyze_pentagon_report_content(tmp_path):
    spec = write_spec(tmp_path / "pent.json", "pentagon")
    report = load_stdout_json(run_cli(["analyze", spec]))

    assert report["tool"] == "zecap"
    assert report["version"] == zecap.__version__
    assert report["channel"]["dim"] == 5
    assert report["channel"]["source"] == "classical_matrix"
    assert report["ensemble"]["provenance"] == "classical-embedding"
    assert report["seed"] is None
    assert report["supports"] == [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]
    assert report["graph"]["adjacency"] == PENTAGON_ADJACENCY
    assert report["non_adjacent_pairs"] == 5
    assert report["positive_zero_error_capacity"] is True

    rates = [e["rate"] for e in report["bounds"]["per_n"]]
    assert rates[0] == 1.0
    assert rates[1] == pytest.approx(math.log2(5.0) / 2.0, abs=1e-12)
    assert report["bounds"]["theta"]["value"] == pytest.approx(math.sqrt(5.0), abs=1e-5)
    assert report["bounds"]["theta_upper"] == pytest.approx(rates[1], abs=1e-4)

    code = report["code"]
    assert code["n"] == 2 and code["message_count"] == 5
    assert code["codewords"] == [[0, 0], [1, 2], [2, 4], [3, 1], [4, 3]]
    assert code["decoder"]["mapped_words"] == 20
    assert code["decoder"]["unreachable_words"] == 5
    assert code["certificate"]["passed"] is True
    assert code["certificate"]["paths_agree"] is True
    assert report["code_failure"] is None
    assert report["search"] is None


def test_analyze_writes_report_and_dot_atomically(tmp_path):
    spec = write_spec(tmp_path / "pent.json", "pentagon")
    out = tmp_path / "report.json"
    dot = tmp_path / "graph.dot"
    proc = run_cli(["analyze", spec, "--out", str(out), "--dot", str(dot)])
    assert proc.returncode == 0
    assert proc.stdout == ""
    report = json.loads(out.read_text())
    assert report["non_adjacent_pairs"] == 5
    assert dot.read_text().count(" -- ") == 5


def test_analyze_reports_are_byte_identical_across_reruns(tmp_path):
    spec = write_spec(tmp_path / "pent.json", "pentagon")
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run_cli(["analyze", spec, "--out", str(a)]).returncode == 0
    assert run_cli(["analyze", spec, "--out", str(b)]).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_analyze_searches_when_the_spec_has_no_ensemble(tmp_path):
    spec = write_spec(tmp_path / "dep.json", "depolarizing-p1.0")
    report = load_stdout_json(run_cli(["analyze", spec]))
    assert report["ensemble"]["provenance"] == "searched"
    assert report["seed"] == 7
    assert report["search"]["pair_count"] == 0
    assert report["non_adjacent_pairs"] == 0
    assert report["positive_zero_error_capacity"] is False
    assert report["bounds"]["best_lower"] == 0.0
    # One message still travels: the trivial single-codeword block code.
    assert report["code"]["message_count"] == 1
    assert report["code"]["rate"] == 0.0
    assert report["code"]["certificate"]["passed"] is True


def test_analyze_seed_env_var_is_recorded(tmp_path):
    spec = write_spec(tmp_path / "dep.json", "depolarizing-p0.5")
    report = load_stdout_json(run_cli(["analyze", spec], env_extra={"ZECAP_SEED": "11"}))
    assert report["seed"] == 11
    assert report["search"]["seed"] == 11


def test_analyze_eps_flag_changes_the_graph(tmp_path):
    # One transition probability of 5e-9 straddles the two cutoffs.
    doc = {"name": "fragile", "classical_matrix": [[1.0 - 5e-9, 5e-9], [0.0, 1.0]]}
    path = tmp_path / "fragile.json"
    path.write_text(json.dumps(doc))
    near = load_stdout_json(run_cli(["analyze", str(path)]))
    assert near["graph"]["adjacency"] == [[1], [0]]
    assert near["fragile_probability_count"] >= 1
    far = load_stdout_json(run_cli(["analyze", str(path), "--eps", "1e-7"]))
    assert far["graph"]["adjacency"] == [[], []]
    assert far["eps_support"] == 1e-7


def test_analyze_n_max_flag_extends_block_lengths(tmp_path):
    spec = write_spec(tmp_path / "id2.json", "identity-d2")
    report = load_stdout_json(run_cli(["analyze", spec, "--n-max", "3"]))
    entries = report["bounds"]["per_n"]
    assert [e["n"] for e in entries] == [1, 2, 3]
    assert [e["alpha"] for e in entries] == [2, 4, 8]
    assert report["ensemble"]["provenance"] == "searched"


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def test_search_subcommand_reports_the_pair(tmp_path):
    spec = write_spec(tmp_path / "id2.json", "identity-d2")
    doc = load_stdout_json(
        run_cli(["search", spec, "--restarts", "2", "--iters", "50", "--seed", "3"])
    )
    assert doc["pair_count"] == 1
    assert doc["alpha_1"] == 2
    assert doc["seed"] == 3
    assert doc["restarts"] == 2
    assert doc["graph"]["adjacency"] == [[], []]
    assert len(doc["states"]) == 2 and len(doc["povm"]) == 2


def test_search_stdout_is_deterministic(tmp_path):
    spec = write_spec(tmp_path / "deph.json", "dephasing-p0.3")
    args = ["search", spec, "--restarts", "2", "--iters", "40", "--seed", "5"]
    assert run_cli(args).stdout == run_cli(args).stdout


def test_search_overcomplete_requires_the_flag(tmp_path):
    spec = write_spec(tmp_path / "id2.json", "identity-d2")
    proc = run_cli(["search", spec, "--M", "3", "--restarts", "1", "--iters", "10"])
    assert proc.returncode == 1
    assert "allow_overcomplete" in proc.stderr
    doc = load_stdout_json(
        run_cli(
            ["search", spec, "--M", "3", "--restarts", "1", "--iters", "10", "--allow-overcomplete"]
        )
    )
    assert doc["pair_count"] == 2


def test_search_general_povm_flag(tmp_path):
    spec = write_spec(tmp_path / "id2.json", "identity-d2")
    doc = load_stdout_json(
        run_cli(["search", spec, "--general-povm", "--restarts", "1", "--iters", "20"])
    )
    assert doc["general_povm"] is True
    assert len(doc["povm"]) == 4


# ---------------------------------------------------------------------------
# code
# ---------------------------------------------------------------------------


def test_code_subcommand_builds_the_pentagon_code(tmp_path):
    spec = write_spec(tmp_path / "pent.json", "pentagon")
    out = tmp_path / "code.json"
    proc = run_cli(["code", spec, "--n", "2", "--out", str(out)])
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["message_count"] == 5
    assert doc["codewords"] == [[0, 0], [1, 2], [2, 4], [3, 1], [4, 3]]
    assert doc["decoder"]["mapped_words"] == 20
    assert len(doc["decoder"]["table"]) == 20
    assert doc["certificate"]["passed"] is True


def test_code_subcommand_over_the_cap_exits_1(tmp_path):
    spec = write_spec(tmp_path / "pent.json", "pentagon")
    proc = run_cli(["code", spec, "--n", "3"])
    assert proc.returncode == 1
    assert "error" in proc.stderr


# ---------------------------------------------------------------------------
# theta
# ---------------------------------------------------------------------------


def test_theta_subcommand_on_a_graph_file(tmp_path):
    path = tmp_path / "c5.json"
    path.write_text(dumps_canonical(graph_to_json(cycle_graph(5))))
    doc = load_stdout_json(run_cli(["theta", str(path)]))
    assert doc["theta"] == pytest.approx(math.sqrt(5.0), abs=1e-5)
    assert doc["converged"] is True
    assert doc["gap"] <= 1e-6
    assert doc["theta_upper_bits"] == pytest.approx(math.log2(math.sqrt(5.0)), abs=1e-5)


def test_theta_subcommand_rejects_asymmetric_adjacency(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vertex_count": 2, "adjacency": [[1], []]}))
    proc = run_cli(["theta", str(path)])
    assert proc.returncode == 1
