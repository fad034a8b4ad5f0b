import json

import numpy as np
import pytest

from graph_amplitude.cli import main
from graph_amplitude.matrix import matrix_to_json, random_psd


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def k3(tmp_path):
    return write(tmp_path / "k3.json", {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]})


@pytest.fixture
def line3(tmp_path):
    return write(tmp_path / "x.json", {"points": [[0, 0, 0], [0, 0, 1], [0, 0, 2]]})


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_amplitude_command(capsys, k3, line3):
    code, out = run(capsys, ["amplitude", "--graph", k3, "--config", line3])
    data = json.loads(out)
    assert code == 0
    assert data["method"] == "complete"
    assert data["value_re"] == pytest.approx(4) and data["value_im"] == pytest.approx(0)
    code, out = run(capsys, ["amplitude", "--graph", k3, "--config", line3, "--method", "bruteforce"])
    assert json.loads(out)["term_count"] == 8


def test_det_command(capsys, line3):
    code, out = run(capsys, ["det", "--config", line3])
    assert code == 0
    assert json.loads(out) == {"d_re": pytest.approx(1), "d_im": pytest.approx(0), "abs_d": pytest.approx(1)}


def test_graphs_command(capsys, tmp_path):
    out_path = tmp_path / "g.json"
    code, _ = run(capsys, ["graphs", "--n", "4", "--out", str(out_path)])
    assert code == 0 and len(json.loads(out_path.read_text())) == 11
    code, out = run(capsys, ["graphs", "--n", "5", "--connected-only"])
    assert len(json.loads(out)) == 21


def test_matrix_f_command(capsys, tmp_path):
    m = write(tmp_path / "a.json", matrix_to_json(random_psd(3, 1)))
    code, out = run(capsys, ["matrix-f", "--matrix", m, "--p1", "0,1|2", "--p2", "0|1|2"])
    data = json.loads(out)
    assert code == 0 and data["holds"]
    bad = write(tmp_path / "b.json", {"n": 2, "re": [[1, 0], [0, -1]], "im": [[0, 0], [0, 0]]})
    code, _ = run(capsys, ["matrix-f", "--matrix", bad, "--p1", "0|1", "--p2", "0,1"])
    assert code == 1


def test_verify_campaign_command(capsys, tmp_path):
    out_path = tmp_path / "rep.csv"
    code, _ = run(capsys, ["--seed", "4", "verify", "--n-min", "3", "--n-max", "3", "-N", "5",
                           "--format", "csv", "--out", str(out_path)])
    assert code == 0
    lines = [l for l in out_path.read_text().splitlines() if not l.startswith("#")]
    assert len(lines) == 1 + 2


def test_verify_campaign_file_with_override(capsys, tmp_path):
    cfg = write(tmp_path / "c.json", {"n_min": 3, "n_max": 4, "configs_per_graph": 3, "seed": 1})
    code, out = run(capsys, ["verify", "--campaign", cfg, "--n-max", "3", "--seed", "8"])
    doc = json.loads(out)
    assert code == 0
    assert doc["config"]["n_max"] == 3 and doc["config"]["seed"] == 8
    assert len(doc["reports"]) == 2


def test_counterexample_then_verify(capsys, tmp_path):
    g, x = str(tmp_path / "g.json"), str(tmp_path / "x.json")
    code, out = run(capsys, ["counterexample", "--seed", "0", "--emit-graph", g, "--emit-config", x])
    assert code == 0 and json.loads(out)["final_re"] < 1
    code, _ = run(capsys, ["verify", "--graph", g, "--config", x])
    assert code == 2


def test_counterexample_exhausted(capsys):
    code, _ = run(capsys, ["counterexample", "--max-tries", "0"])
    assert code == 2


def test_conjd_command(capsys):
    code, out = run(capsys, ["conjd-verify", "--n", "3", "--trials", "50", "--seed", "2"])
    assert code == 0 and json.loads(out)["violations"] == []


def test_error_exit_code(capsys, tmp_path, k3):
    bad = write(tmp_path / "bad.json", {"points": [[0, 0, 0], [0, 0, 0], [1, 0, 0]]})
    code, _ = run(capsys, ["amplitude", "--graph", k3, "--config", bad])
    assert code == 1
    code, _ = run(capsys, ["det", "--config", str(tmp_path / "missing.json")])
    assert code == 1
