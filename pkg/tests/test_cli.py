import csv
import json

import pytest

from clinrlab.cli import main


def run_cli(*argv):
    rc = main(list(argv))
    assert rc in (0, None)


def read_json(path):
    with open(path) as f:
        return json.load(f)


def read_csv(path):
    with open(path) as f:
        return list(csv.DictReader(f))


def test_synth(tmp_path):
    out = tmp_path / "synth"
    run_cli("synth", "--out", str(out))
    circ = read_json(out / "trotter_circuit.json")
    assert circ["n_qubits"] == 6
    assert (out / "trotter_circuit.stim").exists()
    assert (out / "block_circuit.json").exists()
    manifest = read_json(out / "manifest.json")
    assert manifest["command"] == "synth"


def test_resource(tmp_path):
    out = tmp_path / "resource"
    run_cli("resource", "--out", str(out))
    info = read_json(out / "resource.json")
    assert info["n"] == 6
    assert info["nonidentity_count"] == 4095
    assert info["candidate_pair_count"] == 8_382_465
    assert len(info["generators"]) == 12
    assert set(info["check_pairs"]) == {"S1", "S2", "S3", "S4", "S5", "S6"}
    prep = read_json(out / "resource_prep.json")
    assert prep["n_qubits"] == 12


def test_compile_graph(tmp_path):
    out = tmp_path / "graphs"
    run_cli("compile-graph", "--iters", "80", "--seed", "0",
            "--keep", "3", "--out", str(out))
    comps = read_json(out / "compilations.json")
    assert 1 <= len(comps) <= 3
    for entry in comps:
        assert entry["roundtrip"] is True
        assert len(entry["cost"]) == 3
    costs = [tuple(e["cost"]) for e in comps]
    assert costs == sorted(costs)
    assert (out / "best_circuit.json").exists()


def test_run_and_report(tmp_path):
    cfg = {"variant": "clinr", "shots": 2000, "seed": 5,
           "plan": [["Z6 X7 Z10 Z12 X13 Z16", "MCM"]],
           "plan_labels": ["S6a"], "label": "probe"}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "run"
    run_cli("run", "--config", str(cfg_path), "--out", str(out))
    rec = read_json(out / "record.json")
    assert rec["label"] == "probe"
    assert rec["shots"] == 2000
    assert rec["acceptance_rate"] == 1.0  # noiseless

    rep = tmp_path / "report"
    run_cli("report", "--run", str(out), "--out", str(rep))
    rows = read_csv(rep / "report.csv")
    assert len(rows) == 1
    assert rows[0]["label"] == "probe"


def test_run_with_noise_shorthand(tmp_path):
    cfg = {"variant": "direct", "shots": 400, "seed": 1,
           "noise": "tempo-1", "label": "direct"}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "run"
    run_cli("run", "--config", str(cfg_path), "--out", str(out))
    rec = read_json(out / "record.json")
    assert 0.0 < rec["tvd"] < 0.2
    # direct runs still sieve odd-parity shots
    assert 0.8 < rec["acceptance_rate"] <= 1.0
    assert rec["rejected_parity_count"] > 0


def test_sweep_explicit_configs(tmp_path):
    configs = {"configs": [
        {"variant": "direct", "shots": 300, "seed": 0, "label": "a"},
        {"variant": "direct", "shots": 300, "seed": 1, "label": "b"},
    ]}
    cfg_path = tmp_path / "sweep.json"
    cfg_path.write_text(json.dumps(configs))
    out = tmp_path / "sweeprun"
    run_cli("sweep", "--config", str(cfg_path), "--out", str(out))
    rows = read_csv(out / "sweep.csv")
    assert [r["label"] for r in rows] == ["a", "b"]
    blob = read_json(out / "sweep.json")
    assert len(blob) == 2


def test_report_references(tmp_path):
    configs = {"configs": [
        {"variant": "direct", "shots": 300, "seed": 0, "noise": "tempo-1",
         "label": "direct"}]}
    cfg_path = tmp_path / "sweep.json"
    cfg_path.write_text(json.dumps(configs))
    out = tmp_path / "sweeprun"
    run_cli("sweep", "--config", str(cfg_path), "--out", str(out))
    rep = tmp_path / "report"
    run_cli("report", "--run", str(out), "--out", str(rep))
    rows = read_csv(rep / "report.csv")
    assert rows[0]["ref_incorrect_component"] != ""


def test_dataset_no_measure(tmp_path):
    out = tmp_path / "data"
    run_cli("dataset", "--graphs", "2", "--pairs-per-graph", "3",
            "--graph-iters", "40", "--shots", "50", "--no-measure",
            "--out", str(out))
    rows = read_csv(out / "dataset.csv")
    assert len(rows) == 6
    assert all(r["p_fail"] == "" for r in rows)
    schema = read_json(out / "schema.json")
    assert "p_fail" in schema["columns"]


def test_dataset_selected_rows(tmp_path):
    out = tmp_path / "data"
    run_cli("dataset", "--graphs", "2", "--pairs-per-graph", "2",
            "--graph-iters", "40", "--shots", "60", "--rows", "0,3",
            "--out", str(out))
    rows = read_csv(out / "dataset.csv")
    assert len(rows) == 2
    for r in rows:
        assert r["p_fail"] != ""
        assert float(r["p_fail"]) >= 0.0


def test_unknown_command_fails():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
