import numpy as np
import pytest
import torch

from ml_stabsel.model import build_model
from ml_stabsel.winrate import (SIMULATOR_ENV, SimulatorUnavailable,
                                evaluate_winrate, simulator_path)

from conftest import simulator

META = {"desc": {"arch": "gat", "features": "pauli"},
        "norm": {"y_mean": 0.012, "y_std": 0.005}}


def untrained_model(seed=0):
    torch.manual_seed(seed)
    return build_model(META["desc"])


def test_simulator_resolution(monkeypatch):
    real = simulator()
    assert simulator_path(real) == real
    monkeypatch.setenv(SIMULATOR_ENV, real)
    assert simulator_path() == real
    monkeypatch.delenv(SIMULATOR_ENV)
    with pytest.raises(SimulatorUnavailable, match="simulator CLI"):
        simulator_path("/no/such/binary")


def test_simulator_failure_surfaces(tmp_path):
    model = untrained_model()
    with pytest.raises(RuntimeError, match="simulator call failed"):
        evaluate_winrate(model, META, trials=1, pool=10, shots=100,
                         simulator="/bin/false", workdir=tmp_path)


def test_argument_validation():
    model = untrained_model()
    with pytest.raises(ValueError):
        evaluate_winrate(model, META, trials=0, simulator=simulator())
    with pytest.raises(ValueError):
        evaluate_winrate(model, META, pool=1, simulator=simulator())


def test_untrained_model_near_even_and_stats_shape(tmp_path):
    model = untrained_model(4)
    stats = evaluate_winrate(model, META, trials=12, pool=200, shots=1500,
                             seed=5, simulator=simulator(), workdir=tmp_path)
    assert stats["trials"] == 12
    assert len(stats["per_trial"]) == 12
    assert stats["wins"] == sum(r["win"] for r in stats["per_trial"])
    assert 0.0 <= stats["win_fraction"] <= 1.0
    # an untrained pick is as good as random: 12 trials at p=0.5 stay
    # inside 1..11 wins far beyond 3 sigma
    assert 1 <= stats["wins"] <= 11
    assert stats["win_ci"][0] <= stats["win_fraction"] <= stats["win_ci"][1]
    assert (stats["reduction_ci"][0] <= stats["mean_reduction"]
            <= stats["reduction_ci"][1])
    for row in stats["per_trial"]:
        assert row["p_fail_model"] >= 0 and row["p_fail_random"] >= 0
        assert row["win"] == (row["p_fail_model"] < row["p_fail_random"])
    # trial workspaces land under the caller's directory when given
    assert (tmp_path / "t0-features" / "dataset.csv").exists()
    assert (tmp_path / "t0-measure" / "dataset.csv").exists()


def test_winrate_deterministic_for_seed(tmp_path):
    model = untrained_model(6)
    a = evaluate_winrate(model, META, trials=3, pool=80, shots=600, seed=9,
                         simulator=simulator(), workdir=tmp_path / "a")
    b = evaluate_winrate(model, META, trials=3, pool=80, shots=600, seed=9,
                         simulator=simulator(), workdir=tmp_path / "b")
    assert a == b
    c = evaluate_winrate(model, META, trials=3, pool=80, shots=600, seed=10,
                         simulator=simulator(), workdir=tmp_path / "c")
    assert [t["graph_seed"] for t in c["per_trial"]] != \
        [t["graph_seed"] for t in a["per_trial"]]
