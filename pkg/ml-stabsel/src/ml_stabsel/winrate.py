"""Model-guided pair selection scored against random selection.

Every trial draws a fresh graph compilation and candidate pool from the
simulator CLI (features only), lets the model pick its best row and an
rng pick a uniform row, then measures exactly those two rows at the same
shot budget in one more CLI call.  Ground truth never enters in-process;
the simulator is a subprocess working over files, so this package stays
buildable and testable without it until a win-rate run actually starts.
"""

from __future__ import annotations

import os
import shutil
import subprocess
import tempfile
from pathlib import Path

import numpy as np

from .data import load_records
from .rank import score_records

SIMULATOR_ENV = "ML_STABSEL_CLINRLAB"


class SimulatorUnavailable(RuntimeError):
    """No simulator CLI on PATH, in the environment, or given explicitly."""


def simulator_path(explicit: str | None = None) -> str:
    cand = explicit or os.environ.get(SIMULATOR_ENV) or shutil.which("clinrlab")
    if not cand or not (shutil.which(cand) or Path(cand).is_file()):
        raise SimulatorUnavailable(
            "simulator CLI not found; install it on PATH, set "
            f"{SIMULATOR_ENV}, or pass --simulator")
    return cand


def _dataset_call(sim: str, outdir: Path, seed: int, pool: int,
                  extra: list[str]) -> None:
    cmd = [sim, "dataset", "--graphs", "1", "--graph-seed", str(seed),
           "--seed", str(seed), "--pairs-per-graph", str(pool),
           "--out", str(outdir)] + extra
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        tail = proc.stderr.strip().splitlines()[-3:]
        raise RuntimeError(f"simulator call failed: {cmd}\n" + "\n".join(tail))


def _measure_rows(sim: str, outdir: Path, seed: int, pool: int,
                  rows: list[int], shots: int) -> dict[int, float]:
    """p_fail for the requested row indices of one pool."""
    want = sorted(set(rows))
    _dataset_call(sim, outdir, seed, pool,
                  ["--rows", ",".join(str(r) for r in want),
                   "--shots", str(shots)])
    recs = load_records(outdir / "dataset.csv", require_target=True)
    if len(recs) != len(want):
        raise RuntimeError(
            f"simulator measured {len(recs)} of {len(want)} rows")
    return {idx: rec.p_fail for idx, rec in zip(want, recs)}


def evaluate_winrate(model, meta, trials: int = 40, pool: int = 10_000,
                     shots: int = 20_000, seed: int = 0,
                     simulator: str | None = None, workdir=None,
                     progress=None) -> dict:
    """Win fraction and failure reduction of model picks over random picks.

    Returns per-trial rows plus bootstrap percentile intervals over the
    win indicators and the relative reductions.
    """
    sim = simulator_path(simulator)
    if trials < 1 or pool < 2:
        raise ValueError("need at least 1 trial over a pool of >= 2")
    rng = np.random.default_rng(seed)
    own = None
    if workdir is None:
        own = tempfile.TemporaryDirectory(prefix="winrate-")
        workdir = own.name
    workdir = Path(workdir)
    per_trial = []
    try:
        for t in range(trials):
            t_seed = int(rng.integers(1 << 31))
            rand_row = int(rng.integers(pool))
            fdir = workdir / f"t{t}-features"
            mdir = workdir / f"t{t}-measure"
            _dataset_call(sim, fdir, t_seed, pool, ["--no-measure"])
            cands = load_records(fdir / "dataset.csv", require_target=False)
            if len(cands) != pool:
                raise RuntimeError(f"pool dump returned {len(cands)} rows")
            scores = score_records(model, meta, cands)
            model_row = int(np.argmin(scores))
            got = _measure_rows(sim, mdir, t_seed, pool,
                                [model_row, rand_row], shots)
            p_model, p_rand = got[model_row], got[rand_row]
            win = bool(p_model < p_rand)
            reduction = float((p_rand - p_model) / p_rand) if p_rand > 0 else 0.0
            per_trial.append({
                "trial": t, "graph_seed": t_seed, "model_row": model_row,
                "random_row": rand_row, "p_fail_model": p_model,
                "p_fail_random": p_rand, "win": win, "reduction": reduction})
            if progress is not None:
                progress(per_trial[-1])
    finally:
        if own is not None:
            own.cleanup()

    wins = np.array([r["win"] for r in per_trial], dtype=float)
    reds = np.array([r["reduction"] for r in per_trial])
    boot = np.random.default_rng(int(rng.integers(1 << 31)))
    idx = boot.integers(trials, size=(1000, trials))
    win_bs = wins[idx].mean(axis=1)
    red_bs = reds[idx].mean(axis=1)
    return {
        "trials": trials, "pool": pool, "shots": shots, "seed": seed,
        "wins": int(wins.sum()),
        "ties": sum(1 for r in per_trial
                    if r["p_fail_model"] == r["p_fail_random"]),
        "win_fraction": float(wins.mean()),
        "mean_reduction": float(reds.mean()),
        "win_ci": [float(np.percentile(win_bs, 2.5)),
                   float(np.percentile(win_bs, 97.5))],
        "reduction_ci": [float(np.percentile(red_bs, 2.5)),
                         float(np.percentile(red_bs, 97.5))],
        "per_trial": per_trial,
    }
