"""Training loop with a held-out-graph evaluation.

The target is the measured failure probability, z-scored by training-set
statistics; quality is reported as Spearman rank correlation on the rows
of the one graph the split withheld.  A dataset whose training targets
are all identical has no rank signal at all, so training refuses to start
rather than emit a degenerate model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import torch
from scipy.stats import spearmanr

from .data import Split, split_by_graph, tensorize
from .model import build_model, predict


class ConstantTargetError(RuntimeError):
    """All training targets equal; rank correlation is undefined."""


@dataclass
class TrainResult:
    model: object
    desc: dict
    norm: dict
    manifest: dict
    metrics: dict


def spearman(a, b) -> float:
    # rank correlation is undefined against a constant column
    if np.std(a) == 0 or np.std(b) == 0:
        return float("nan")
    return float(spearmanr(a, b).statistic)


def train(records, seed: int = 0, arch: str = "gat",
          features: str = "pauli", epochs: int = 1200, lr: float = 2e-3,
          batch: int = 128, weight_decay: float = 1e-4,
          center_graphs: bool = True, held_key: str | None = None,
          split: Split | None = None) -> TrainResult:
    if split is None:
        split = split_by_graph(records, seed=seed, held_key=held_key)
    desc = {"arch": arch, "features": features}
    arrs = tensorize(records, features)
    tr = np.array(split.train_idx)
    he = np.array(split.held_idx)
    y_tr = arrs["y"][tr]
    if np.isnan(y_tr).any():
        raise ValueError("training rows must carry measured targets")
    if center_graphs:
        # subtract each training graph's own mean failure rate: graph
        # offsets are unlearnable for an unseen compilation anyway, and
        # leaving them in just invites the model to fingerprint graphs
        keys = np.array([records[i].graph_key() for i in tr])
        fit_y = y_tr.copy()
        for k in np.unique(keys):
            fit_y[keys == k] -= fit_y[keys == k].mean()
    else:
        fit_y = y_tr - y_tr.mean()
    y_std = float(fit_y.std())
    if y_std == 0.0:
        raise ConstantTargetError(
            "all training targets identical; rank target undefined")
    norm = {"y_mean": float(y_tr.mean()), "y_std": y_std}

    torch.manual_seed(seed)
    model = build_model(desc)
    opt = torch.optim.Adam(model.parameters(), lr=lr,
                           weight_decay=weight_decay)
    tens = {k: torch.from_numpy(arrs[k][tr]) for k in ("nodes", "adj",
                                                       "noise", "flat")}
    target = torch.from_numpy((fit_y / y_std).astype(np.float32))
    rng = np.random.default_rng(seed)
    model.train()
    last = math.nan
    for _ in range(epochs):
        order = rng.permutation(len(tr))
        for lo in range(0, len(tr), batch):
            sel = torch.from_numpy(order[lo:lo + batch])
            opt.zero_grad()
            pred = model(tens["nodes"][sel], tens["adj"][sel],
                         tens["noise"][sel], tens["flat"][sel])
            loss = torch.mean((pred - target[sel]) ** 2)
            loss.backward()
            opt.step()
            last = float(loss.detach())

    meta = {"desc": desc, "norm": norm}
    pred_tr = predict(model, meta, [records[i] for i in tr])
    pred_he = predict(model, meta, [records[i] for i in he])
    metrics = {
        "spearman_held": spearman(pred_he, arrs["y"][he]),
        "spearman_train": spearman(pred_tr, y_tr),
        "final_loss": last,
        "n_train": int(len(tr)),
        "n_held": int(len(he)),
        "held_graph": split.held_key,
    }
    manifest = {"seed": seed, "arch": arch, "features": features,
                "epochs": epochs, "lr": lr, "batch": batch,
                "weight_decay": weight_decay, "center_graphs": center_graphs,
                "held_graph": split.held_key,
                "train_graphs": list(split.train_keys),
                "torch": str(torch.__version__)}
    return TrainResult(model, desc, norm, manifest, metrics)
