"""Dataset loading, by-graph splitting, and tensorization."""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .features import FeatureRecord, node_dim


class SplitError(ValueError):
    """Dataset cannot support the requested split."""


def load_records(path, require_target: bool = True) -> list[FeatureRecord]:
    """Parse an exported dataset CSV.

    require_target drops rows whose p_fail cell is empty (feature-only
    exports); with it off those rows come back with p_fail NaN.
    """
    text = Path(path).read_text()
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec = FeatureRecord.from_csv_row(row)
        if require_target and math.isnan(rec.p_fail):
            continue
        out.append(rec)
    return out


def dataset_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass(frozen=True)
class Split:
    train_idx: tuple[int, ...]
    held_idx: tuple[int, ...]
    held_key: str
    train_keys: tuple[str, ...]


def split_by_graph(records, seed: int = 0, held_key: str | None = None) -> Split:
    """Hold one whole graph out; every other graph trains.

    The held graph is drawn by seed from the distinct adjacency hashes
    (or pinned with held_key).  Rows sharing an adjacency always land on
    the same side, so no held-out graph leaks into training.
    """
    keys = [r.graph_key() for r in records]
    distinct = sorted(set(keys))
    if len(distinct) < 2:
        raise SplitError(f"need >= 2 distinct graphs, got {len(distinct)}")
    if held_key is None:
        rng = np.random.default_rng(seed)
        held_key = distinct[int(rng.integers(len(distinct)))]
    elif held_key not in distinct:
        raise SplitError(f"held_key {held_key!r} not in dataset")
    train = tuple(i for i, k in enumerate(keys) if k != held_key)
    held = tuple(i for i, k in enumerate(keys) if k == held_key)
    split = Split(train, held, held_key,
                  tuple(k for k in distinct if k != held_key))
    check_leakage(split, records)
    return split


def check_leakage(split: Split, records) -> None:
    train_keys = {records[i].graph_key() for i in split.train_idx}
    held_keys = {records[i].graph_key() for i in split.held_idx}
    if train_keys & held_keys:
        raise SplitError("held-out adjacency present in training rows")
    if held_keys != {split.held_key}:
        raise SplitError("held rows disagree with recorded held_key")


def tensorize(records, kind: str = "pauli") -> dict:
    """Stack records into model-ready arrays.

    Returns adjacency (R,12,12), nodes (R,12,F+1), noise (R,1) scaled,
    flat (R,193), and y (R,) with NaN for unmeasured rows.  Each node
    row is its Pauli bits plus the vertex degree (scaled to [0,1]); the
    degree column is Pauli-blind, so the full-vs-support ablation stays
    a pure letter-identity contrast.
    """
    from .features import N_VERTICES, NOISE_SCALE

    adj = np.stack([r.adjacency_matrix() for r in records])
    degree = adj.sum(axis=2, keepdims=True) / (N_VERTICES - 1)
    nodes = np.stack([r.node_bits(kind) for r in records])
    nodes = np.concatenate([nodes, degree.astype(np.float32)], axis=2)
    noise = np.array([[r.noise_level * NOISE_SCALE] for r in records],
                     dtype=np.float32)
    flat = np.stack([r.flat_features() for r in records])
    y = np.array([r.p_fail for r in records], dtype=np.float64)
    assert nodes.shape[2] == node_dim(kind) + 1
    return {"adj": adj, "nodes": nodes, "noise": noise, "flat": flat, "y": y}
