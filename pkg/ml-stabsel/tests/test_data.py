import math

import numpy as np
import pytest

from ml_stabsel.data import (Split, SplitError, check_leakage, dataset_digest,
                             load_records, split_by_graph, tensorize)

from conftest import random_adjacency, random_record, records_csv


def make_records(n_graphs: int, per_graph: int, seed: int = 0,
                 measured: bool = True):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n_graphs):
        adjacency = random_adjacency(rng)
        for _ in range(per_graph):
            out.append(random_record(
                rng, adjacency=adjacency,
                p_fail=None if measured else math.nan))
    return out


def test_load_records_target_filter(tmp_path):
    recs = make_records(2, 3) + make_records(1, 2, seed=9, measured=False)
    path = tmp_path / "ds.csv"
    path.write_text(records_csv(recs))
    assert len(load_records(path)) == 6
    both = load_records(path, require_target=False)
    assert len(both) == 8
    assert sum(math.isnan(r.p_fail) for r in both) == 2


def test_dataset_digest_tracks_content(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text(records_csv(make_records(1, 2)))
    d1 = dataset_digest(p)
    p.write_text(records_csv(make_records(1, 3)))
    assert dataset_digest(p) != d1
    assert len(d1) == 64


def test_split_partitions_whole_graphs():
    recs = make_records(4, 5)
    split = split_by_graph(recs, seed=3)
    assert len(split.train_idx) == 15
    assert len(split.held_idx) == 5
    held_keys = {recs[i].graph_key() for i in split.held_idx}
    assert held_keys == {split.held_key}
    assert split.held_key not in split.train_keys
    assert len(split.train_keys) == 3
    # every row lands exactly once
    assert sorted(split.train_idx + split.held_idx) == list(range(20))


def test_split_seed_determinism_and_variation():
    recs = make_records(6, 2)
    a = split_by_graph(recs, seed=1)
    b = split_by_graph(recs, seed=1)
    assert a == b
    helds = {split_by_graph(recs, seed=s).held_key for s in range(12)}
    assert len(helds) > 1


def test_split_pinned_held_key():
    recs = make_records(3, 4)
    key = recs[4].graph_key()
    split = split_by_graph(recs, held_key=key)
    assert split.held_key == key
    with pytest.raises(SplitError, match="not in dataset"):
        split_by_graph(recs, held_key="f" * 64)


def test_single_graph_rejected():
    recs = make_records(1, 8)
    with pytest.raises(SplitError, match=">= 2 distinct graphs"):
        split_by_graph(recs, seed=0)


def test_check_leakage_catches_mixed_split():
    recs = make_records(2, 3)
    honest = split_by_graph(recs, seed=0)
    # move one held row into training
    bad = Split(honest.train_idx + (honest.held_idx[0],),
                honest.held_idx, honest.held_key, honest.train_keys)
    with pytest.raises(SplitError, match="held-out adjacency"):
        check_leakage(bad, recs)


def test_tensorize_shapes_and_degree():
    recs = make_records(2, 4)
    arrs = tensorize(recs, "pauli")
    assert arrs["adj"].shape == (8, 12, 12)
    assert arrs["nodes"].shape == (8, 12, 5)
    assert arrs["flat"].shape == (8, 193)
    assert arrs["noise"].shape == (8, 1)
    assert arrs["y"].shape == (8,)
    # degree column is the scaled row sum of the adjacency
    want = arrs["adj"].sum(axis=2) / 11.0
    assert np.allclose(arrs["nodes"][:, :, -1], want)
    assert tensorize(recs, "support")["nodes"].shape == (8, 12, 3)


def test_tensorize_scales_noise():
    recs = make_records(1, 2) + make_records(1, 2, seed=5)
    arrs = tensorize(recs)
    for got, rec in zip(arrs["noise"][:, 0], recs):
        assert got == pytest.approx(rec.noise_level * 1e3, rel=1e-5)


def test_tensorize_keeps_nan_targets():
    recs = make_records(2, 2, measured=False)
    assert np.isnan(tensorize(recs)["y"]).all()
