import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ml_stabsel.features import (FLAT_DIM, FeatureError, FeatureRecord,
                                 node_dim)

from conftest import random_adjacency, random_record


def test_from_csv_row_roundtrips_bits():
    rng = np.random.default_rng(3)
    rec = random_record(rng)
    row = {"adjacency": rec.adjacency, "pauli1": rec.pauli1,
           "pauli2": rec.pauli2, "noise_level": repr(rec.noise_level),
           "p_fail": repr(rec.p_fail)}
    back = FeatureRecord.from_csv_row(row)
    assert back.pauli_strings() == (rec.pauli1, rec.pauli2)
    assert back.adjacency == rec.adjacency
    assert back.noise_level == rec.noise_level


def test_empty_p_fail_becomes_nan():
    rng = np.random.default_rng(4)
    rec = random_record(rng)
    row = {"adjacency": rec.adjacency, "pauli1": rec.pauli1,
           "pauli2": rec.pauli2, "noise_level": "0.001", "p_fail": ""}
    assert math.isnan(FeatureRecord.from_csv_row(row).p_fail)


def test_missing_column_is_feature_error():
    with pytest.raises(FeatureError, match="missing column"):
        FeatureRecord.from_csv_row({"adjacency": "0" * 144})


@pytest.mark.parametrize("field,value", [
    ("adjacency", "01" * 71),          # 142 bits
    ("pauli1", "0" * 23),
    ("pauli2", "0" * 25),
    ("pauli1", "0" * 23 + "2"),        # non-binary
])
def test_bad_bit_strings_rejected(field, value):
    rng = np.random.default_rng(5)
    good = random_record(rng)
    kwargs = {"adjacency": good.adjacency, "pauli1": good.pauli1,
              "pauli2": good.pauli2, "noise_level": 1e-3, "p_fail": 0.01}
    kwargs[field] = value
    with pytest.raises(FeatureError):
        FeatureRecord(**kwargs)


def test_noise_level_range_checked():
    rng = np.random.default_rng(6)
    good = random_record(rng)
    with pytest.raises(FeatureError, match="noise_level"):
        FeatureRecord(good.adjacency, good.pauli1, good.pauli2, 0.0, 0.01)


def test_node_bits_layout():
    # X on qubit 0 of pauli1, Z on qubit 11 of pauli2
    p1 = "10" + "00" * 11
    p2 = "00" * 11 + "01"
    rec = FeatureRecord("0" * 144, p1, p2, 1e-3, 0.01)
    nb = rec.node_bits("pauli")
    assert nb.shape == (12, 4)
    assert nb[0].tolist() == [1.0, 0.0, 0.0, 0.0]
    assert nb[11].tolist() == [0.0, 0.0, 0.0, 1.0]
    assert nb[1:11].sum() == 0


def test_support_collapses_letters():
    # Y (both bits) and X on the same qubit look identical as support
    y_rec = FeatureRecord("0" * 144, "11" + "00" * 11, "0" * 24, 1e-3, 0.01)
    x_rec = FeatureRecord("0" * 144, "10" + "00" * 11, "0" * 24, 1e-3, 0.01)
    assert np.array_equal(y_rec.node_bits("support"),
                          x_rec.node_bits("support"))
    assert not np.array_equal(y_rec.node_bits("pauli"),
                              x_rec.node_bits("pauli"))


def test_unknown_feature_kind():
    rng = np.random.default_rng(7)
    with pytest.raises(FeatureError, match="kind"):
        random_record(rng).node_bits("letters")
    with pytest.raises(FeatureError):
        node_dim("letters")
    assert node_dim("pauli") == 4
    assert node_dim("support") == 2


@given(st.integers(0, 2 ** 24 - 1), st.integers(0, 2 ** 24 - 1),
       st.integers(0, 2 ** 31 - 1))
def test_pauli_roundtrip_and_support_or(code1, code2, adj_seed):
    p1 = "".join(str((code1 >> b) & 1) for b in range(24))
    p2 = "".join(str((code2 >> b) & 1) for b in range(24))
    adjacency = random_adjacency(np.random.default_rng(adj_seed))
    rec = FeatureRecord(adjacency, p1, p2, 1e-3, 0.01)
    assert rec.pauli_strings() == (p1, p2)
    nb = rec.node_bits("pauli")
    sup = rec.node_bits("support")
    assert np.array_equal(sup[:, 0], np.maximum(nb[:, 0], nb[:, 1]))
    assert np.array_equal(sup[:, 1], np.maximum(nb[:, 2], nb[:, 3]))


def test_graph_key_tracks_adjacency():
    rng = np.random.default_rng(8)
    a = random_record(rng)
    same = FeatureRecord(a.adjacency, a.pauli2, a.pauli1, 2e-3, 0.02)
    assert a.graph_key() == same.graph_key()
    flipped = "1" + a.adjacency[1:] if a.adjacency[0] == "0" \
        else "0" + a.adjacency[1:]
    other = FeatureRecord(flipped, a.pauli1, a.pauli2, 1e-3, 0.01)
    assert other.graph_key() != a.graph_key()


def test_adjacency_matrix_shape_and_values():
    rng = np.random.default_rng(9)
    rec = random_record(rng)
    m = rec.adjacency_matrix()
    assert m.shape == (12, 12)
    assert np.array_equal(m, m.T)
    assert m.diagonal().sum() == 0
    assert set(np.unique(m)) <= {0.0, 1.0}
    assert "".join(str(int(b)) for b in m.reshape(-1)) == rec.adjacency


def test_flat_features_layout():
    rng = np.random.default_rng(10)
    rec = random_record(rng)
    flat = rec.flat_features()
    assert flat.shape == (FLAT_DIM,)
    assert flat[-1] == pytest.approx(rec.noise_level * 1e3)
    assert np.array_equal(flat[:144], rec.adjacency_matrix().reshape(-1))
