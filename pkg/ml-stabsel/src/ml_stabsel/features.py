"""Feature encoding for verification-pair quality records.

A record pairs one graph compilation (12-vertex adjacency, row-major bit
string) with two 24-bit Pauli encodings (bit 2q is the X component of
qubit q, bit 2q+1 the Z component, Y sets both), the per-row noise level,
and the measured failure probability.  The bit layouts match the exporter
CSV exactly; re-emitting a parsed record must reproduce the input strings
bit for bit.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

N_VERTICES = 12
ADJ_BITS = N_VERTICES * N_VERTICES
PAULI_BITS = 2 * N_VERTICES
FEATURE_KINDS = ("pauli", "support")

# Noise levels sit near 1e-3; scaled so the model sees O(1) inputs.
NOISE_SCALE = 1e3


class FeatureError(ValueError):
    """Malformed or shape-mismatched feature input."""


def _bits(text: str, want: int, what: str) -> str:
    if len(text) != want or set(text) - {"0", "1"}:
        raise FeatureError(f"{what}: want {want} bits, got {text!r}")
    return text


@dataclass(frozen=True)
class FeatureRecord:
    adjacency: str
    pauli1: str
    pauli2: str
    noise_level: float
    p_fail: float  # NaN when the row was exported without measurement

    def __post_init__(self):
        _bits(self.adjacency, ADJ_BITS, "adjacency")
        _bits(self.pauli1, PAULI_BITS, "pauli1")
        _bits(self.pauli2, PAULI_BITS, "pauli2")
        if not 0.0 < self.noise_level < 1.0:
            raise FeatureError(f"noise_level {self.noise_level} out of range")

    @classmethod
    def from_csv_row(cls, row: dict) -> "FeatureRecord":
        try:
            p_fail = float(row["p_fail"]) if row["p_fail"] else math.nan
            return cls(row["adjacency"], row["pauli1"], row["pauli2"],
                       float(row["noise_level"]), p_fail)
        except KeyError as exc:
            raise FeatureError(f"row missing column {exc}") from None

    def graph_key(self) -> str:
        """Split key: hash of the adjacency bits as exported."""
        return hashlib.sha256(self.adjacency.encode()).hexdigest()

    def adjacency_matrix(self) -> np.ndarray:
        a = np.frombuffer(self.adjacency.encode(), dtype=np.uint8) - ord("0")
        return a.reshape(N_VERTICES, N_VERTICES).astype(np.float32)

    def node_bits(self, kind: str = "pauli") -> np.ndarray:
        """Per-vertex feature rows.

        "pauli" keeps the four components [x1, z1, x2, z2]; "support"
        collapses each Pauli to its support bit [x1|z1, x2|z2], erasing
        the letter identity on purpose (the ablation baseline).
        """
        p1 = np.frombuffer(self.pauli1.encode(), dtype=np.uint8) - ord("0")
        p2 = np.frombuffer(self.pauli2.encode(), dtype=np.uint8) - ord("0")
        x1, z1 = p1[0::2], p1[1::2]
        x2, z2 = p2[0::2], p2[1::2]
        if kind == "pauli":
            cols = (x1, z1, x2, z2)
        elif kind == "support":
            cols = (np.maximum(x1, z1), np.maximum(x2, z2))
        else:
            raise FeatureError(f"unknown feature kind {kind!r}")
        return np.stack(cols, axis=1).astype(np.float32)

    def pauli_strings(self) -> tuple[str, str]:
        """Re-emit the 24-bit encodings from the parsed node view."""
        nb = self.node_bits("pauli").astype(int)
        one = "".join(f"{nb[q, 0]}{nb[q, 1]}" for q in range(N_VERTICES))
        two = "".join(f"{nb[q, 2]}{nb[q, 3]}" for q in range(N_VERTICES))
        return one, two

    def flat_features(self) -> np.ndarray:
        """adjacency + both encodings + scaled noise, for the flat baseline."""
        adj = self.adjacency_matrix().reshape(-1)
        nb = self.node_bits("pauli")
        p1 = nb[:, :2].reshape(-1)
        p2 = nb[:, 2:].reshape(-1)
        noise = np.array([self.noise_level * NOISE_SCALE], dtype=np.float32)
        return np.concatenate([adj, p1, p2, noise]).astype(np.float32)


def node_dim(kind: str) -> int:
    if kind not in FEATURE_KINDS:
        raise FeatureError(f"unknown feature kind {kind!r}")
    return 4 if kind == "pauli" else 2


FLAT_DIM = ADJ_BITS + 2 * PAULI_BITS + 1
