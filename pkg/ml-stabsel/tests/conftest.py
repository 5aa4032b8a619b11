import math
import shutil
import subprocess

import numpy as np
import pytest

from ml_stabsel.features import FeatureRecord


def random_bits(rng, n: int) -> str:
    return "".join(rng.choice(["0", "1"], size=n))


def random_adjacency(rng) -> str:
    """Symmetric 12x12 with zero diagonal, row-major bits."""
    m = rng.integers(0, 2, size=(12, 12))
    m = np.triu(m, 1)
    m = m + m.T
    return "".join(str(int(b)) for b in m.reshape(-1))


def random_record(rng, adjacency: str | None = None,
                  p_fail: float | None = None) -> FeatureRecord:
    if adjacency is None:
        adjacency = random_adjacency(rng)
    if p_fail is None:
        p_fail = float(rng.uniform(0.002, 0.03))
    return FeatureRecord(adjacency, random_bits(rng, 24),
                         random_bits(rng, 24),
                         float(rng.uniform(0.0009, 0.0011)), p_fail)


def records_csv(records) -> str:
    """Render records in the exporter's CSV layout."""
    lines = ["graph_id,adjacency,pauli1,pauli2,noise_level,p_fail,shots,seed"]
    gids = {}
    for i, r in enumerate(records):
        gid = gids.setdefault(r.adjacency, len(gids))
        cell = "" if math.isnan(r.p_fail) else repr(r.p_fail)
        shots = "0" if cell == "" else "1000"
        lines.append(f"{gid},{r.adjacency},{r.pauli1},{r.pauli2},"
                     f"{r.noise_level!r},{cell},{shots},{7 + i}")
    return "\n".join(lines) + "\n"


def simulator() -> str:
    path = shutil.which("clinrlab")
    if path is None:
        pytest.skip("simulator CLI not installed")
    return path


@pytest.fixture(scope="session")
def small_dataset(tmp_path_factory):
    """A tiny measured export from the real simulator, shared per session."""
    out = tmp_path_factory.mktemp("smallds")
    subprocess.run(
        [simulator(), "dataset", "--graphs", "3", "--pairs-per-graph", "40",
         "--shots", "1500", "--seed", "9", "--graph-seed", "1",
         "--out", str(out)],
        check=True, capture_output=True)
    return out / "dataset.csv"
