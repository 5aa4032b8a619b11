"""Attention and baseline regressors over pair-feature records.

The main model runs masked additive attention over the compilation graph
(self-loops added), per-vertex Pauli bits as node features, then a pooled
readout joined with the scaled noise level.  Twelve vertices make sparse
graph machinery pointless; everything is dense batched tensor work.

Artifacts are a single torch file: architecture descriptor, weights,
target normalization, and a training manifest.  Reloading yields bitwise
identical float32 weights, so scores reproduce exactly.
"""

from __future__ import annotations

import numpy as np
import torch
from torch import nn

from .features import FLAT_DIM, node_dim

ARTIFACT_VERSION = 1


class GATLayer(nn.Module):
    """One multi-head additive-attention pass over a masked adjacency."""

    def __init__(self, in_dim: int, out_dim: int, heads: int):
        super().__init__()
        self.heads = heads
        self.out_dim = out_dim
        self.proj = nn.Linear(in_dim, heads * out_dim, bias=False)
        self.att_src = nn.Parameter(torch.empty(heads, out_dim))
        self.att_dst = nn.Parameter(torch.empty(heads, out_dim))
        nn.init.xavier_uniform_(self.proj.weight)
        nn.init.xavier_uniform_(self.att_src)
        nn.init.xavier_uniform_(self.att_dst)

    def forward(self, h: torch.Tensor, adj: torch.Tensor) -> torch.Tensor:
        b, n, _ = h.shape
        z = self.proj(h).view(b, n, self.heads, self.out_dim)
        # additive scores e_ij = leakyrelu(a_src.z_i + a_dst.z_j)
        src = torch.einsum("bnhd,hd->bnh", z, self.att_src)
        dst = torch.einsum("bnhd,hd->bnh", z, self.att_dst)
        e = src.unsqueeze(2) + dst.unsqueeze(1)  # (b, i, j, h)
        e = nn.functional.leaky_relu(e, 0.2)
        mask = adj + torch.eye(n, device=adj.device)
        e = e.masked_fill(mask.unsqueeze(-1) == 0, -1e9)
        alpha = torch.softmax(e, dim=2)
        out = torch.einsum("bijh,bjhd->bihd", alpha, z)
        return nn.functional.elu(out.reshape(b, n, self.heads * self.out_dim))


class GATRegressor(nn.Module):
    """Two attention passes, then a readout that also sees the raw bits.

    Vertex indices are physically meaningful (qubit roles are fixed
    across compilations), so the head gets the raw per-vertex Pauli
    bits verbatim alongside the attention pools; attention only has to
    model the graph-dependent correction on top, which transfers to
    unseen compilations far better than letting it carry everything.
    The degree column stays out of the skip path on purpose: flattened
    degrees fingerprint the training graphs.
    """

    N = 12  # vertices per record

    def __init__(self, node_features: int, hidden: int = 8, heads: int = 4):
        super().__init__()
        width = hidden * heads
        self.n_raw = node_features - 1  # trailing column is the degree
        self.gat1 = GATLayer(node_features, hidden, heads)
        self.gat2 = GATLayer(width, hidden, heads)
        self.head = nn.Sequential(
            nn.Linear(2 * width + self.N * self.n_raw + 1, 32), nn.ELU(),
            nn.Linear(32, 1))

    def forward(self, nodes, adj, noise, flat=None):
        h = self.gat2(self.gat1(nodes, adj), adj)
        raw = nodes[:, :, :self.n_raw].reshape(nodes.shape[0], -1)
        pooled = torch.cat([h.mean(dim=1), h.max(dim=1).values, raw, noise],
                           dim=1)
        return self.head(pooled).squeeze(-1)


class FlatRegressor(nn.Module):
    """No-attention baseline: multilayer readout on the flat encoding."""

    def __init__(self, in_dim: int = FLAT_DIM):
        super().__init__()
        self.net = nn.Sequential(
            nn.Linear(in_dim, 128), nn.ELU(),
            nn.Linear(128, 64), nn.ELU(),
            nn.Linear(64, 1))

    def forward(self, nodes, adj, noise, flat=None):
        return self.net(flat).squeeze(-1)


def build_model(desc: dict) -> nn.Module:
    arch = desc.get("arch", "gat")
    if arch == "gat":
        # +1: tensorize appends the vertex-degree column
        return GATRegressor(node_dim(desc.get("features", "pauli")) + 1,
                            hidden=int(desc.get("hidden", 8)),
                            heads=int(desc.get("heads", 4)))
    if arch == "flat":
        return FlatRegressor()
    raise ValueError(f"unknown architecture {arch!r}")


def save_model(path, model: nn.Module, desc: dict, norm: dict,
               manifest: dict) -> None:
    torch.save({"version": ARTIFACT_VERSION, "desc": desc, "norm": norm,
                "manifest": manifest, "state": model.state_dict()}, path)


def load_model(path) -> tuple[nn.Module, dict]:
    blob = torch.load(path, weights_only=True)
    if blob.get("version") != ARTIFACT_VERSION:
        raise ValueError(f"unsupported artifact version {blob.get('version')}")
    model = build_model(blob["desc"])
    model.load_state_dict(blob["state"])
    model.eval()
    meta = {k: blob[k] for k in ("desc", "norm", "manifest")}
    return model, meta


def predict(model: nn.Module, meta: dict, records, batch: int = 2048) -> np.ndarray:
    """Predicted p_fail per record, denormalized to original units."""
    from .data import tensorize

    arrs = tensorize(records, meta["desc"].get("features", "pauli"))
    norm = meta["norm"]
    model.eval()
    out = []
    with torch.no_grad():
        for lo in range(0, len(records), batch):
            hi = lo + batch
            pred = model(torch.from_numpy(arrs["nodes"][lo:hi]),
                         torch.from_numpy(arrs["adj"][lo:hi]),
                         torch.from_numpy(arrs["noise"][lo:hi]),
                         torch.from_numpy(arrs["flat"][lo:hi]))
            out.append(pred.numpy())
    z = np.concatenate(out).astype(np.float64)
    return z * norm["y_std"] + norm["y_mean"]
