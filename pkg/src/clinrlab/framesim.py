"""Batched shot sampling via Pauli frames around one tableau reference run.

The reference run fixes every nondeterministic measurement to 0 and remembers
the branch Pauli (a stabilizer anticommuting with the measured Z).  Each shot
then carries only an X/Z error frame: noise instructions XOR Paulis into the
frame, and at each originally-nondeterministic collapse a fresh random bit
decides whether the branch Pauli is injected.  That reproduces the joint
record distribution exactly while keeping per-shot work linear.

Random values are counter-based: value(seed, site, shot) depends on nothing
else, so results are bytewise identical for any chunk size or thread layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .circuit import Circuit
from .pauli import PauliString, conjugate_gate
from .tableau import Tableau

_U64 = (1 << 64) - 1


def _mix_scalar(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _U64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _U64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _U64
    return x ^ (x >> 31)


def _mix_array(x: np.ndarray) -> np.ndarray:
    x = x + np.uint64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def _site_uniform(seed: int, site: int, lo: int, hi: int) -> np.ndarray:
    """Uniform [0,1) float64 for shots lo..hi-1 at one instruction site."""
    base = _mix_scalar((seed & _U64) ^ (site * 0xD1B54A32D192ED03 & _U64))
    shots = np.arange(lo, hi, dtype=np.uint64)
    v = _mix_array(np.uint64(base) ^ shots)
    return (v >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)


class _ZeroBits:
    """Stands in for a Generator to force reference branches to 0."""

    def integers(self, lo: int, hi: int) -> int:
        return 0


def _conj_images(kind: str, nq: int, angle) -> list[PauliString]:
    """Images of X_0, Z_0, (X_1, Z_1) under conjugation by the gate."""
    out = []
    for q in range(nq):
        for letter in "XZ":
            p = PauliString.single(nq, q, letter)
            out.append(conjugate_gate(p, kind, tuple(range(nq)), angle))
    return out


# --- compiled per-instruction steps ----------------------------------------

@dataclass
class _Step:
    tag: str
    qubits: tuple[int, ...] = ()
    site: int = 0
    # unitary: GF(2) update coefficients; measure/reset: branch support and
    # reference outcome; noise: probabilities and pauli components
    coeffs: tuple = ()
    branch: tuple = ()
    ref_outcome: int = 0
    rec: int = -1
    prob: float = 0.0
    probs: tuple = ()


def _branch_support(p: PauliString | None) -> tuple:
    if p is None:
        return ()
    out = []
    for q in range(p.n):
        dx = (p.x >> q) & 1
        dz = (p.z >> q) & 1
        if dx or dz:
            out.append((q, dx, dz))
    return tuple(out)


def _compile(circ: Circuit) -> tuple[list[_Step], int, Tableau]:
    """Reference-run the circuit once; build the per-shot frame program."""
    n = circ.n_qubits
    t = Tableau(n)
    zero = _ZeroBits()
    steps: list[_Step] = []
    n_rec = 0
    for site, g in enumerate(circ.ops):
        g.validate(n)
        k = g.kind
        if k == "MEASURE_Z":
            q = g.qubits[0]
            r = t.measure(q, rng=zero)
            steps.append(_Step("m", (q,), site,
                               branch=_branch_support(r.branch_pauli(n)),
                               ref_outcome=r.outcome, rec=n_rec))
            n_rec += 1
        elif k == "RESET":
            q = g.qubits[0]
            r = t.reset(q, rng=zero)
            steps.append(_Step("r", (q,), site,
                               branch=_branch_support(r.branch_pauli(n))))
        elif k == "PAULI_ERROR":
            comp = tuple(
                (q, int(c in "XY"), int(c in "YZ"))
                for q, c in zip(g.qubits, g.pauli)
            )
            steps.append(_Step("pe", g.qubits, site, coeffs=comp, prob=g.prob))
        elif k == "FLIP_RECORD":
            if n_rec == 0:
                raise ValueError("FLIP_RECORD before any measurement")
            steps.append(_Step("fr", (), site, prob=g.prob, rec=n_rec - 1))
        elif k == "DEPOLARIZE1":
            steps.append(_Step("d1", g.qubits, site, prob=g.prob))
        elif k == "DEPOLARIZE2":
            steps.append(_Step("d2", g.qubits, site, prob=g.prob))
        elif k == "PAULI_CHANNEL_1":
            steps.append(_Step("pc1", g.qubits, site, probs=g.probs))
        else:
            t.apply_gate(g)
            nq = len(g.qubits)
            local = _conj_images(k, nq, g.angle)
            coeffs = tuple(
                tuple(((img.x >> j) & 1, (img.z >> j) & 1) for img in local)
                for j in range(nq)
            )
            if any(c != ((1, 0), (0, 1)) for c in coeffs) or nq > 1:
                steps.append(_Step("u", g.qubits, site, coeffs=coeffs))
    return steps, n_rec, t


@dataclass
class ShotBatch:
    """Measurement records for a batch of shots of one circuit."""

    shots: int
    seed: int
    records: np.ndarray = field(repr=False)  # (shots, n_records) uint8

    @cached_property
    def counts(self) -> dict[str, int]:
        if self.records.shape[1] == 0:
            return {"": self.shots} if self.shots else {}
        keys, freq = np.unique(self.records, axis=0, return_counts=True)
        return {
            "".join("1" if b else "0" for b in row): int(c)
            for row, c in zip(keys, freq)
        }

    def record_count(self) -> int:
        return int(self.records.shape[1])


def run_batch(circ: Circuit, shots: int, seed: int = 0,
              chunk: int = 1 << 16) -> ShotBatch:
    """Sample measurement records; deterministic given (circuit, shots, seed)."""
    if shots < 0:
        raise ValueError("negative shot count")
    steps, n_rec, _ = _compile(circ)
    n = circ.n_qubits
    records = np.empty((shots, n_rec), dtype=np.uint8)

    for lo in range(0, shots, chunk):
        hi = min(lo + chunk, shots)
        m = hi - lo
        fx = np.zeros((n, m), dtype=np.uint8)
        fz = np.zeros((n, m), dtype=np.uint8)
        rec = records[lo:hi]

        for st in steps:
            tag = st.tag
            if tag == "u":
                qs = st.qubits
                olds = [(fx[q].copy(), fz[q].copy()) for q in qs]
                for j, q in enumerate(qs):
                    nx = np.zeros(m, dtype=np.uint8)
                    nz = np.zeros(m, dtype=np.uint8)
                    for i, (ox, oz) in enumerate(olds):
                        cx, cz = st.coeffs[j][2 * i], st.coeffs[j][2 * i + 1]
                        if cx[0]:
                            nx ^= ox
                        if cz[0]:
                            nx ^= oz
                        if cx[1]:
                            nz ^= ox
                        if cz[1]:
                            nz ^= oz
                    fx[q] = nx
                    fz[q] = nz
            elif tag == "m":
                if st.branch:
                    b = (_site_uniform(seed, st.site, lo, hi) < 0.5).astype(np.uint8)
                    for q2, dx, dz in st.branch:
                        if dx:
                            fx[q2] ^= b
                        if dz:
                            fz[q2] ^= b
                rec[:, st.rec] = st.ref_outcome ^ fx[st.qubits[0]]
            elif tag == "r":
                if st.branch:
                    b = (_site_uniform(seed, st.site, lo, hi) < 0.5).astype(np.uint8)
                    for q2, dx, dz in st.branch:
                        if dx:
                            fx[q2] ^= b
                        if dz:
                            fz[q2] ^= b
                fx[st.qubits[0]] = 0
                fz[st.qubits[0]] = 0
            elif tag == "pe":
                hit = (_site_uniform(seed, st.site, lo, hi) < st.prob).astype(np.uint8)
                for q2, dx, dz in st.coeffs:
                    if dx:
                        fx[q2] ^= hit
                    if dz:
                        fz[q2] ^= hit
            elif tag == "fr":
                hit = (_site_uniform(seed, st.site, lo, hi) < st.prob).astype(np.uint8)
                rec[:, st.rec] ^= hit
            elif tag == "d1":
                if not st.prob:
                    continue
                u = _site_uniform(seed, st.site, lo, hi)
                hit = u < st.prob
                # conditioned on a hit, u/p is uniform, picking X, Y or Z
                w = np.minimum((u * (3.0 / st.prob)).astype(np.int64), 2)
                q2 = st.qubits[0]
                fx[q2] ^= (hit & (w != 2)).astype(np.uint8)
                fz[q2] ^= (hit & (w != 0)).astype(np.uint8)
            elif tag == "d2":
                if not st.prob:
                    continue
                u = _site_uniform(seed, st.site, lo, hi)
                hit = u < st.prob
                # w = 1..15 indexes the non-identity two-qubit Paulis
                w = np.minimum((u * (15.0 / st.prob)).astype(np.int64), 14) + 1
                a, bq = st.qubits
                fx[a] ^= (hit & ((w & 1) != 0)).astype(np.uint8)
                fz[a] ^= (hit & ((w & 2) != 0)).astype(np.uint8)
                fx[bq] ^= (hit & ((w & 4) != 0)).astype(np.uint8)
                fz[bq] ^= (hit & ((w & 8) != 0)).astype(np.uint8)
            elif tag == "pc1":
                u = _site_uniform(seed, st.site, lo, hi)
                px, py, pz = st.probs
                q2 = st.qubits[0]
                fx[q2] ^= (u < px + py).astype(np.uint8)
                fz[q2] ^= ((u >= px) & (u < px + py + pz)).astype(np.uint8)
            else:  # pragma: no cover
                raise AssertionError(tag)

    return ShotBatch(shots, seed, records)
