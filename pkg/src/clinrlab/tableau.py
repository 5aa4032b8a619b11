"""Single-shot stabilizer tableau (destabilizer + stabilizer rows).

Rows hold packed (x|z) bits in uint64 words plus a phase column of i-powers
mod 4, matching the PauliString convention (Y = i * XZ). Row i < n is the
destabilizer partner of stabilizer row n + i. Gate updates are column bit
operations vectorized over all 2n rows; no per-qubit sign table is needed in
this phase convention (CNOT and CZ update phases with a single AND term).
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import Circuit, Gate
from .pauli import NotCliffordError, PauliString, _angle_step

__all__ = ["Tableau", "MeasureResult"]

_ONE = np.uint64(1)


def _mask_to_words(mask: int, nw: int) -> np.ndarray:
    out = np.zeros(nw, dtype=np.uint64)
    for w in range(nw):
        out[w] = (mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def _words_to_mask(words: np.ndarray) -> int:
    out = 0
    for w, v in enumerate(words.tolist()):
        out |= int(v) << (64 * w)
    return out


class MeasureResult:
    """Outcome of one Z-basis collapse in the tableau."""

    __slots__ = ("outcome", "nondeterministic", "branch_x", "branch_z")

    def __init__(self, outcome: int, nondeterministic: bool,
                 branch_x: np.ndarray | None, branch_z: np.ndarray | None):
        self.outcome = outcome
        self.nondeterministic = nondeterministic
        # When nondeterministic: a stabilizer anticommuting with Z_q, i.e. the
        # Pauli relating the two collapse branches (sign irrelevant to frames).
        self.branch_x = branch_x
        self.branch_z = branch_z

    def branch_pauli(self, n: int) -> PauliString | None:
        if not self.nondeterministic:
            return None
        return PauliString(n, _words_to_mask(self.branch_x),
                           _words_to_mask(self.branch_z), 0)


class Tableau:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("tableau needs at least one qubit")
        self.n = n
        self.nw = (n + 63) // 64
        self.xs = np.zeros((2 * n, self.nw), dtype=np.uint64)
        self.zs = np.zeros((2 * n, self.nw), dtype=np.uint64)
        self.phase = np.zeros(2 * n, dtype=np.uint64)
        for q in range(n):
            w, b = divmod(q, 64)
            self.xs[q, w] |= _ONE << np.uint64(b)        # destabilizer X_q
            self.zs[n + q, w] |= _ONE << np.uint64(b)    # stabilizer Z_q

    def copy(self) -> "Tableau":
        t = Tableau.__new__(Tableau)
        t.n, t.nw = self.n, self.nw
        t.xs = self.xs.copy()
        t.zs = self.zs.copy()
        t.phase = self.phase.copy()
        return t

    # -- row access ---------------------------------------------------------

    def stabilizer(self, i: int) -> PauliString:
        return self._row_pauli(self.n + i)

    def destabilizer(self, i: int) -> PauliString:
        return self._row_pauli(i)

    def stabilizers(self) -> list[PauliString]:
        return [self.stabilizer(i) for i in range(self.n)]

    def _row_pauli(self, r: int) -> PauliString:
        return PauliString(self.n, _words_to_mask(self.xs[r]),
                           _words_to_mask(self.zs[r]), int(self.phase[r]))

    def _row_mult(self, i: int, j: int) -> None:
        """row_i *= row_j (group product, exact phases)."""
        cross = int(np.bitwise_count(self.zs[i] & self.xs[j]).sum())
        self.phase[i] = (self.phase[i] + self.phase[j] + np.uint64(2 * cross)) % np.uint64(4)
        self.xs[i] ^= self.xs[j]
        self.zs[i] ^= self.zs[j]

    # -- gates ---------------------------------------------------------------

    def apply(self, kind: str, qubits: tuple[int, ...],
              angle: float | None = None) -> None:
        if kind in ("RZ", "GZ"):
            k = _angle_step(angle, math.pi / 2)
            if k is None:
                raise NotCliffordError(f"{kind}({angle}) in tableau")
            kind = ("I", "S", "Z", "S_DAG")[k]
        elif kind == "RX":
            k = _angle_step(angle, math.pi / 2)
            if k is None:
                raise NotCliffordError(f"RX({angle}) in tableau")
            kind = ("I", "SQRT_X", "X", "SQRT_X_DAG")[k]
        elif kind == "GPI":
            k = _angle_step(angle, math.pi / 2)
            if k is None:
                raise NotCliffordError(f"GPI({angle}) in tableau")
            kind = ("X", "Y", "X", "Y")[k]
        elif kind == "GPI2":
            k = _angle_step(angle, math.pi / 2)
            if k is None:
                raise NotCliffordError(f"GPI2({angle}) in tableau")
            kind = ("SQRT_X", "SQRT_Y", "SQRT_X_DAG", "SQRT_Y_DAG")[k]
        elif kind == "ZZ":
            if _angle_step(angle, math.pi / 4) is None:
                raise NotCliffordError(f"ZZ({angle}) in tableau")
            a, b = qubits
            self.apply("CNOT", (a, b))
            self.apply("RZ", (b,), 2 * angle)
            self.apply("CNOT", (a, b))
            return

        if kind == "I":
            return

        ph, four = self.phase, np.uint64(4)
        two, three = np.uint64(2), np.uint64(3)
        if kind in ("CNOT", "CZ"):
            qa, qb = qubits
            wa, ba = divmod(qa, 64)
            wb, bb = divmod(qb, 64)
            ba_, bb_ = np.uint64(ba), np.uint64(bb)
            xa = (self.xs[:, wa] >> ba_) & _ONE
            za = (self.zs[:, wa] >> ba_) & _ONE
            xb = (self.xs[:, wb] >> bb_) & _ONE
            zb = (self.zs[:, wb] >> bb_) & _ONE
            if kind == "CNOT":
                self.xs[:, wb] ^= xa << bb_
                self.zs[:, wa] ^= zb << ba_
            else:  # CZ
                ph[:] = (ph + two * (xa & xb)) % four
                self.zs[:, wa] ^= xb << ba_
                self.zs[:, wb] ^= xa << bb_
            return

        (q,) = qubits
        w, b = divmod(q, 64)
        b_ = np.uint64(b)
        xq = (self.xs[:, w] >> b_) & _ONE
        zq = (self.zs[:, w] >> b_) & _ONE
        if kind == "H":
            ph[:] = (ph + two * (xq & zq)) % four
            diff = (xq ^ zq) << b_
            self.xs[:, w] ^= diff
            self.zs[:, w] ^= diff
        elif kind == "S":
            ph[:] = (ph + xq) % four
            self.zs[:, w] ^= xq << b_
        elif kind == "S_DAG":
            ph[:] = (ph + three * xq) % four
            self.zs[:, w] ^= xq << b_
        elif kind == "X":
            ph[:] = (ph + two * zq) % four
        elif kind == "Y":
            ph[:] = (ph + two * (xq ^ zq)) % four
        elif kind == "Z":
            ph[:] = (ph + two * xq) % four
        elif kind == "SQRT_X":
            ph[:] = (ph + three * zq) % four
            self.xs[:, w] ^= zq << b_
        elif kind == "SQRT_X_DAG":
            ph[:] = (ph + zq) % four
            self.xs[:, w] ^= zq << b_
        elif kind == "SQRT_Y":
            ph[:] = (ph + two * xq + two * (xq & zq)) % four
            diff = (xq ^ zq) << b_
            self.xs[:, w] ^= diff
            self.zs[:, w] ^= diff
        elif kind == "SQRT_Y_DAG":
            ph[:] = (ph + two * zq + two * (xq & zq)) % four
            diff = (xq ^ zq) << b_
            self.xs[:, w] ^= diff
            self.zs[:, w] ^= diff
        else:
            raise ValueError(f"tableau cannot apply gate kind {kind!r}")

    def apply_gate(self, g: Gate) -> None:
        self.apply(g.kind, g.qubits, g.angle)

    def apply_pauli(self, p: PauliString) -> None:
        """Conjugation-free state update: multiply signs of anticommuting rows."""
        px = _mask_to_words(p.x, self.nw)
        pz = _mask_to_words(p.z, self.nw)
        anti = (np.bitwise_count(self.xs & pz[None, :])
                + np.bitwise_count(self.zs & px[None, :])).sum(axis=1) & 1
        self.phase[:] = (self.phase + np.uint64(2) * anti.astype(np.uint64)) % np.uint64(4)

    # -- measurement ---------------------------------------------------------

    def _x_column(self, q: int) -> np.ndarray:
        w, b = divmod(q, 64)
        return (self.xs[:, w] >> np.uint64(b)) & _ONE

    def measure(self, q: int, want: int | None = None,
                rng: np.random.Generator | None = None) -> MeasureResult:
        n = self.n
        xcol = self._x_column(q)
        stab_hits = np.nonzero(xcol[n:])[0]
        if stab_hits.size:
            piv = n + int(stab_hits[0])
            bx, bz = self.xs[piv].copy(), self.zs[piv].copy()
            if want is None:
                if rng is None:
                    raise ValueError("nondeterministic measurement needs rng")
                want = int(rng.integers(0, 2))
            for i in np.nonzero(xcol)[0]:
                if int(i) != piv:
                    self._row_mult(int(i), piv)
            # old pivot becomes the destabilizer partner; new stabilizer = +-Z_q
            self.xs[piv - n] = bx
            self.zs[piv - n] = bz
            self.phase[piv - n] = self.phase[piv]
            w, b = divmod(q, 64)
            self.xs[piv] = 0
            self.zs[piv] = 0
            self.zs[piv, w] = _ONE << np.uint64(b)
            self.phase[piv] = np.uint64(2 * want)
            return MeasureResult(want, True, bx, bz)
        # deterministic: accumulate the stabilizer product dual to Z_q
        sx = np.zeros(self.nw, dtype=np.uint64)
        sz = np.zeros(self.nw, dtype=np.uint64)
        sp = 0
        for i in np.nonzero(xcol[:n])[0]:
            j = n + int(i)
            sp = (sp + int(self.phase[j])
                  + 2 * int(np.bitwise_count(sz & self.xs[j]).sum())) % 4
            sx ^= self.xs[j]
            sz ^= self.zs[j]
        if sp % 2:
            raise AssertionError("deterministic measurement with odd i-power")
        outcome = 1 if sp == 2 else 0
        if want is not None and want != outcome:
            raise ValueError("forced outcome contradicts deterministic measurement")
        return MeasureResult(outcome, False, None, None)

    def reset(self, q: int, rng: np.random.Generator | None = None) -> MeasureResult:
        r = self.measure(q, rng=rng)
        if r.outcome:
            self.apply("X", (q,))
        return r

    # -- queries -------------------------------------------------------------

    def expectation(self, p: PauliString) -> int:
        """<P> for the stabilized state: +1, -1, or 0.

        Requires a Hermitian signed Pauli (phase consistent with Y count).
        """
        if p.n != self.n:
            raise ValueError("size mismatch")
        if not p.is_hermitian():
            raise ValueError("expectation of a non-Hermitian Pauli")
        n = self.n
        px = _mask_to_words(p.x, self.nw)
        pz = _mask_to_words(p.z, self.nw)
        anti = (np.bitwise_count(self.xs & pz[None, :])
                + np.bitwise_count(self.zs & px[None, :])).sum(axis=1) & 1
        if np.any(anti[n:]):
            return 0
        # P = +- product of stabilizers flagged by anticommuting destabilizers
        sx = np.zeros(self.nw, dtype=np.uint64)
        sz = np.zeros(self.nw, dtype=np.uint64)
        sp = 0
        for i in np.nonzero(anti[:n])[0]:
            j = n + int(i)
            sp = (sp + int(self.phase[j])
                  + 2 * int(np.bitwise_count(sz & self.xs[j]).sum())) % 4
            sx ^= self.xs[j]
            sz ^= self.zs[j]
        if not (np.array_equal(sx, px) and np.array_equal(sz, pz)):
            raise AssertionError("destabilizer decomposition failed")
        d = (p.phase - sp) % 4
        if d == 0:
            return 1
        if d == 2:
            return -1
        raise AssertionError("stabilizer sign with odd i-power")

    def run(self, circ: Circuit, rng: np.random.Generator | None = None) -> list[int]:
        """Apply a circuit, skipping noise ops; returns measurement outcomes."""
        if circ.n_qubits != self.n:
            raise ValueError("register size mismatch")
        out: list[int] = []
        for g in circ.ops:
            if g.kind == "MEASURE_Z":
                out.append(self.measure(g.qubits[0], rng=rng).outcome)
            elif g.kind == "RESET":
                self.reset(g.qubits[0], rng=rng)
            elif g.is_noise():
                continue
            else:
                self.apply_gate(g)
        return out

    def check_invariants(self) -> None:
        """Debug: rows form a valid symplectic frame with Hermitian phases."""
        n = self.n
        for i in range(2 * n):
            y = int(np.bitwise_count(self.xs[i] & self.zs[i]).sum())
            if (int(self.phase[i]) - y) % 2:
                raise AssertionError(f"row {i} has non-Hermitian phase")
        for i in range(n):
            for j in range(n):
                a = int(np.bitwise_count(self.xs[i] & self.zs[n + j]).sum())
                b = int(np.bitwise_count(self.zs[i] & self.xs[n + j]).sum())
                anti = (a + b) % 2
                if anti != (1 if i == j else 0):
                    raise AssertionError("destabilizer pairing broken")
