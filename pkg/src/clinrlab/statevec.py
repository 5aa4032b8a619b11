"""Dense statevector oracle for small registers (n <= 12).

Exact reference semantics for every unitary gate kind, with measurements
either resolved by supplied outcome forcing or sampled from an explicit RNG.
Noise kinds are rejected except PAULI_ERROR with probability exactly 0 or 1,
which doubles as deterministic fault injection in tests.

Basis convention: amplitude index b encodes qubit q in bit q (little-endian).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit
from .pauli import PauliString

__all__ = ["BranchImpossible", "OracleRun", "run_oracle", "statevector_of",
           "gate_unitary", "apply_pauli", "expectation_pauli",
           "states_equal_up_to_phase"]

_TOL = 1e-12


class BranchImpossible(ValueError):
    """A forced measurement outcome has probability (numerically) zero."""


def _u(rows) -> np.ndarray:
    return np.array(rows, dtype=np.complex128)


_SQ2 = 1.0 / math.sqrt(2.0)
_FIXED = {
    "H": _u([[_SQ2, _SQ2], [_SQ2, -_SQ2]]),
    "S": _u([[1, 0], [0, 1j]]),
    "S_DAG": _u([[1, 0], [0, -1j]]),
    "X": _u([[0, 1], [1, 0]]),
    "Y": _u([[0, -1j], [1j, 0]]),
    "Z": _u([[1, 0], [0, -1]]),
}


def gate_unitary(kind: str, angle: float | None = None) -> np.ndarray:
    """2x2 or 4x4 unitary for a gate kind (two-qubit basis |q_first q_second>)."""
    if kind in _FIXED:
        return _FIXED[kind]
    if kind == "RX":
        c, s = math.cos(angle / 2), math.sin(angle / 2)
        return _u([[c, -1j * s], [-1j * s, c]])
    if kind in ("RZ", "GZ"):
        return _u([[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]])
    if kind == "GPI":
        return _u([[0, np.exp(-1j * angle)], [np.exp(1j * angle), 0]])
    if kind == "GPI2":
        return _SQ2 * _u([[1, -1j * np.exp(-1j * angle)],
                          [-1j * np.exp(1j * angle), 1]])
    if kind == "CNOT":
        return _u([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    if kind == "CZ":
        return np.diag(_u([1, 1, 1, -1]))
    if kind == "ZZ":
        e_m, e_p = np.exp(-1j * angle), np.exp(1j * angle)
        return np.diag(_u([e_m, e_p, e_p, e_m]))
    raise ValueError(f"no unitary for gate kind {kind!r}")


def _apply_1q(state: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    psi = state.reshape((2,) * n)
    axis = n - 1 - q
    psi = np.moveaxis(psi, axis, 0)
    out = np.tensordot(u, psi, axes=(1, 0))
    return np.moveaxis(out, 0, axis).reshape(-1)


def _apply_2q(state: np.ndarray, u: np.ndarray, qa: int, qb: int, n: int) -> np.ndarray:
    psi = state.reshape((2,) * n)
    ax_a, ax_b = n - 1 - qa, n - 1 - qb
    psi = np.moveaxis(psi, (ax_a, ax_b), (0, 1))
    shape = psi.shape
    out = (u @ psi.reshape(4, -1)).reshape(shape)
    return np.moveaxis(out, (0, 1), (ax_a, ax_b)).reshape(-1)


@dataclass
class OracleRun:
    """Result of a single oracle execution down one measurement branch."""

    n: int
    state: np.ndarray
    outcomes: list[int] = field(default_factory=list)
    branch_prob: float = 1.0


def run_oracle(circ: Circuit,
               force_outcomes=None,
               rng: np.random.Generator | None = None,
               initial: np.ndarray | None = None) -> OracleRun:
    """Execute ``circ`` exactly; measurements use forcing bits, then the RNG.

    ``force_outcomes`` is consumed left to right by MEASURE_Z ops (and by any
    RESET that must collapse a superposed qubit). A forced branch of zero
    probability raises BranchImpossible. ``branch_prob`` multiplies the
    probabilities of all forced/sampled collapse events.
    """
    n = circ.n_qubits
    if n > 12:
        raise ValueError("statevector oracle capped at 12 qubits")
    if initial is not None:
        state = np.asarray(initial, dtype=np.complex128).copy()
        if state.shape != (1 << n,):
            raise ValueError("initial state has wrong dimension")
    else:
        state = np.zeros(1 << n, dtype=np.complex128)
        state[0] = 1.0
    forcing = list(force_outcomes) if force_outcomes is not None else None
    res = OracleRun(n, state)
    idx_bits = np.arange(1 << n, dtype=np.int64)

    def collapse(q: int, want: int | None, lazy: bool = False) -> int:
        nonlocal state
        sel = (idx_bits >> q & 1).astype(bool)
        p1 = float(np.sum(np.abs(state[sel]) ** 2))
        p1 = min(max(p1, 0.0), 1.0)
        if want is None:
            # lazy callers (RESET) have no record: only consume forcing
            # when the qubit is genuinely superposed
            if lazy and p1 < _TOL:
                want = 0
            elif lazy and p1 > 1.0 - _TOL:
                want = 1
            elif forcing:
                want = forcing.pop(0)
            elif p1 < _TOL:
                want = 0
            elif p1 > 1.0 - _TOL:
                want = 1
            elif rng is not None:
                want = int(rng.random() < p1)
            else:
                raise ValueError("nondeterministic collapse needs forcing or rng")
        p = p1 if want else 1.0 - p1
        if p < _TOL:
            raise BranchImpossible(f"outcome {want} on qubit {q} has prob {p:.3g}")
        state = np.where(sel == bool(want), state, 0.0)
        state = state / math.sqrt(p)
        res.branch_prob *= p
        return want

    for g in circ.ops:
        k = g.kind
        if k == "MEASURE_Z":
            res.outcomes.append(collapse(g.qubits[0], None))
        elif k == "RESET":
            out = collapse(g.qubits[0], None, lazy=True)
            if out:
                state = _apply_1q(state, _FIXED["X"], g.qubits[0], n)
        elif k == "PAULI_ERROR":
            if g.prob not in (0.0, 1.0):
                raise ValueError("oracle accepts only deterministic faults")
            if g.prob == 1.0:
                for q, letter in zip(g.qubits, g.pauli):
                    state = _apply_1q(state, _FIXED[letter], q, n)
        elif k == "FLIP_RECORD":
            if g.prob not in (0.0, 1.0):
                raise ValueError("oracle accepts only deterministic flips")
            if g.prob == 1.0:
                res.outcomes[-1] ^= 1
        elif k in ("DEPOLARIZE1", "DEPOLARIZE2", "PAULI_CHANNEL_1"):
            raise ValueError(f"oracle is noiseless; got {k}")
        elif len(g.qubits) == 1:
            state = _apply_1q(state, gate_unitary(k, g.angle), g.qubits[0], n)
        else:
            state = _apply_2q(state, gate_unitary(k, g.angle),
                              g.qubits[0], g.qubits[1], n)
        res.state = state
    return res


def statevector_of(circ: Circuit) -> np.ndarray:
    """State prepared by a measurement-free circuit from |0...0>."""
    if circ.num_measurements() or any(g.kind == "RESET" for g in circ.ops):
        raise ValueError("statevector_of takes a measurement-free circuit")
    return run_oracle(circ).state


def apply_pauli(state: np.ndarray, p: PauliString) -> np.ndarray:
    """Apply i^phase X^x Z^z to a dense state (Z first, then X)."""
    n = p.n
    if state.shape != (1 << n,):
        raise ValueError("state dimension mismatch")
    idx = np.arange(1 << n, dtype=np.int64)
    zsign = 1.0 - 2.0 * (np.bitwise_count(idx & p.z) & 1).astype(np.float64)
    out = np.empty_like(state)
    out[idx ^ p.x] = state * zsign
    return (1j ** p.phase) * out


def expectation_pauli(state: np.ndarray, p: PauliString) -> complex:
    return complex(np.vdot(state, apply_pauli(state, p)))


def states_equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na < tol or nb < tol:
        return na < tol and nb < tol
    ov = np.vdot(a, b) / (na * nb)
    return bool(abs(abs(ov) - 1.0) < tol)
