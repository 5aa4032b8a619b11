"""CNOT-ladder synthesis for Pauli-exponential rotations.

``pauli_exp_ladder`` realizes U = exp(i * theta/2 * P) for a hermitian Pauli
P.  The overall sign convention is pinned by the encoded-run check: applying
the ladder for the six-qubit block operator at theta = pi/2 to the prepared
occupation state must leave the two occupation sectors with relative phase +i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit
from .pauli import PauliString, conjugate_gate


@dataclass(frozen=True)
class PauliRotation:
    pauli: PauliString
    theta: float

    def __post_init__(self) -> None:
        if self.pauli.weight() == 0:
            raise ValueError("rotation about the identity is a global phase")
        if not self.pauli.is_hermitian():
            raise ValueError("rotation axis must be hermitian")

    def is_clifford(self) -> bool:
        return abs(math.remainder(self.theta, math.pi / 2)) < 1e-12


def pauli_exp_ladder(r: PauliRotation) -> Circuit:
    """Basis changes, an ascending CNOT chain, one RZ, and the mirror undo."""
    p = r.pauli
    theta = r.theta
    if p.sign() == -1:
        p = p.negated()
        theta = -theta

    support = p.support()
    last = support[-1]

    c = Circuit(p.n)
    conj_kinds: list[tuple[str, tuple[int, ...]]] = []
    half = math.pi / 2
    for q in support:
        letter = p.letter(q)
        if letter == "X":
            c.h(q)
            conj_kinds.append(("H", (q,)))
        elif letter == "Y":
            c.rx(q, half)
            conj_kinds.append(("SQRT_X", (q,)))
    for a, b in zip(support, support[1:]):
        c.cnot(a, b)
        conj_kinds.append(("CNOT", (a, b)))

    # the Clifford section V maps P to a Z on the chain end; its sign fixes
    # the central angle so that the whole circuit is exp(i*theta/2*P)
    q_img = p
    for kind, qs in conj_kinds:
        q_img = conjugate_gate(q_img, kind, qs)
    assert q_img.x == 0 and q_img.z == 1 << last, "ladder must map P to Z(last)"
    s = q_img.sign()
    c.rz(last, -s * theta)

    for a, b in reversed(list(zip(support, support[1:]))):
        c.cnot(a, b)
    for q in reversed(support):
        letter = p.letter(q)
        if letter == "X":
            c.h(q)
        elif letter == "Y":
            c.rx(q, -half)
    return c


def physical_trotter_circuit() -> Circuit:
    """Occupation-state prep, one block rotation at pi/2, measure everything."""
    from .gse import GSE_BLOCK, prep_circuit

    c = prep_circuit()
    c.extend(pauli_exp_ladder(PauliRotation(GSE_BLOCK, math.pi / 2)))
    for q in range(6):
        c.measure(q)
    return c
