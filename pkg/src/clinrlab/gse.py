"""Six-qubit encoding of three fermionic modes.

Code stabilizers, occupation operators, the encoded hopping block, state
preparation for occupation (1,1,0), and shot decoding.  Occupation bits come
out of Z-basis measurements as pairwise XORs; odd total parity flags a
detected error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit
from .pauli import PauliString

GSE_STABILIZERS = tuple(
    PauliString.from_label(s)
    for s in ("XYIIII", "YXXYII", "IIYXXY", "IIIIYX")
)
GSE_OCCUPATIONS = tuple(
    PauliString.from_label(s) for s in ("ZZIIII", "IIZZII", "IIIIZZ")
)
GSE_BLOCK = PauliString.from_label("YZYYZY")

# occupation prepared by prep_circuit
PREP_OCCUPATION = (1, 1, 0)


@dataclass(frozen=True)
class DecodedShot:
    occupation: tuple[int, int, int]
    sector_parity: int
    bits: tuple[int, ...]


def prep_generators() -> list[PauliString]:
    """Signed stabilizer generators of the prepared state.

    The four code stabilizers carry +1; each occupation operator carries
    (-1)^(n_i).  The third occupation sign is implied by the code constraint
    +Z^6, so six generators suffice.
    """
    gens = list(GSE_STABILIZERS)
    for occ_op, n_i in zip(GSE_OCCUPATIONS[:2], PREP_OCCUPATION[:2]):
        gens.append(occ_op.negated() if n_i else occ_op)
    return gens


def prep_circuit() -> Circuit:
    """Synthesize the occupation-(1,1,0) state by graph-form extraction."""
    from .graphstate import extract_graph

    return extract_graph(prep_generators()).emit()


def decode(bits) -> DecodedShot:
    bits = tuple(int(b) for b in bits)
    if len(bits) != 6 or any(b not in (0, 1) for b in bits):
        raise ValueError("decode expects 6 measurement bits")
    occ = tuple(bits[2 * i] ^ bits[2 * i + 1] for i in range(3))
    return DecodedShot(occ, occ[0] ^ occ[1] ^ occ[2], bits)


def ideal_distribution() -> dict[tuple[int, int, int], float]:
    """Occupation sectors of the state after one block rotation at pi/2."""
    return {(1, 1, 0): 0.5, (0, 1, 1): 0.5}


def encoded_block_circuit(theta: float = math.pi / 2) -> Circuit:
    from .trotter import PauliRotation, pauli_exp_ladder

    return pauli_exp_ladder(PauliRotation(GSE_BLOCK, theta))
