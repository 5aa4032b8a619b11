"""Flat circuit IR: an ordered op list over an n-qubit register.

Gate kinds
----------
Unitaries: H, S, S_DAG, X, Y, Z, CNOT, CZ, RX(theta), RZ(theta), and the
trapped-ion natives GPI(phi), GPI2(phi), GZ(theta) (virtual Z, no pulse),
ZZ(theta) = exp(-i theta Z(x)Z).
Non-unitary: MEASURE_Z, RESET.
Noise: PAULI_ERROR(p, pauli) applies the Pauli atomically with probability p;
FLIP_RECORD(p) flips the most recent measurement record; DEPOLARIZE1(p) /
DEPOLARIZE2(p) are uniform depolarizing channels; PAULI_CHANNEL_1(px,py,pz)
is the general single-qubit Pauli channel.

Measurement records are indexed by the order of MEASURE_Z ops in the circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["Gate", "Circuit", "UNITARY_1Q", "UNITARY_2Q", "VIRTUAL_KINDS",
           "NOISE_KINDS", "ANGLED_KINDS"]

UNITARY_1Q = frozenset({"H", "S", "S_DAG", "X", "Y", "Z", "RX", "RZ",
                        "GPI", "GPI2", "GZ"})
UNITARY_2Q = frozenset({"CNOT", "CZ", "ZZ"})
VIRTUAL_KINDS = frozenset({"GZ"})
NOISE_KINDS = frozenset({"PAULI_ERROR", "FLIP_RECORD", "DEPOLARIZE1",
                         "DEPOLARIZE2", "PAULI_CHANNEL_1"})
ANGLED_KINDS = frozenset({"RX", "RZ", "GPI", "GPI2", "GZ", "ZZ"})
_ALL_KINDS = (UNITARY_1Q | UNITARY_2Q | NOISE_KINDS
              | {"MEASURE_Z", "RESET"})


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...] = ()
    angle: float | None = None
    prob: float | None = None
    probs: tuple[float, ...] | None = None
    pauli: str | None = None
    record: int | None = None  # classical bit index, stamped on MEASURE_Z

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if self.probs is not None:
            object.__setattr__(self, "probs", tuple(self.probs))

    def is_clifford(self) -> bool:
        """True unless an angled unitary sits off the Clifford grid."""
        if self.kind not in ANGLED_KINDS:
            return True
        step = math.pi / 4 if self.kind == "ZZ" else math.pi / 2
        return abs(math.remainder(self.angle, step)) < 1e-12

    def is_unitary(self) -> bool:
        return self.kind in UNITARY_1Q or self.kind in UNITARY_2Q

    def is_virtual(self) -> bool:
        return self.kind in VIRTUAL_KINDS

    def is_noise(self) -> bool:
        return self.kind in NOISE_KINDS

    def validate(self, n_qubits: int) -> None:
        k = self.kind
        if k not in _ALL_KINDS:
            raise ValueError(f"unknown gate kind {k!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{k} repeats a qubit: {self.qubits}")
        for q in self.qubits:
            if not 0 <= q < n_qubits:
                raise ValueError(f"{k} qubit {q} outside register of {n_qubits}")
        if k in ANGLED_KINDS and self.angle is None:
            raise ValueError(f"{k} requires an angle")
        if k in UNITARY_2Q and len(self.qubits) != 2:
            raise ValueError(f"{k} takes two qubits")
        if k in UNITARY_1Q or k in ("MEASURE_Z", "RESET"):
            if len(self.qubits) != 1:
                raise ValueError(f"{k} takes one qubit")
        if k in ("PAULI_ERROR", "FLIP_RECORD", "DEPOLARIZE1", "DEPOLARIZE2"):
            if self.prob is None or not 0.0 <= self.prob <= 1.0:
                raise ValueError(f"{k} needs a probability in [0, 1]")
        if k == "PAULI_ERROR":
            if not self.pauli or len(self.pauli) != len(self.qubits):
                raise ValueError("PAULI_ERROR pauli letters must match qubits")
            if any(ch not in "XYZ" for ch in self.pauli):
                raise ValueError(f"bad PAULI_ERROR letters {self.pauli!r}")
        if k == "FLIP_RECORD" and self.qubits:
            raise ValueError("FLIP_RECORD addresses a record, not qubits")
        if k == "DEPOLARIZE1" and len(self.qubits) != 1:
            raise ValueError("DEPOLARIZE1 takes one qubit")
        if k == "DEPOLARIZE2" and len(self.qubits) != 2:
            raise ValueError("DEPOLARIZE2 takes two qubits")
        if k == "PAULI_CHANNEL_1":
            if len(self.qubits) != 1 or self.probs is None or len(self.probs) != 3:
                raise ValueError("PAULI_CHANNEL_1 takes one qubit and (px,py,pz)")
            if any(p < 0 for p in self.probs) or sum(self.probs) > 1.0 + 1e-12:
                raise ValueError("PAULI_CHANNEL_1 probabilities invalid")

    def remapped(self, perm: dict[int, int]) -> "Gate":
        return Gate(self.kind, tuple(perm[q] for q in self.qubits),
                    self.angle, self.prob, self.probs, self.pauli, self.record)


@dataclass
class Circuit:
    """Ordered gate list over ``n_qubits``; records indexed in program order."""

    n_qubits: int
    ops: list[Gate] = field(default_factory=list)
    clifford_flag: bool = False

    # -- builders ----------------------------------------------------------

    def append(self, gate: Gate) -> "Circuit":
        gate.validate(self.n_qubits)
        if gate.kind == "MEASURE_Z":
            rec = self.num_measurements()
            if gate.record != rec:
                gate = Gate(gate.kind, gate.qubits, record=rec)
        if self.clifford_flag and not gate.is_clifford():
            raise ValueError(f"non-Clifford gate {gate.kind} under clifford flag")
        self.ops.append(gate)
        return self

    def _add(self, kind: str, *qubits: int, **kw) -> "Circuit":
        return self.append(Gate(kind, tuple(qubits), **kw))

    def h(self, q: int) -> "Circuit":
        return self._add("H", q)

    def s(self, q: int) -> "Circuit":
        return self._add("S", q)

    def s_dag(self, q: int) -> "Circuit":
        return self._add("S_DAG", q)

    def x(self, q: int) -> "Circuit":
        return self._add("X", q)

    def y(self, q: int) -> "Circuit":
        return self._add("Y", q)

    def z(self, q: int) -> "Circuit":
        return self._add("Z", q)

    def rx(self, q: int, angle: float) -> "Circuit":
        return self._add("RX", q, angle=angle)

    def rz(self, q: int, angle: float) -> "Circuit":
        return self._add("RZ", q, angle=angle)

    def gpi(self, q: int, angle: float) -> "Circuit":
        return self._add("GPI", q, angle=angle)

    def gpi2(self, q: int, angle: float) -> "Circuit":
        return self._add("GPI2", q, angle=angle)

    def gz(self, q: int, angle: float) -> "Circuit":
        return self._add("GZ", q, angle=angle)

    def cnot(self, c: int, t: int) -> "Circuit":
        return self._add("CNOT", c, t)

    def cz(self, a: int, b: int) -> "Circuit":
        return self._add("CZ", a, b)

    def zz(self, a: int, b: int, angle: float) -> "Circuit":
        return self._add("ZZ", a, b, angle=angle)

    def measure(self, q: int) -> "Circuit":
        return self._add("MEASURE_Z", q)

    def reset(self, q: int) -> "Circuit":
        return self._add("RESET", q)

    def pauli_error(self, prob: float, pauli: str, *qubits: int) -> "Circuit":
        return self._add("PAULI_ERROR", *qubits, prob=prob, pauli=pauli)

    def flip_record(self, prob: float) -> "Circuit":
        return self._add("FLIP_RECORD", prob=prob)

    def depolarize1(self, prob: float, q: int) -> "Circuit":
        return self._add("DEPOLARIZE1", q, prob=prob)

    def depolarize2(self, prob: float, a: int, b: int) -> "Circuit":
        return self._add("DEPOLARIZE2", a, b, prob=prob)

    def pauli_channel_1(self, q: int, px: float, py: float, pz: float) -> "Circuit":
        return self._add("PAULI_CHANNEL_1", q, probs=(px, py, pz))

    # -- composition -------------------------------------------------------

    def extend(self, other: "Circuit", offset: int = 0) -> "Circuit":
        """Append another circuit's ops, shifting its qubits by ``offset``."""
        if offset + other.n_qubits > self.n_qubits:
            raise ValueError("extension does not fit the register")
        perm = {q: q + offset for q in range(other.n_qubits)}
        for g in other.ops:
            self.append(g.remapped(perm))
        return self

    def embedded(self, n_qubits: int, offset: int = 0) -> "Circuit":
        out = Circuit(n_qubits)
        out.extend(self, offset)
        return out

    def copy(self) -> "Circuit":
        return Circuit(self.n_qubits, list(self.ops), self.clifford_flag)

    # -- queries -----------------------------------------------------------

    def __iter__(self):
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def validate(self) -> None:
        rec = 0
        for g in self.ops:
            g.validate(self.n_qubits)
            if self.clifford_flag and not g.is_clifford():
                raise ValueError(f"non-Clifford gate {g.kind} under clifford flag")
            if g.kind == "MEASURE_Z":
                if g.record != rec:
                    raise ValueError("measurement record indices out of order")
                rec += 1

    def num_measurements(self) -> int:
        return sum(1 for g in self.ops if g.kind == "MEASURE_Z")

    @property
    def n_records(self) -> int:
        return self.num_measurements()

    def measured_qubits(self) -> list[int]:
        return [g.qubits[0] for g in self.ops if g.kind == "MEASURE_Z"]

    def gate_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for g in self.ops:
            out[g.kind] = out.get(g.kind, 0) + 1
        return out

    def count(self, kind: str) -> int:
        return sum(1 for g in self.ops if g.kind == kind)

    def two_qubit_count(self) -> int:
        return sum(1 for g in self.ops if g.kind in UNITARY_2Q)

    def native_gate_count(self) -> int:
        """Physical pulses after lowering: GPI + GPI2 + ZZ (GZ is virtual)."""
        return sum(1 for g in self.ops
                   if g.kind in ("GPI", "GPI2", "ZZ"))

    def metadata(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "n_ops": len(self.ops),
            "n_measurements": self.num_measurements(),
            "gate_counts": dict(sorted(self.gate_counts().items())),
            "two_qubit_count": self.two_qubit_count(),
        }

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        ops = []
        for g in self.ops:
            d: dict = {"kind": g.kind, "qubits": list(g.qubits)}
            if g.angle is not None:
                d["angle"] = g.angle
            if g.prob is not None:
                d["prob"] = g.prob
            if g.probs is not None:
                d["probs"] = list(g.probs)
            if g.pauli is not None:
                d["pauli"] = g.pauli
            ops.append(d)
        out = {"n_qubits": self.n_qubits, "ops": ops}
        if self.clifford_flag:
            out["clifford"] = True
        return out

    @staticmethod
    def from_json_dict(data: dict) -> "Circuit":
        c = Circuit(int(data["n_qubits"]), clifford_flag=bool(data.get("clifford", False)))
        for d in data["ops"]:
            c.append(Gate(d["kind"], tuple(d.get("qubits", ())),
                          d.get("angle"), d.get("prob"),
                          tuple(d["probs"]) if "probs" in d else None,
                          d.get("pauli")))
        return c
