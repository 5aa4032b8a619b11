"""Greedy layer scheduling with trapped-ion layer durations.

Gates are packed into homogeneous layers: single-qubit pulses (130 us),
two-qubit ZZ/CNOT/CZ pulses (950 us), and measurement/reset events (400 us).
Layers execute serially; a gate joins the open tail layer when the kinds
match and its qubits are free there, otherwise it opens a new layer.  Only
the tail is ever extended, so flattening a schedule reproduces the original
op order exactly (and hence the original record indices).

Virtual GZ gates and noise instructions take no time and occupy nothing;
they ride along in whatever layer is open when they appear.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .circuit import Circuit, Gate, NOISE_KINDS, UNITARY_1Q, UNITARY_2Q

__all__ = ["Layer", "LayeredCircuit", "schedule_layers", "LAYER_DURATIONS"]

LAYER_DURATIONS = {"single": 130e-6, "two": 950e-6, "measure": 400e-6}


def _gate_class(g: Gate) -> str:
    if g.kind == "GZ" or g.kind in NOISE_KINDS:
        return "virtual"
    if g.kind in ("MEASURE_Z", "RESET"):
        return "measure"
    if g.kind in UNITARY_2Q:
        return "two"
    if g.kind in UNITARY_1Q:
        return "single"
    raise ValueError(f"unschedulable gate kind {g.kind!r}")


@dataclass
class Layer:
    kind: str
    gates: list[Gate] = field(default_factory=list)
    occupied: set[int] = field(default_factory=set)
    # qubits whose MEASURE_Z in this layer has not been followed by a RESET
    _fusable: set[int] = field(default_factory=set)

    @property
    def duration(self) -> float:
        return LAYER_DURATIONS[self.kind]


@dataclass
class LayeredCircuit:
    n_qubits: int
    layers: list[Layer] = field(default_factory=list)
    # virtual ops seen before the first layer opened
    preamble: list[Gate] = field(default_factory=list)

    @property
    def idle_sets(self) -> list[set[int]]:
        all_q = set(range(self.n_qubits))
        return [all_q - layer.occupied for layer in self.layers]

    @property
    def total_duration(self) -> float:
        return sum(layer.duration for layer in self.layers)

    def to_circuit(self) -> Circuit:
        c = Circuit(self.n_qubits)
        for g in self.preamble:
            c.append(g)
        for layer in self.layers:
            for g in layer.gates:
                c.append(g)
        return c


def schedule_layers(c: Circuit) -> LayeredCircuit:
    """Pack ``c`` into serial homogeneous layers, earliest-tail greedy."""
    lc = LayeredCircuit(c.n_qubits)
    layers = lc.layers
    for g in c.ops:
        cls = _gate_class(g)
        if cls == "virtual":
            if layers:
                layers[-1].gates.append(g)
            else:
                lc.preamble.append(g)
            continue
        tail = layers[-1] if layers else None
        if (g.kind == "RESET" and tail is not None and tail.kind == "measure"
                and g.qubits[0] in tail._fusable):
            # measure-and-reset is one 400 us readout event
            tail.gates.append(g)
            tail._fusable.discard(g.qubits[0])
            continue
        if tail is None or tail.kind != cls or tail.occupied & set(g.qubits):
            tail = Layer(cls)
            layers.append(tail)
        tail.gates.append(g)
        tail.occupied.update(g.qubits)
        if g.kind == "MEASURE_Z":
            tail._fusable.add(g.qubits[0])
    return lc
