"""Clifford noise reduction via Bell+Clifford resource teleportation.

A Clifford C is executed by preparing n Bell pairs, applying C to the
second half, optionally measuring verification stabilizers of that
resource state with Shor-style cat gadgets, then Bell-measuring the data
register against the first half.  The second half holds C|psi> up to a
Pauli frame Q fixed by the 2n Bell outcome bits; Q is applied here as
classical bit flips on the final readout.  Shots failing any verification
parity are rejected.

Register layout: data 0..n-1, resource first half n..2n-1, second half
2n..3n-1, cat ancillas from 3n up.  Mid-circuit-measurement (MCM) gadgets
share one ancilla pool and reset it after each check; end-circuit (ECM)
gadgets hold dedicated ancillas until the final measurement layer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate
from .pauli import CliffordMap, PauliString, canonical_generators, decompose_into_group
from .tableau import Tableau

__all__ = ["ResourceSpec", "PlanCheck", "VerificationPlan", "ClinrShot",
           "ClinrLayout", "ClinrCircuit", "ClinrResult", "CHECK_PAIRS",
           "bell_clifford_resource", "shor_gadget", "clinr_circuit",
           "feedforward_frame", "interpret_batch", "to_shots", "postselect"]

# Verification stabilizer pairs for the six-qubit encoded-block resource,
# written in the data 0..5 / resource 6..17 layout.  Each entry names two
# group members measured together; either member also works alone.
CHECK_PAIRS = {
    "S1": ("X6 Y8 Z12 Z13 Y15 Z16 Y17", "Z6 X9 Z12 X15"),
    "S2": ("Y10 Z11 Y16 Z17", "Z6 Z8 Z10 Z12 Z14 Z16"),
    "S3": ("Y10 Z11 Y16 Z17", "Z6 Z7 Z11 Z12 Z13 Z17"),
    "S4": ("Z8 Y10 Z14 Y16", "Y6 X8 Y9 Z13 Z14 Z16 Y17"),
    "S5": ("Y6 Y8 Y9 Y10 Z13 X16 Y17", "X6 Y9 Z12 Z13 Y14 Z16 Y17"),
    "S6": ("Z6 X7 Z10 Z12 X13 Z16", "Z6 Z8 Y11 Z12 Z14 Y17"),
}


@dataclass(frozen=True)
class ResourceSpec:
    """n Bell pairs with C on the second half, as a 2n-qubit tableau."""

    n: int
    c_map: CliffordMap
    c_circuit: Circuit | None
    prep: Circuit
    tableau: Tableau

    def generators(self) -> list[PauliString]:
        """The defining pairs X_i (x) C X_i C^dag and Z_i (x) C Z_i C^dag."""
        n2 = 2 * self.n
        out = []
        for i in range(self.n):
            for base, img in (("X", self.c_map.x_image(i)),
                              ("Z", self.c_map.z_image(i))):
                out.append(PauliString.single(n2, i, base)
                           * img.embedded(n2, self.n))
        return out

    def nonidentity_count(self) -> int:
        return (1 << (2 * self.n)) - 1

    def candidate_pair_count(self) -> int:
        m = self.nonidentity_count()
        return m * (m - 1) // 2


def _circuit_to_map(c: Circuit) -> CliffordMap:
    gates = []
    for g in c.ops:
        if not g.is_unitary():
            raise ValueError(f"resource Clifford cannot contain {g.kind}")
        gates.append((g.kind, g.qubits, g.angle))
    return CliffordMap.from_gates(c.n_qubits, gates)


def bell_clifford_resource(c: Circuit | CliffordMap,
                           n: int | None = None) -> ResourceSpec:
    if isinstance(c, Circuit):
        c_circuit: Circuit | None = c
        c_map = _circuit_to_map(c)
    else:
        c_circuit, c_map = None, c
    if n is None:
        n = c_map.n
    if c_map.n != n:
        raise ValueError("Clifford width disagrees with n")

    if c_circuit is not None:
        prep = Circuit(2 * n)
        for i in range(n):
            prep.h(i).cnot(i, n + i)
        prep.extend(c_circuit, offset=n)
    else:
        # no circuit for C given: synthesize the state from its generators
        from .graphstate import extract_graph

        probe = ResourceSpec(n, c_map, None, Circuit(2 * n), Tableau(2 * n))
        prep = extract_graph(probe.generators()).emit()
    t = Tableau(2 * n)
    t.run(prep)
    spec = ResourceSpec(n, c_map, c_circuit, prep, t)
    want = canonical_generators(spec.generators())
    got = canonical_generators(t.stabilizers())
    if want != got:
        raise AssertionError("resource tableau disagrees with generators")
    return spec


@dataclass(frozen=True)
class PlanCheck:
    """One verification stabilizer: letters, true group sign, schedule."""

    pauli: PauliString  # over the 2n resource qubits, letterwise (sign +1)
    expect_odd: bool  # group member carries -1: accept on odd cat parity
    schedule: str  # "MCM" | "ECM"
    text: str
    label: str = ""

    def weight(self) -> int:
        return self.pauli.weight()


def _strip_sign(p: PauliString) -> PauliString:
    return PauliString(p.n, p.x, p.z, (p.x & p.z).bit_count() % 4)


@dataclass(frozen=True)
class VerificationPlan:
    checks: tuple[PlanCheck, ...]

    @staticmethod
    def from_texts(spec: ResourceSpec, items, labels=None) -> "VerificationPlan":
        """Resolve sparse Pauli texts (full-circuit indices) against the group.

        Each item is (text, schedule).  The text's letters must multiply out
        to a resource stabilizer up to sign; the group's own sign for those
        letters is stored and the gadget accepts the matching parity.
        """
        n = spec.n
        gens = spec.tableau.stabilizers()
        checks = []
        for idx, (text, schedule) in enumerate(items):
            if schedule not in ("MCM", "ECM"):
                raise ValueError(f"schedule must be MCM or ECM, got {schedule!r}")
            p_full = PauliString.from_label(text, n=3 * n)
            if not p_full.is_hermitian():
                raise ValueError(f"check {text!r} is not hermitian")
            if p_full.x & ((1 << n) - 1) or p_full.z & ((1 << n) - 1):
                raise ValueError(f"check {text!r} touches data qubits")
            p = PauliString(2 * n, p_full.x >> n, p_full.z >> n, p_full.phase)
            coeff = decompose_into_group(p, gens)
            if coeff is None:
                raise ValueError(f"check {text!r} is not a resource stabilizer")
            member = PauliString(2 * n, 0, 0, 0)
            for j in range(2 * n):
                if coeff >> j & 1:
                    member = member * gens[j]
            sign = member.sign()
            if p.sign() == -1 and sign != -1:
                raise ValueError(f"check {text!r} sign disagrees with the group")
            label = labels[idx] if labels else ""
            checks.append(PlanCheck(_strip_sign(p), sign == -1,
                                    schedule, text, label))
        return VerificationPlan(tuple(checks))

    @staticmethod
    def from_pair(spec: ResourceSpec, name: str,
                  schedule: str = "MCM") -> "VerificationPlan":
        a, b = CHECK_PAIRS[name]
        return VerificationPlan.from_texts(
            spec, [(a, schedule), (b, schedule)],
            labels=[f"{name}a", f"{name}b"])

    @staticmethod
    def empty() -> "VerificationPlan":
        return VerificationPlan(())

    def to_json_dict(self) -> dict:
        return {"checks": [
            {"stabilizer": c.text, "schedule": c.schedule,
             "label": c.label, "expect_odd": c.expect_odd,
             "weight": c.weight()} for c in self.checks]}


@dataclass(frozen=True)
class ClinrShot:
    verification: tuple[int, ...]
    o: tuple[int, ...]
    data: tuple[int, ...]
    accepted: bool


@dataclass(frozen=True)
class ClinrLayout:
    """Record indices for each readout group of an assembled circuit."""

    n: int
    check_records: tuple[tuple[int, ...], ...]
    cat_records: tuple[int | None, ...]
    data_records: tuple[int, ...]
    r1_records: tuple[int, ...]
    r2_records: tuple[int, ...]


@dataclass(frozen=True)
class ClinrCircuit:
    circuit: Circuit
    layout: ClinrLayout
    spec: ResourceSpec
    plan: VerificationPlan


def shor_gadget(s: PauliString, ancillas, width: int, schedule: str,
                cat_ancilla: int | None = None) -> tuple[Circuit, list[Gate]]:
    """Cat-state parity extraction of ``s``; returns (body, deferred reads).

    The body prepares a |0..0>+|1..1> cat on the ancillas, applies one
    controlled Pauli letter per support qubit (ancilla controls), and
    rotates ancillas into the X basis.  MCM bodies measure and reset
    immediately; ECM returns the measurements for the caller to append at
    the end.  ``cat_ancilla`` adds a two-point cat parity probe, measured
    on the same schedule.
    """
    support = s.support()
    if not support:
        raise ValueError("cannot verify the identity")
    ancillas = tuple(ancillas)
    if len(ancillas) != len(support):
        raise ValueError("need one ancilla per support qubit")
    body = Circuit(width)
    deferred: list[Gate] = []

    a0 = ancillas[0]
    body.h(a0)
    for a in ancillas[1:]:
        body.cnot(a0, a)
    if cat_ancilla is not None and len(ancillas) >= 2:
        body.cnot(ancillas[0], cat_ancilla)
        body.cnot(ancillas[-1], cat_ancilla)
        if schedule == "MCM":
            body.measure(cat_ancilla).reset(cat_ancilla)
        else:
            deferred.append(Gate("MEASURE_Z", (cat_ancilla,)))
    for a, q in zip(ancillas, support):
        letter = s.letter(q)
        if letter == "X":
            body.cnot(a, q)
        elif letter == "Z":
            body.cz(a, q)
        else:
            body.s_dag(q).cnot(a, q).s(q)
    for a in ancillas:
        body.h(a)
    if schedule == "MCM":
        for a in ancillas:
            body.measure(a).reset(a)
    else:
        deferred.extend(Gate("MEASURE_Z", (a,)) for a in ancillas)
    return body, deferred


def clinr_circuit(data_prep: Circuit, spec: ResourceSpec,
                  plan: VerificationPlan,
                  resource_prep: Circuit | None = None,
                  verify_cat: bool = False) -> ClinrCircuit:
    n = spec.n
    if data_prep.n_qubits != n:
        raise ValueError(f"data prep is {data_prep.n_qubits} wide, need {n}")
    prep = spec.prep if resource_prep is None else resource_prep
    if prep.n_qubits != 2 * n:
        raise ValueError("resource prep must cover 2n qubits")
    if resource_prep is not None:
        t = Tableau(2 * n)
        t.run(resource_prep)
        if canonical_generators(t.stabilizers()) != \
           canonical_generators(spec.tableau.stabilizers()):
            raise ValueError("resource prep does not prepare the resource state")

    extra = 1 if verify_cat else 0
    mcm_w = [c.weight() for c in plan.checks if c.schedule == "MCM"]
    ecm_w = [c.weight() for c in plan.checks if c.schedule == "ECM"]
    pool = (max(mcm_w) + extra) if mcm_w else 0
    width = 3 * n + pool + sum(w + extra for w in ecm_w)

    c = Circuit(width)
    c.extend(data_prep)
    c.extend(prep, offset=n)

    check_records: list[tuple[int, ...]] = []
    cat_records: list[int | None] = []
    deferred: list[tuple[int, list[Gate]]] = []  # (check index, gates)
    ecm_base = 3 * n + pool
    for ci, check in enumerate(plan.checks):
        w = check.weight()
        if check.schedule == "MCM":
            anc = tuple(range(3 * n, 3 * n + w))
            cat = 3 * n + pool - 1 if verify_cat else None
        else:
            anc = tuple(range(ecm_base, ecm_base + w))
            cat = ecm_base + w if verify_cat else None
            ecm_base += w + extra
        body, defer = shor_gadget(check.pauli.embedded(width, n), anc,
                                  width, check.schedule, cat)
        rec0 = c.num_measurements()
        c.extend(body)
        recs = list(range(rec0, c.num_measurements()))
        if check.schedule == "MCM":
            cat_records.append(recs.pop(0) if cat is not None else None)
            check_records.append(tuple(recs))
        else:
            check_records.append(())  # patched after deferred reads land
            cat_records.append(None)
            deferred.append((ci, defer))

    for i in range(n):
        c.cnot(i, n + i)
    for i in range(n):
        c.h(i)
    data_records = tuple(range(c.num_measurements(),
                               c.num_measurements() + n))
    for i in range(n):
        c.measure(i)
    r1_records = tuple(range(c.num_measurements(), c.num_measurements() + n))
    for i in range(n):
        c.measure(n + i)
    r2_records = tuple(range(c.num_measurements(), c.num_measurements() + n))
    for i in range(n):
        c.measure(2 * n + i)

    for ci, gates in deferred:
        rec0 = c.num_measurements()
        for g in gates:
            c.append(g)
        recs = list(range(rec0, c.num_measurements()))
        if verify_cat and plan.checks[ci].weight() >= 2:
            cat_records[ci] = recs.pop(0)
        check_records[ci] = tuple(recs)

    layout = ClinrLayout(n, tuple(check_records), tuple(cat_records),
                         data_records, r1_records, r2_records)
    return ClinrCircuit(c, layout, spec, plan)


def feedforward_frame(o, c_map: CliffordMap) -> PauliString:
    """Pauli frame from the 2n Bell outcome bits.

    The first n bits are the data readouts (X-basis side) and drive the
    images of Z under C; the last n are the resource-first-half readouts
    and drive the images of X.  The frame's X/Y support marks which output
    bits to flip; its phase is discarded.
    """
    n = c_map.n
    if len(o) != 2 * n:
        raise ValueError(f"need 2n = {2 * n} outcome bits")
    q = PauliString(n, 0, 0, 0)
    for i in range(n):
        if o[i]:
            q = q * c_map.z_image(i)
        if o[n + i]:
            q = q * c_map.x_image(i)
    return q


def _frame_matrix(c_map: CliffordMap) -> np.ndarray:
    """Rows: X-support bits of each outcome bit's frame contribution."""
    n = c_map.n
    rows = []
    for i in range(n):
        rows.append([c_map.z_image(i).x >> j & 1 for j in range(n)])
    for i in range(n):
        rows.append([c_map.x_image(i).x >> j & 1 for j in range(n)])
    return np.array(rows, dtype=np.uint8)


@dataclass(frozen=True)
class ClinrResult:
    shots: int
    accepted: int
    counts: dict[str, int]  # corrected data bitstrings, accepted shots only
    per_check_rejections: tuple[int, ...]

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.shots if self.shots else 0.0

    @property
    def empty(self) -> bool:
        return self.accepted == 0

    def to_json_dict(self) -> dict:
        return {"shots": self.shots, "accepted": self.accepted,
                "acceptance_rate": self.acceptance_rate,
                "counts": dict(sorted(self.counts.items())),
                "per_check_rejections": list(self.per_check_rejections)}


def _parities_and_frames(cc: ClinrCircuit, records: np.ndarray):
    lay = cc.layout
    shots = records.shape[0]
    fails = np.zeros((len(cc.plan.checks), shots), dtype=bool)
    for i, (check, recs) in enumerate(zip(cc.plan.checks, lay.check_records)):
        par = np.zeros(shots, dtype=np.uint8)
        for r in recs:
            par ^= records[:, r]
        fails[i] = par != np.uint8(check.expect_odd)
        if lay.cat_records[i] is not None:
            fails[i] |= records[:, lay.cat_records[i]] != 0
    o_cols = list(lay.data_records) + list(lay.r1_records)
    o = records[:, o_cols]
    flips = (o @ _frame_matrix(cc.spec.c_map)) % 2
    corrected = records[:, list(lay.r2_records)] ^ flips.astype(np.uint8)
    return fails, o, corrected


def interpret_batch(cc: ClinrCircuit, records: np.ndarray) -> ClinrResult:
    """Postselect and frame-correct a full record array (shots x records)."""
    records = np.asarray(records, dtype=np.uint8)
    fails, _, corrected = _parities_and_frames(cc, records)
    accept = ~fails.any(axis=0)
    kept = corrected[accept]
    counts: dict[str, int] = {}
    if kept.size:
        uniq, cnt = np.unique(kept, axis=0, return_counts=True)
        for row, k in zip(uniq, cnt):
            counts["".join(map(str, row))] = int(k)
    return ClinrResult(records.shape[0], int(accept.sum()), counts,
                       tuple(int(f.sum()) for f in fails))


def to_shots(cc: ClinrCircuit, records: np.ndarray) -> list[ClinrShot]:
    records = np.asarray(records, dtype=np.uint8)
    fails, o, corrected = _parities_and_frames(cc, records)
    accept = ~fails.any(axis=0)
    lay = cc.layout
    out = []
    for s in range(records.shape[0]):
        ver = tuple(int(np.bitwise_xor.reduce(records[s, list(recs)]))
                    for recs in lay.check_records)
        out.append(ClinrShot(ver, tuple(int(b) for b in o[s]),
                             tuple(int(b) for b in corrected[s]),
                             bool(accept[s])))
    return out


def postselect(shots) -> tuple[dict[str, int], float]:
    """Accepted-shot counts keyed by corrected data bits, and the rate."""
    counts: dict[str, int] = {}
    total = 0
    kept = 0
    for sh in shots:
        total += 1
        if sh.accepted:
            kept += 1
            key = "".join(map(str, sh.data))
            counts[key] = counts.get(key, 0) + 1
    return counts, (kept / total if total else 0.0)
