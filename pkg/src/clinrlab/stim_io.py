"""Stim-format circuit text, reading and writing a documented subset.

Verbatim Stim instructions: H, S, S_DAG, X, Y, Z, CX, CZ, M, R, I,
X_ERROR(p), Y_ERROR(p), Z_ERROR(p), PAULI_CHANNEL_1(px,py,pz),
DEPOLARIZE1(p), DEPOLARIZE2(p), and E(p)/CORRELATED_ERROR(p) with Pauli
targets.  Extensions for the trapped-ion natives follow the same syntax:
RX(t), RZ(t), GPI(t), GPI2(t), GZ(t), ZZ(t), and FLIP_RECORD(p) with no
targets.  Angles and probabilities are printed with repr precision, so a
round trip is exact.

One instruction is written per gate.  The parser also accepts multi-target
lines and splits them in Stim order.  An I instruction pins the register
width when the highest qubit is otherwise untouched; it produces no gate.
Comments (#), blank lines, and nothing else: no REPEAT blocks, no TICK,
no detector annotations, no measurement-record targets.
"""

from __future__ import annotations

from .circuit import Circuit, Gate

__all__ = ["export_stim", "parse_stim"]

_VERBATIM_1Q = frozenset({"H", "S", "S_DAG", "X", "Y", "Z"})
_ANGLED_1Q = frozenset({"RX", "RZ", "GPI", "GPI2", "GZ"})
_ERROR_LETTER = {"X_ERROR": "X", "Y_ERROR": "Y", "Z_ERROR": "Z"}


def _fmt(x: float) -> str:
    return repr(float(x))


def export_stim(c: Circuit) -> str:
    lines: list[str] = []
    top = -1
    for g in c.ops:
        top = max(top, *g.qubits) if g.qubits else top
        q = " ".join(str(i) for i in g.qubits)
        k = g.kind
        if k in _VERBATIM_1Q:
            lines.append(f"{k} {q}")
        elif k == "CNOT":
            lines.append(f"CX {q}")
        elif k == "CZ":
            lines.append(f"CZ {q}")
        elif k == "MEASURE_Z":
            lines.append(f"M {q}")
        elif k == "RESET":
            lines.append(f"R {q}")
        elif k in _ANGLED_1Q or k == "ZZ":
            lines.append(f"{k}({_fmt(g.angle)}) {q}")
        elif k == "PAULI_ERROR":
            if len(g.qubits) == 1:
                lines.append(f"{g.pauli}_ERROR({_fmt(g.prob)}) {q}")
            else:
                targets = " ".join(f"{ltr}{i}"
                                   for ltr, i in zip(g.pauli, g.qubits))
                lines.append(f"E({_fmt(g.prob)}) {targets}")
        elif k == "FLIP_RECORD":
            lines.append(f"FLIP_RECORD({_fmt(g.prob)})")
        elif k in ("DEPOLARIZE1", "DEPOLARIZE2"):
            lines.append(f"{k}({_fmt(g.prob)}) {q}")
        elif k == "PAULI_CHANNEL_1":
            args = ",".join(_fmt(p) for p in g.probs)
            lines.append(f"PAULI_CHANNEL_1({args}) {q}")
        else:
            raise ValueError(f"no text form for gate kind {k!r}")
    if c.n_qubits > 0 and top < c.n_qubits - 1:
        lines.append(f"I {c.n_qubits - 1}")
    return "\n".join(lines) + ("\n" if lines else "")


def _err(ln: int, msg: str) -> ValueError:
    return ValueError(f"line {ln}: {msg}")


def _parse_args(ln: int, name: str, blob: str | None, want: int) -> list[float]:
    if blob is None:
        if want:
            raise _err(ln, f"{name} needs {want} parenthesized argument(s)")
        return []
    parts = [s.strip() for s in blob.split(",")]
    if len(parts) != want:
        raise _err(ln, f"{name} takes {want} argument(s), got {len(parts)}")
    try:
        return [float(s) for s in parts]
    except ValueError:
        raise _err(ln, f"{name} has a non-numeric argument") from None


def _int_targets(ln: int, name: str, toks: list[str]) -> list[int]:
    out = []
    for t in toks:
        try:
            out.append(int(t))
        except ValueError:
            raise _err(ln, f"{name} target {t!r} is not a plain qubit") from None
        if out[-1] < 0:
            raise _err(ln, f"{name} target {t!r} is negative")
    return out


def _pairs(ln: int, name: str, ts: list[int]) -> list[tuple[int, int]]:
    if len(ts) % 2:
        raise _err(ln, f"{name} needs an even number of targets")
    return [(ts[i], ts[i + 1]) for i in range(0, len(ts), 2)]


def parse_stim(text: str) -> Circuit:
    protos: list[Gate] = []
    top = -1
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *toks = line.split()
        if "(" in head:
            name, rest = head.split("(", 1)
            if not rest.endswith(")"):
                raise _err(ln, f"unbalanced parentheses in {head!r}")
            blob = rest[:-1]
        else:
            name, blob = head, None

        if name in _VERBATIM_1Q or name in ("M", "R"):
            _parse_args(ln, name, blob, 0)
            kind = {"M": "MEASURE_Z", "R": "RESET"}.get(name, name)
            for q in _int_targets(ln, name, toks):
                protos.append(Gate(kind, (q,)))
        elif name in ("CX", "CNOT", "CZ"):
            _parse_args(ln, name, blob, 0)
            kind = "CZ" if name == "CZ" else "CNOT"
            for pair in _pairs(ln, name, _int_targets(ln, name, toks)):
                protos.append(Gate(kind, pair))
        elif name == "I":
            _parse_args(ln, name, blob, 0)
            for q in _int_targets(ln, name, toks):
                top = max(top, q)
            continue
        elif name in _ANGLED_1Q:
            (angle,) = _parse_args(ln, name, blob, 1)
            for q in _int_targets(ln, name, toks):
                protos.append(Gate(name, (q,), angle=angle))
        elif name == "ZZ":
            (angle,) = _parse_args(ln, name, blob, 1)
            for pair in _pairs(ln, name, _int_targets(ln, name, toks)):
                protos.append(Gate("ZZ", pair, angle=angle))
        elif name in _ERROR_LETTER:
            (p,) = _parse_args(ln, name, blob, 1)
            for q in _int_targets(ln, name, toks):
                protos.append(Gate("PAULI_ERROR", (q,), prob=p,
                                   pauli=_ERROR_LETTER[name]))
        elif name in ("E", "CORRELATED_ERROR"):
            (p,) = _parse_args(ln, name, blob, 1)
            letters, qubits = [], []
            for t in toks:
                if len(t) < 2 or t[0] not in "XYZ":
                    raise _err(ln, f"{name} target {t!r} is not a Pauli target")
                letters.append(t[0])
                qubits.append(int(t[1:]))
            if not qubits:
                raise _err(ln, f"{name} needs at least one target")
            protos.append(Gate("PAULI_ERROR", tuple(qubits), prob=p,
                               pauli="".join(letters)))
        elif name in ("DEPOLARIZE1", "DEPOLARIZE2"):
            (p,) = _parse_args(ln, name, blob, 1)
            ts = _int_targets(ln, name, toks)
            if name == "DEPOLARIZE1":
                for q in ts:
                    protos.append(Gate("DEPOLARIZE1", (q,), prob=p))
            else:
                for pair in _pairs(ln, name, ts):
                    protos.append(Gate("DEPOLARIZE2", pair, prob=p))
        elif name == "PAULI_CHANNEL_1":
            px, py, pz = _parse_args(ln, name, blob, 3)
            for q in _int_targets(ln, name, toks):
                protos.append(Gate("PAULI_CHANNEL_1", (q,),
                                   probs=(px, py, pz)))
        elif name == "FLIP_RECORD":
            (p,) = _parse_args(ln, name, blob, 1)
            if toks:
                raise _err(ln, "FLIP_RECORD takes no targets")
            protos.append(Gate("FLIP_RECORD", (), prob=p))
        else:
            raise _err(ln, f"unsupported instruction {name!r}")

    for g in protos:
        if g.qubits:
            top = max(top, *g.qubits)
    c = Circuit(top + 1)
    for g in protos:
        c.append(g)
    return c
