"""Rewrite abstract circuits onto the trapped-ion native gate set.

Native kinds are GPI, GPI2, ZZ and the virtual GZ; measurement, reset and
noise channels pass through unchanged.  Every rule preserves the unitary up
to global phase.
"""

from __future__ import annotations

import math

from .circuit import Circuit, Gate, NOISE_KINDS

NATIVE_UNITARIES = frozenset({"GPI", "GPI2", "GZ", "ZZ"})
PASSTHROUGH = frozenset({"MEASURE_Z", "RESET"}) | NOISE_KINDS

_HALF_PI = math.pi / 2


def _norm(theta: float) -> float:
    """Map an angle to (-pi, pi]."""
    t = math.remainder(theta, 2.0 * math.pi)
    if t == -math.pi:
        t = math.pi
    return t


def _is_zero(theta: float, tol: float = 1e-12) -> bool:
    return abs(_norm(theta)) < tol


def _near(a: float, b: float, tol: float = 1e-12) -> bool:
    return abs(_norm(a - b)) < tol


def _expand(g: Gate) -> list[Gate] | None:
    """One rewrite step; None means the gate is already in target form."""
    k = g.kind
    if k in PASSTHROUGH:
        return None
    if k in NATIVE_UNITARIES:
        # GZ and ZZ are phase rotations, so zero angle means identity; GPI
        # and GPI2 are always quarter or half turns regardless of angle
        if k in ("GZ", "ZZ") and _is_zero(g.angle):
            return []
        return None

    q = g.qubits[0]
    c = Circuit(max(g.qubits) + 1)
    if k == "X":
        c.gpi(q, 0.0)
    elif k == "Y":
        c.gpi(q, _HALF_PI)
    elif k == "Z":
        c.gz(q, math.pi)
    elif k == "S":
        c.gz(q, _HALF_PI)
    elif k == "S_DAG":
        c.gz(q, -_HALF_PI)
    elif k == "H":
        # H = RY(pi/2) . Z
        c.gz(q, math.pi)
        c.gpi2(q, _HALF_PI)
    elif k == "RZ":
        if not _is_zero(g.angle):
            c.gz(q, _norm(g.angle))
    elif k == "RX":
        t = _norm(g.angle)
        if _is_zero(t):
            pass
        elif _near(t, _HALF_PI):
            c.gpi2(q, 0.0)
        elif _near(t, -_HALF_PI):
            c.gpi2(q, math.pi)
        elif _near(t, math.pi):
            c.gpi(q, 0.0)
        else:
            # RX(t) = RY(pi/2) RZ(t) RY(-pi/2), written in circuit order
            c.gpi2(q, -_HALF_PI)
            c.gz(q, t)
            c.gpi2(q, _HALF_PI)
    elif k == "CZ":
        a, b = g.qubits
        c.zz(a, b, math.pi / 4)
        c.gz(a, -_HALF_PI)
        c.gz(b, -_HALF_PI)
    elif k == "CNOT":
        ctl, tgt = g.qubits
        c.ops.append(Gate("H", (tgt,)))
        c.ops.append(Gate("CZ", (ctl, tgt)))
        c.ops.append(Gate("H", (tgt,)))
    else:
        raise ValueError(f"no native lowering for gate kind {k!r}")
    return list(c.ops)


def lower_to_native(circ: Circuit) -> Circuit:
    """Return an equivalent circuit using only native and passthrough kinds."""
    out = Circuit(circ.n_qubits)
    stack = list(reversed(circ.ops))
    while stack:
        g = stack.pop()
        exp = _expand(g)
        if exp is None:
            out.ops.append(g)
        else:
            stack.extend(reversed(exp))
    return out
