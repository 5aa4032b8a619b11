"""Pauli strings over GF(2) symplectic pairs and Clifford conjugation maps.

A Pauli operator on n qubits is stored as ``i**phase * prod_q X_q**x_q * Z_q**z_q``
with ``x``/``z`` kept as integer bitmasks (bit q = qubit q) and ``phase`` a power
of i mod 4. ``Y`` is represented as ``i * X * Z`` (x=1, z=1, phase=+1). Under
this convention the product rule needs a single cross-term popcount and the
two-qubit gate conjugations need no sign table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PauliString",
    "CliffordMap",
    "NotCliffordError",
    "conjugate_gate",
    "decompose_into_group",
]

_LETTER_XZP = {"I": (0, 0, 0), "X": (1, 0, 0), "Y": (1, 1, 1), "Z": (0, 1, 0)}
_XZ_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_SIGN_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_SIGN = {"+": 0, "": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}


class NotCliffordError(ValueError):
    """Raised when a rotation angle is not a multiple of pi/2 (pi/4 for ZZ)."""


@dataclass(frozen=True)
class PauliString:
    """Immutable signed Pauli string.

    Fields
    ------
    n : number of qubits
    x, z : X/Z component bitmasks, bit q = qubit q
    phase : power of i mod 4; the operator is i**phase * X^x Z^z
    """

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("component bits outside register")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "PauliString":
        return PauliString(n)

    @staticmethod
    def single(n: int, qubit: int, letter: str) -> "PauliString":
        xb, zb, p = _LETTER_XZP[letter.upper()]
        return PauliString(n, xb << qubit, zb << qubit, p)

    @staticmethod
    def from_label(text: str, n: int | None = None) -> "PauliString":
        """Parse dense ("-XYIIZ") or sparse ("Z6 X7 Z10") text forms.

        Dense form: optional sign prefix (+, -, +i, -i) then one letter per
        qubit, leftmost letter = qubit 0. Sparse form: whitespace-separated
        letter+index tokens; unlisted qubits are identity; ``n`` defaults to
        max index + 1.
        """
        text = text.strip()
        if not text:
            raise ValueError("empty Pauli label")
        sign = 0
        for pref in ("-i", "+i", "-", "+", "i"):
            if text.startswith(pref):
                sign = _PREFIX_SIGN[pref]
                text = text[len(pref):].strip()
                break
        if not text:
            raise ValueError("sign with no letters")
        if any(ch.isdigit() for ch in text):
            return PauliString._from_sparse(text, n, sign)
        letters = text.upper()
        if n is not None and n != len(letters):
            raise ValueError(f"label length {len(letters)} != n {n}")
        x = z = 0
        phase = sign
        for q, ch in enumerate(letters):
            if ch not in _LETTER_XZP:
                raise ValueError(f"bad Pauli letter {ch!r}")
            xb, zb, p = _LETTER_XZP[ch]
            x |= xb << q
            z |= zb << q
            phase += p
        return PauliString(len(letters), x, z, phase)

    @staticmethod
    def _from_sparse(text: str, n: int | None, sign: int) -> "PauliString":
        x = z = 0
        phase = sign
        top = -1
        for tok in text.split():
            letter, idx = tok[0].upper(), tok[1:]
            if letter not in "XYZ" or not idx.isdigit():
                raise ValueError(f"bad sparse token {tok!r}")
            q = int(idx)
            if (x | z) >> q & 1:
                raise ValueError(f"qubit {q} listed twice")
            xb, zb, p = _LETTER_XZP[letter]
            x |= xb << q
            z |= zb << q
            phase += p
            top = max(top, q)
        if n is None:
            n = top + 1
        if top >= n:
            raise ValueError(f"qubit {top} outside register of {n}")
        return PauliString(n, x, z, phase)

    # -- queries -----------------------------------------------------------

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def support(self) -> tuple[int, ...]:
        m = self.x | self.z
        return tuple(q for q in range(self.n) if m >> q & 1)

    def letter(self, q: int) -> str:
        return _XZ_LETTER[(self.x >> q & 1, self.z >> q & 1)]

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def is_hermitian(self) -> bool:
        # i^p X^x Z^z is Hermitian iff p and the Y-count have equal parity.
        return (self.phase - (self.x & self.z).bit_count()) % 2 == 0

    def sign(self) -> complex:
        """Overall coefficient relative to the letterwise I/X/Y/Z string."""
        k = (self.phase - (self.x & self.z).bit_count()) % 4
        return (1, 1j, -1, -1j)[k]

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise ValueError("size mismatch")
        a = (self.x & other.z).bit_count()
        b = (self.z & other.x).bit_count()
        return (a + b) % 2 == 0

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("size mismatch")
        phase = self.phase + other.phase + 2 * (self.z & other.x).bit_count()
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, phase)

    def inverse(self) -> "PauliString":
        # P * P = i^(2p + 2*popcount(z&x)) * I, so invert the phase residue.
        sq = (2 * self.phase + 2 * (self.z & self.x).bit_count()) % 4
        return PauliString(self.n, self.x, self.z, self.phase - sq)

    def negated(self) -> "PauliString":
        return PauliString(self.n, self.x, self.z, self.phase + 2)

    def embedded(self, n: int, offset: int = 0) -> "PauliString":
        """Same operator placed at ``offset`` inside a larger register."""
        if offset < 0 or offset + self.n > n:
            raise ValueError("embedding outside register")
        return PauliString(n, self.x << offset, self.z << offset, self.phase)

    # -- formatting --------------------------------------------------------

    def label(self) -> str:
        pref = _SIGN_PREFIX[(self.phase - (self.x & self.z).bit_count()) % 4]
        body = "".join(self.letter(q) for q in range(self.n))
        return pref + body

    def sparse_label(self) -> str:
        pref = _SIGN_PREFIX[(self.phase - (self.x & self.z).bit_count()) % 4]
        toks = [f"{self.letter(q)}{q}" for q in self.support()]
        body = " ".join(toks) if toks else "I"
        return (pref + " " if pref != "+" else "") + body

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"PauliString({self.label()!r})"


def _angle_step(theta: float, step: float) -> int | None:
    """theta / step rounded to int if theta is an exact-ish multiple, else None."""
    k = theta / step
    kr = round(k)
    if abs(k - kr) > 1e-9:
        return None
    return kr % int(round(2 * math.pi / step))


def conjugate_gate(p: PauliString, kind: str, qubits: tuple[int, ...],
                   angle: float | None = None) -> PauliString:
    """Image of ``p`` under conjugation by one gate: U p U^dagger.

    ``kind`` uses the circuit-ir gate names. Rotation gates must be Clifford
    (angle a multiple of pi/2; ZZ a multiple of pi/4) or NotCliffordError is
    raised. Measurement/reset/noise kinds are rejected.
    """
    x, z, ph, n = p.x, p.z, p.phase, p.n

    def bit(mask: int, q: int) -> int:
        return mask >> q & 1

    if kind in ("RZ", "GZ"):
        k = _angle_step(angle, math.pi / 2)
        if k is None:
            raise NotCliffordError(f"{kind}({angle}) is not Clifford")
        kind = ("I", "S", "Z", "S_DAG")[k]
    elif kind == "RX":
        k = _angle_step(angle, math.pi / 2)
        if k is None:
            raise NotCliffordError(f"RX({angle}) is not Clifford")
        kind = ("I", "SQRT_X", "X", "SQRT_X_DAG")[k]
    elif kind == "GPI":
        k = _angle_step(angle, math.pi / 2)
        if k is None:
            raise NotCliffordError(f"GPI({angle}) is not Clifford")
        kind = ("X", "Y", "X", "Y")[k]
    elif kind == "GPI2":
        k = _angle_step(angle, math.pi / 2)
        if k is None:
            raise NotCliffordError(f"GPI2({angle}) is not Clifford")
        kind = ("SQRT_X", "SQRT_Y", "SQRT_X_DAG", "SQRT_Y_DAG")[k]

    if kind == "I":
        return p

    if kind == "ZZ":
        if _angle_step(angle, math.pi / 4) is None:
            raise NotCliffordError(f"ZZ({angle}) is not Clifford")
        # exp(-i theta ZZ) == CNOT . RZ(2 theta) on target . CNOT
        a, b = qubits
        q = conjugate_gate(p, "CNOT", (a, b))
        q = conjugate_gate(q, "RZ", (b,), angle=2 * angle)
        return conjugate_gate(q, "CNOT", (a, b))

    if kind in ("H", "S", "S_DAG", "X", "Y", "Z",
                "SQRT_X", "SQRT_X_DAG", "SQRT_Y", "SQRT_Y_DAG"):
        (q,) = qubits
        xq, zq = bit(x, q), bit(z, q)
        if kind == "H":
            ph += 2 * (xq & zq)
            x ^= (xq ^ zq) << q
            z ^= (xq ^ zq) << q
        elif kind == "S":
            ph += xq
            z ^= xq << q
        elif kind == "S_DAG":
            ph += 3 * xq
            z ^= xq << q
        elif kind == "X":
            ph += 2 * zq
        elif kind == "Y":
            ph += 2 * (xq ^ zq)
        elif kind == "Z":
            ph += 2 * xq
        elif kind == "SQRT_X":
            ph += 3 * zq
            x ^= zq << q
        elif kind == "SQRT_X_DAG":
            ph += zq
            x ^= zq << q
        elif kind == "SQRT_Y":
            ph += 2 * xq + 2 * (xq & zq)
            x ^= (xq ^ zq) << q
            z ^= (xq ^ zq) << q
        elif kind == "SQRT_Y_DAG":
            ph += 2 * zq + 2 * (xq & zq)
            x ^= (xq ^ zq) << q
            z ^= (xq ^ zq) << q
        return PauliString(n, x, z, ph)

    if kind == "CNOT":
        c, t = qubits
        x ^= bit(x, c) << t
        z ^= bit(z, t) << c
        return PauliString(n, x, z, ph)

    if kind == "CZ":
        a, b = qubits
        ph += 2 * (bit(x, a) & bit(x, b))
        z ^= bit(x, b) << a
        z ^= bit(x, a) << b
        return PauliString(n, x, z, ph)

    raise ValueError(f"cannot conjugate by gate kind {kind!r}")


@dataclass(frozen=True)
class CliffordMap:
    """Clifford unitary represented by the images of the X_q and Z_q generators.

    images[q] = U X_q U^dagger for q < n, images[n + q] = U Z_q U^dagger.
    """

    n: int
    images: tuple[PauliString, ...]

    @staticmethod
    def identity(n: int) -> "CliffordMap":
        imgs = [PauliString.single(n, q, "X") for q in range(n)]
        imgs += [PauliString.single(n, q, "Z") for q in range(n)]
        return CliffordMap(n, tuple(imgs))

    @staticmethod
    def from_gates(n: int, gates) -> "CliffordMap":
        """Build from an iterable of (kind, qubits, angle) triples."""
        imgs = list(CliffordMap.identity(n).images)
        for kind, qubits, angle in gates:
            for i, im in enumerate(imgs):
                imgs[i] = conjugate_gate(im, kind, tuple(qubits), angle)
        return CliffordMap(n, tuple(imgs))

    def x_image(self, q: int) -> PauliString:
        return self.images[q]

    def z_image(self, q: int) -> PauliString:
        return self.images[self.n + q]

    def conjugate(self, p: PauliString, inverse: bool = False) -> "PauliString":
        """U p U^dagger, or U^dagger p U when ``inverse`` is set."""
        m = self.inverse() if inverse else self
        if p.n != m.n:
            raise ValueError("size mismatch")
        out = PauliString(m.n, 0, 0, p.phase)
        for q in range(m.n):
            if p.x >> q & 1:
                out = out * m.images[q]
            if p.z >> q & 1:
                out = out * m.images[m.n + q]
        return out

    def then(self, later: "CliffordMap") -> "CliffordMap":
        """Map representing ``later`` applied after ``self``."""
        if later.n != self.n:
            raise ValueError("size mismatch")
        return CliffordMap(self.n,
                           tuple(later.conjugate(im) for im in self.images))

    def inverse(self) -> "CliffordMap":
        """Inverse map via GF(2) symplectic inversion plus phase repair."""
        n = self.n
        rows = [im.x | im.z << n for im in self.images]
        inv = _gf2_invert(rows, 2 * n)
        basis = list(CliffordMap.identity(n).images)
        out = []
        for k in range(2 * n):
            w = inv[k]
            q0 = PauliString.identity(n)
            for j in range(2 * n):
                if w >> j & 1:
                    q0 = q0 * basis[j]
            fwd = self.conjugate(q0)
            # fwd == i^m * basis[k]; the preimage of basis[k] is i^-m * q0
            if (fwd.x, fwd.z) != (basis[k].x, basis[k].z):
                raise AssertionError("symplectic inversion failed")
            m = (fwd.phase - basis[k].phase) % 4
            out.append(PauliString(n, q0.x, q0.z, q0.phase - m))
        return CliffordMap(n, tuple(out))


def _gf2_invert(rows: list[int], width: int) -> list[int]:
    """Invert a GF(2) matrix given as row bitmasks; returns inverse rows.

    Row i of the result gives the coefficients w with sum_j w_j rows[j] = e_i.
    """
    m = list(rows)
    aug = [1 << i for i in range(width)]  # tracks combinations of input rows
    for col in range(width):
        piv = next((r for r in range(col, width) if m[r] >> col & 1), None)
        if piv is None:
            raise ValueError("matrix is singular over GF(2)")
        m[col], m[piv] = m[piv], m[col]
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(width):
            if r != col and m[r] >> col & 1:
                m[r] ^= m[col]
                aug[r] ^= aug[col]
    # m is now a permutation-free identity; aug rows are ordered by pivot col.
    return aug


def canonical_generators(gens: list[PauliString]) -> tuple[PauliString, ...]:
    """Canonical signed generating set of the group spanned by ``gens``.

    Gaussian elimination over the (x|z) symplectic vectors with exact phase
    tracking; pivot = lowest set bit. Two generating sets span the same signed
    group iff their canonical forms are identical, which makes this the
    equality test for stabilizer states.
    """
    def vec(p: PauliString) -> int:
        return p.x | p.z << p.n

    reduced: list[PauliString] = []  # kept sorted by pivot (lowest set bit)
    for g in gens:
        cur = g
        # one ascending-pivot pass suffices: multiplying by a row only touches
        # bits at or above that row's pivot
        for r in reduced:
            rv = vec(r)
            if vec(cur) & (rv & -rv):
                cur = cur * r
        v = vec(cur)
        if v:
            reduced.append(cur)
            reduced.sort(key=lambda p: vec(p) & -vec(p))
    for i in range(len(reduced) - 1, -1, -1):
        piv = vec(reduced[i])
        piv &= -piv
        for j in range(i):
            if vec(reduced[j]) & piv:
                reduced[j] = reduced[j] * reduced[i]
    return tuple(reduced)


def same_stabilizer_group(a: list[PauliString], b: list[PauliString]) -> bool:
    return canonical_generators(a) == canonical_generators(b)


def decompose_into_group(target: PauliString, gens: list[PauliString]):
    """Express ``target`` over a generating set, ignoring phases.

    Returns a coefficient bitmask c with XOR_j c_j * gens[j] matching the
    (x, z) components of ``target``, or None when target is outside the span.
    The caller recovers the sign by multiplying out the generators.
    """
    n = target.n
    rows = [(g.x | g.z << n, 1 << j) for j, g in enumerate(gens)]
    vec = target.x | target.z << n
    coeff = 0
    reduced: list[tuple[int, int]] = []
    for row, tag in rows:
        r, t = row, tag
        for rr, tt in reduced:
            if r & (rr & -rr):
                r ^= rr
                t ^= tt
        if r:
            reduced.append((r, t))
    # echelonize target against the reduced basis
    for rr, tt in reduced:
        if vec & (rr & -rr):
            vec ^= rr
            coeff ^= tt
    return coeff if vec == 0 else None
