import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clinrlab.pauli import (CliffordMap, NotCliffordError, PauliString,
                            canonical_generators, decompose_into_group,
                            same_stabilizer_group)


def P(label):
    return PauliString.from_label(label)


paulis = st.integers(1, 16).flatmap(
    lambda n: st.builds(PauliString, st.just(n),
                        st.integers(0, (1 << n) - 1),
                        st.integers(0, (1 << n) - 1),
                        st.integers(0, 3)))


def pauli_pairs(k):
    return st.integers(1, 16).flatmap(lambda n: st.tuples(*[
        st.builds(PauliString, st.just(n),
                  st.integers(0, (1 << n) - 1),
                  st.integers(0, (1 << n) - 1),
                  st.integers(0, 3)) for _ in range(k)]))


class TestConstruction:
    def test_single_letters(self):
        assert PauliString.single(3, 1, "X").label() == "+IXI"
        assert PauliString.single(3, 2, "Y").label() == "+IIY"

    def test_dense_label_roundtrip(self):
        for text in ("+XYZI", "-XYIIZ", "+IIII", "+iZZ", "-iYX"):
            assert P(text).label() == text
            assert PauliString.from_label(P(text).label()) == P(text)

    def test_dense_sign_prefixes(self):
        assert P("-XX").sign() == -1
        assert P("+iZ").sign() == 1j
        assert P("-iZ").sign() == -1j

    def test_sparse_form(self):
        p = PauliString.from_label("Z6 X7 Z10")
        assert p.n == 11
        assert p.letter(6) == "Z" and p.letter(7) == "X" and p.letter(10) == "Z"

    def test_sparse_with_width(self):
        p = PauliString.from_label("X0 Z2", n=5)
        assert p.n == 5 and p.weight() == 2

    def test_sparse_sign(self):
        assert PauliString.from_label("-Z0 Z1").sign() == -1

    def test_bad_label_rejected(self):
        with pytest.raises(ValueError):
            P("XQZ")
        with pytest.raises(ValueError):
            PauliString.from_label("Z6 K7")

    def test_embedded(self):
        p = P("XZ").embedded(5, offset=2)
        assert p.label() == "+IIXZI"


class TestAlgebra:
    def test_x_times_z_is_minus_i_y(self):
        r = P("X") * P("Z")
        assert r.x == 1 and r.z == 1 and r.sign() == -1j

    def test_y_squared_identity(self):
        r = P("Y") * P("Y")
        assert r.is_identity() and r.phase == 0

    def test_code_stabilizer_product(self):
        prod = P("XYIIII") * P("YXXYII") * P("IIYXXY") * P("IIIIYX")
        assert prod.label() == "+ZZZZZZ"
        assert prod.sign() == 1

    def test_commutes(self):
        assert not P("X").commutes(P("Z"))
        assert P("YZYYZY").commutes(P("ZZZZZZ"))
        assert P("XYIIII").commutes(P("ZZIIII"))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            P("XX") * P("X")
        with pytest.raises(ValueError):
            P("XX").commutes(P("X"))

    @settings(max_examples=200)
    @given(pauli_pairs(2))
    def test_inverse_cancels(self, pq):
        p, _ = pq
        r = p * p.inverse()
        assert r.is_identity() and r.phase == 0

    @settings(max_examples=200)
    @given(pauli_pairs(3))
    def test_associativity(self, pqr):
        p, q, r = pqr
        assert (p * q) * r == p * (q * r)

    @settings(max_examples=200)
    @given(pauli_pairs(2))
    def test_commutation_phase(self, pq):
        p, q = pq
        ahead = p * q
        behind = q * p
        if p.commutes(q):
            assert ahead == behind
        else:
            assert ahead == behind.negated()


class TestCliffordMap:
    def test_h_conjugation(self):
        h = CliffordMap.from_gates(1, [("H", (0,), None)])
        assert h.conjugate(P("X")).label() == "+Z"
        assert h.conjugate(P("Z")).label() == "+X"

    def test_s_conjugation(self):
        s = CliffordMap.from_gates(1, [("S", (0,), None)])
        r = s.conjugate(P("X"))
        assert r.label() == "+Y"

    def test_cnot_propagation(self):
        cx = CliffordMap.from_gates(2, [("CNOT", (0, 1), None)])
        assert cx.conjugate(P("XI")).label() == "+XX"
        assert cx.conjugate(P("IZ")).label() == "+ZZ"

    def test_non_clifford_angle_rejected(self):
        with pytest.raises(NotCliffordError):
            CliffordMap.from_gates(1, [("RZ", (0,), 0.3)])

    def test_inverse_undoes(self):
        rng = np.random.default_rng(7)
        gates = []
        kinds = ["H", "S", "CNOT", "S_DAG", "CZ"]
        for _ in range(30):
            k = kinds[rng.integers(len(kinds))]
            if k in ("CNOT", "CZ"):
                a, b = rng.choice(4, size=2, replace=False)
                gates.append((k, (int(a), int(b)), None))
            else:
                gates.append((k, (int(rng.integers(4)),), None))
        c = CliffordMap.from_gates(4, gates)
        p = PauliString(4, int(rng.integers(16)), int(rng.integers(16)), 0)
        assert c.conjugate(c.conjugate(p), inverse=True) == p

    def test_conjugate_distributes_over_product(self):
        c = CliffordMap.from_gates(
            3, [("H", (0,), None), ("CNOT", (0, 1), None),
                ("S", (2,), None), ("CZ", (1, 2), None)])
        rng = np.random.default_rng(3)
        for _ in range(40):
            p = PauliString(3, int(rng.integers(8)), int(rng.integers(8)),
                            int(rng.integers(4)))
            q = PauliString(3, int(rng.integers(8)), int(rng.integers(8)),
                            int(rng.integers(4)))
            assert c.conjugate(p * q) == c.conjugate(p) * c.conjugate(q)


class TestGroupTools:
    def test_canonical_generators_order_free(self):
        gens = [P("XX"), P("ZZ")]
        assert canonical_generators(gens) == canonical_generators(gens[::-1])

    def test_same_group_spotted(self):
        a = [P("XX"), P("ZZ")]
        b = [P("XX"), P("-YY")]  # XX * ZZ = -YY
        assert same_stabilizer_group(a, b)
        assert not same_stabilizer_group(a, [P("XI"), P("IZ")])

    def test_decompose_roundtrip(self):
        gens = [P("XYIIII"), P("YXXYII"), P("IIYXXY"), P("IIIIYX")]
        target = gens[0] * gens[2]
        mask = decompose_into_group(target, gens)
        assert mask == 0b101
        assert decompose_into_group(P("ZIIIII"), gens) is None
