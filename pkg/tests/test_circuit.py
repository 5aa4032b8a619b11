import json
import math

import pytest

from clinrlab.circuit import Circuit, Gate


class TestBuilding:
    def test_chaining(self):
        c = Circuit(2).h(0).cnot(0, 1).measure(0).measure(1)
        assert len(c) == 4
        assert c.num_measurements() == 2

    def test_gate_counts(self):
        c = Circuit(3).h(0).h(1).cnot(0, 1).zz(1, 2, math.pi / 4).measure(2)
        assert c.count("H") == 2
        assert c.count("CNOT") == 1
        assert c.two_qubit_count() == 2

    def test_out_of_range_qubit(self):
        c = Circuit(2)
        with pytest.raises(ValueError):
            c.h(2)

    def test_duplicate_operands(self):
        c = Circuit(2)
        with pytest.raises(ValueError):
            c.cnot(1, 1)

    def test_angle_on_rotation(self):
        c = Circuit(1).rz(0, 0.3)
        g = next(iter(c))
        assert g.kind == "RZ" and g.angle == pytest.approx(0.3)

    def test_noise_ops(self):
        c = Circuit(2).pauli_error(0.01, "XZ", 0, 1).depolarize1(0.02, 0)
        kinds = [g.kind for g in c]
        assert kinds == ["PAULI_ERROR", "DEPOLARIZE1"]
        for g in c:
            assert g.is_noise() and not g.is_unitary()

    def test_flip_record(self):
        c = Circuit(1).measure(0).flip_record(0.001)
        assert c.num_measurements() == 1
        assert c.n_records == 1

    def test_record_indices_follow_program_order(self):
        c = Circuit(3).measure(2).measure(0).measure(1)
        recs = [g.record for g in c if g.kind == "MEASURE_Z"]
        assert recs == [0, 1, 2]


class TestComposition:
    def test_extend_with_offset(self):
        a = Circuit(2).h(0).cnot(0, 1)
        b = Circuit(4).x(0)
        b.extend(a, offset=2)
        kinds = [(g.kind, g.qubits) for g in b]
        assert kinds == [("X", (0,)), ("H", (2,)), ("CNOT", (2, 3))]

    def test_embedded(self):
        a = Circuit(2).h(0).measure(1)
        wide = a.embedded(5, offset=3)
        assert wide.n_qubits == 5
        assert [(g.kind, g.qubits) for g in wide] == \
            [("H", (3,)), ("MEASURE_Z", (4,))]

    def test_copy_is_independent(self):
        a = Circuit(1).h(0)
        b = a.copy()
        b.x(0)
        assert len(a) == 1 and len(b) == 2

    def test_measured_qubits(self):
        c = Circuit(4).measure(2).measure(0)
        assert c.measured_qubits() == [2, 0]


class TestGate:
    def test_classification(self):
        assert Gate("H", (0,)).is_clifford()
        assert Gate("H", (0,)).is_unitary()
        assert not Gate("RZ", (0,), angle=0.2).is_clifford()
        assert Gate("ZZ", (0, 1), angle=math.pi / 4).is_clifford()
        assert not Gate("ZZ", (0, 1), angle=0.2).is_clifford()
        assert Gate("PAULI_ERROR", (0,), prob=0.1, pauli="X").is_noise()

    def test_remapped(self):
        g = Gate("CNOT", (0, 1)).remapped({0: 3, 1: 1})
        assert g.qubits == (3, 1)

    def test_validate_range(self):
        with pytest.raises(ValueError):
            Gate("H", (5,)).validate(2)

    def test_validate_shapes(self):
        with pytest.raises(ValueError):
            Gate("CNOT", (0,)).validate(2)
        with pytest.raises(ValueError):
            Gate("RZ", (0,)).validate(1)
        with pytest.raises(ValueError):
            Gate("PAULI_ERROR", (0, 1), prob=0.1, pauli="X").validate(2)
        with pytest.raises(ValueError):
            Gate("PAULI_ERROR", (0,), prob=1.5, pauli="X").validate(1)


class TestSerialization:
    def test_json_roundtrip(self):
        c = Circuit(3).h(0).zz(0, 1, math.pi / 4).rz(2, 1.25)
        c.pauli_error(0.01, "Z", 1).measure(0).measure(1).measure(2)
        d = c.to_json_dict()
        json.dumps(d)  # must be plain types
        back = Circuit.from_json_dict(d)
        assert back.to_json_dict() == d
        assert len(back) == len(c)
        assert back.num_measurements() == 3
