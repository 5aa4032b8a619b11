import math

import pytest

from clinrlab.circuit import Circuit
from clinrlab.stim_io import export_stim, parse_stim


def test_export_basic():
    assert export_stim(Circuit(1).h(0).measure(0)) == "H 0\nM 0\n"


def test_roundtrip_preserves_ops():
    c = (Circuit(3).h(0).cnot(0, 1).zz(1, 2, math.pi / 4)
         .pauli_error(0.01, "XZ", 0, 2).depolarize1(0.002, 1)
         .measure(0).measure(2).flip_record(0.001).reset(1))
    back = parse_stim(export_stim(c))
    assert back.n_qubits == c.n_qubits
    assert [g.kind for g in back] == [g.kind for g in c]
    assert [g.qubits for g in back] == [g.qubits for g in c]
    assert back.num_measurements() == 2


def test_roundtrip_angles_and_probs():
    c = Circuit(2).rz(0, 1.2345).rx(1, -0.5).depolarize2(0.01, 0, 1)
    back = parse_stim(export_stim(c))
    for orig, rt in zip(c, back):
        assert rt.kind == orig.kind
        if orig.angle is not None:
            assert rt.angle == pytest.approx(orig.angle, abs=1e-9)
        if orig.prob is not None:
            assert rt.prob == pytest.approx(orig.prob, abs=1e-12)


def test_unsupported_instruction_is_named():
    with pytest.raises(ValueError, match="MPP"):
        parse_stim("MPP X0*Z1\n")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        parse_stim("H 0\nH zzz\n")


def test_comments_and_blank_lines_skipped():
    c = parse_stim("# preamble\n\nH 0\n  # indented comment\nM 0\n")
    assert [g.kind for g in c] == ["H", "MEASURE_Z"]


def test_width_is_inferred():
    c = parse_stim("CX 0 5\n")
    assert c.n_qubits == 6
