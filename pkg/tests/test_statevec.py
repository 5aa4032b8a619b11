import math

import numpy as np
import pytest

from clinrlab.circuit import Circuit
from clinrlab.pauli import PauliString
from clinrlab.statevec import (BranchImpossible, apply_pauli,
                               expectation_pauli, gate_unitary, run_oracle,
                               statevector_of, states_equal_up_to_phase)


def test_h_s_amplitudes():
    state = statevector_of(Circuit(1).h(0).s(0))
    assert state[0] == pytest.approx(1 / math.sqrt(2))
    assert state[1] == pytest.approx(1j / math.sqrt(2))


def test_gate_unitaries_are_unitary():
    for kind in ("H", "S", "S_DAG", "X", "Y", "Z", "CNOT", "CZ"):
        u = gate_unitary(kind)
        assert np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=1e-12)
    for kind, angle in (("RX", 0.37), ("RZ", -1.1), ("ZZ", math.pi / 4),
                        ("GPI", 0.2), ("GPI2", 0.9), ("GZ", 2.2)):
        u = gate_unitary(kind, angle)
        assert np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=1e-12)


def test_statevector_rejects_measurement():
    with pytest.raises(ValueError):
        statevector_of(Circuit(1).measure(0))


def test_forced_outcomes_and_branch_prob():
    c = Circuit(1).h(0).measure(0)
    run = run_oracle(c, force_outcomes=[1])
    assert run.outcomes == [1]
    assert run.branch_prob == pytest.approx(0.5)
    assert abs(run.state[1]) == pytest.approx(1.0)


def test_impossible_branch_raises():
    c = Circuit(1).measure(0)  # |0> never reads 1
    with pytest.raises(BranchImpossible):
        run_oracle(c, force_outcomes=[1])


def test_sampled_outcomes_use_rng():
    c = Circuit(1).h(0).measure(0)
    outs = [run_oracle(c, rng=np.random.default_rng(s)).outcomes[0]
            for s in range(30)]
    assert 0 in outs and 1 in outs


def test_reset_collapses_superposition():
    c = Circuit(1).h(0).reset(0).measure(0)
    run = run_oracle(c, rng=np.random.default_rng(0))
    assert run.outcomes == [0]


def test_apply_pauli_action():
    state = np.array([1.0, 0.0], dtype=complex)
    assert np.allclose(apply_pauli(state, PauliString.from_label("X")),
                       [0.0, 1.0])
    plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
    flipped = apply_pauli(plus, PauliString.from_label("Z"))
    assert np.allclose(flipped, [1 / math.sqrt(2), -1 / math.sqrt(2)])


def test_expectation_pauli():
    bell = statevector_of(Circuit(2).h(0).cnot(0, 1))
    assert expectation_pauli(bell, PauliString.from_label("XX")) == pytest.approx(1.0)
    assert expectation_pauli(bell, PauliString.from_label("ZZ")) == pytest.approx(1.0)
    assert expectation_pauli(bell, PauliString.from_label("ZI")) == pytest.approx(0.0)


def test_phase_equality_helper():
    v = statevector_of(Circuit(1).h(0))
    assert states_equal_up_to_phase(v, np.exp(0.3j) * v)
    assert not states_equal_up_to_phase(v, np.array([1.0, 0.0], dtype=complex))


def test_width_guard():
    with pytest.raises(ValueError):
        run_oracle(Circuit(13))
