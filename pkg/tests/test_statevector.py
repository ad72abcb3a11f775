"""Statevector simulator vs an explicit dense-matrix oracle.

The oracle builds every gate as a full 2^q x 2^q matrix from the printed
rotation-matrix definitions (independent of GateOp.matrix and of the kernels)
and applies it by plain matrix-vector multiplication.
"""
import numpy as np
import pytest

from fastqconv.errors import SizeError
from fastqconv.statevector import (Circuit, GateOp, Observable, apply_gate,
                                   expectation_all, expectation_z, init_state)

RNG = np.random.default_rng(20240811)

KINDS = ["RX", "RY", "RZ", "U3", "CNOT", "CRX", "CRY", "CRZ"]


def oracle_2x2(kind, angles):
    if kind in ("RX", "CRX"):
        a = angles[0]
        return np.array([[np.cos(a / 2), -1j * np.sin(a / 2)],
                         [-1j * np.sin(a / 2), np.cos(a / 2)]])
    if kind in ("RY", "CRY"):
        b = angles[0]
        return np.array([[np.cos(b / 2), -np.sin(b / 2)],
                         [np.sin(b / 2), np.cos(b / 2)]], dtype=complex)
    if kind in ("RZ", "CRZ"):
        d = angles[0]
        return np.array([[np.exp(-1j * d / 2), 0], [0, np.exp(1j * d / 2)]])
    if kind == "U3":
        th, ph, lam = angles
        return np.array([[np.cos(th / 2), -np.exp(1j * lam) * np.sin(th / 2)],
                         [np.exp(1j * ph) * np.sin(th / 2),
                          np.exp(1j * (ph + lam)) * np.cos(th / 2)]])
    return np.array([[0, 1], [1, 0]], dtype=complex)  # CNOT block


def oracle_full_matrix(op, num_qubits):
    """Embed op into the full register; qubit j is bit j of the basis index."""
    dim = 1 << num_qubits
    u = oracle_2x2(op.kind, op.angles)
    m = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        tbit = (col >> op.target) & 1
        if op.control is not None and not (col >> op.control) & 1:
            m[col, col] = 1.0
            continue
        for new_tbit in (0, 1):
            row = (col & ~(1 << op.target)) | (new_tbit << op.target)
            m[row, col] = u[new_tbit, tbit]
    return m


def random_gate(num_qubits, rng):
    kind = KINDS[rng.integers(len(KINDS))]
    target = int(rng.integers(num_qubits))
    control = None
    if kind in ("CNOT", "CRX", "CRY", "CRZ"):
        if num_qubits == 1:
            kind = "RY"
        else:
            control = int(rng.integers(num_qubits - 1))
            if control >= target:
                control += 1
    n_angles = {"U3": 3, "CNOT": 0}.get(kind, 1)
    return GateOp(kind, target, control, tuple(rng.uniform(0, 2 * np.pi, n_angles)))


def test_init_state_basis_zero():
    assert np.array_equal(init_state(1).amplitudes, [1, 0])
    assert np.array_equal(init_state(2).amplitudes, [1, 0, 0, 0])


def test_init_state_size_guard():
    with pytest.raises(SizeError):
        init_state(21)
    with pytest.raises(SizeError):
        init_state(0)


def test_ry_half_pi():
    s = apply_gate(init_state(1), GateOp("RY", 0, angles=(np.pi / 2,)))
    np.testing.assert_allclose(s.amplitudes, [np.cos(np.pi / 4), np.sin(np.pi / 4)],
                               atol=1e-12)


def test_cnot_truth_table():
    s = init_state(2)
    s = apply_gate(s, GateOp("RX", 0, angles=(np.pi,)))  # qubit0 -> 1 (up to phase)
    s = apply_gate(s, GateOp("CNOT", 1, control=0))
    np.testing.assert_allclose(np.abs(s.amplitudes) ** 2, [0, 0, 0, 1], atol=1e-12)


def test_rz_phase_only():
    s = apply_gate(init_state(1), GateOp("RZ", 0, angles=(0.7,)))
    np.testing.assert_allclose(s.amplitudes[0], np.exp(-0.35j), atol=1e-12)
    np.testing.assert_allclose(np.abs(s.amplitudes) ** 2, [1, 0], atol=1e-12)


def test_expectation_z_eigenstates():
    s0 = init_state(1)
    assert expectation_z(s0, Observable(1)) == pytest.approx(1.0, abs=1e-12)
    s1 = apply_gate(s0, GateOp("RY", 0, angles=(np.pi,)))
    assert expectation_z(s1, Observable(1)) == pytest.approx(-1.0, abs=1e-10)


@pytest.mark.parametrize("theta", [0.0, np.pi / 4, np.pi / 2, 1.1, np.pi])
def test_expectation_z_cosine_oracle(theta):
    s = apply_gate(init_state(1), GateOp("RY", 0, angles=(theta,)))
    assert expectation_z(s, Observable(1)) == pytest.approx(np.cos(theta), abs=1e-10)


def test_expectation_all_basis_states():
    s = init_state(2)
    np.testing.assert_allclose(expectation_all(s), [1, 1], atol=1e-12)
    # flip qubit 0: |01> in little-endian -> element 1 (qubit 0) is -1
    s01 = apply_gate(s, GateOp("RX", 0, angles=(np.pi,)))
    np.testing.assert_allclose(expectation_all(s01), [-1, 1], atol=1e-10)


def test_expectation_all_partial_rotation():
    s = apply_gate(init_state(2), GateOp("RY", 1, angles=(np.pi,)))
    np.testing.assert_allclose(expectation_all(s), [1, -1], atol=1e-10)


def test_expectations_bounded():
    for _ in range(25):
        q = int(RNG.integers(1, 5))
        s = init_state(q)
        for _ in range(20):
            s = apply_gate(s, random_gate(q, RNG))
        e = expectation_all(s)
        assert np.all(e <= 1 + 1e-12) and np.all(e >= -1 - 1e-12)


def test_observable_index_errors():
    s = init_state(2)
    with pytest.raises(IndexError):
        expectation_z(s, Observable(3))
    with pytest.raises(IndexError):
        expectation_z(s, Observable(0))


def test_gate_index_errors():
    s = init_state(2)
    with pytest.raises(IndexError):
        apply_gate(s, GateOp("RY", 2, angles=(0.1,)))
    with pytest.raises(IndexError):
        apply_gate(s, GateOp("CRY", 0, control=5, angles=(0.1,)))
    with pytest.raises(IndexError):
        GateOp("CNOT", 1, control=1)


def test_gateop_validation():
    with pytest.raises(ValueError):
        GateOp("HADAMARD", 0)
    with pytest.raises(ValueError):
        GateOp("RY", 0, angles=(0.1, 0.2))
    with pytest.raises(ValueError):
        GateOp("CRX", 0, angles=(0.1,))  # missing control
    with pytest.raises(ValueError):
        GateOp("RY", 0, control=1, angles=(0.1,))


def test_unitarity_of_gate_matrices():
    for _ in range(200):
        q = 2
        op = random_gate(q, RNG)
        u = op.matrix()
        np.testing.assert_allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-12)


def test_norm_preserved_on_long_sequences():
    for _ in range(10):
        q = int(RNG.integers(2, 7))
        s = init_state(q)
        for _ in range(100):
            s = apply_gate(s, random_gate(q, RNG))
        assert abs(s.norm() - 1.0) < 1e-9


def test_apply_gate_matches_dense_oracle():
    for _ in range(300):
        q = int(RNG.integers(1, 4))
        amps = RNG.normal(size=1 << q) + 1j * RNG.normal(size=1 << q)
        amps /= np.linalg.norm(amps)
        from fastqconv.statevector import QuantumState
        s = QuantumState(q, amps.copy())
        op = random_gate(q, RNG)
        got = apply_gate(s, op).amplitudes
        want = oracle_full_matrix(op, q) @ amps
        np.testing.assert_allclose(got, want, atol=1e-12)


def test_circuit_run_matches_oracle_product():
    for _ in range(50):
        q = int(RNG.integers(1, 4))
        ops = [random_gate(q, RNG) for _ in range(12)]
        circ = Circuit(q, ops)
        got = circ.run().amplitudes
        want = np.zeros(1 << q, dtype=complex)
        want[0] = 1.0
        for op in ops:
            want = oracle_full_matrix(op, q) @ want
        np.testing.assert_allclose(got, want, atol=1e-12)
        assert abs(np.linalg.norm(got) - 1.0) < 1e-9


def test_apply_gate_leaves_input_untouched():
    s = init_state(1)
    before = s.amplitudes.copy()
    apply_gate(s, GateOp("RY", 0, angles=(1.0,)))
    np.testing.assert_array_equal(s.amplitudes, before)
