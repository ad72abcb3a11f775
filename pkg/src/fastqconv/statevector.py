"""Exact complex statevector simulation of small qubit registers.

Bit ordering is little-endian: qubit ``j`` is bit ``j`` of the basis index,
so basis state ``k`` has qubit ``j`` in value ``(k >> j) & 1``. Expectations
are computed exactly from amplitudes; there is no shot sampling.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import backend
from .errors import SizeError

MAX_QUBITS = 20

_ANGLE_COUNT = {"RX": 1, "RY": 1, "RZ": 1, "U3": 3,
                "CNOT": 0, "CRX": 1, "CRY": 1, "CRZ": 1}


@dataclass(frozen=True)
class GateOp:
    """One gate: a rotation, U3, or a controlled version on the control=1 subspace."""

    kind: str
    target: int
    control: int | None = None
    angles: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in _ANGLE_COUNT:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = _ANGLE_COUNT[self.kind]
        if len(self.angles) != want:
            raise ValueError(f"{self.kind} takes {want} angle(s), got {len(self.angles)}")
        controlled = self.kind in backend.CONTROLLED_KINDS
        if controlled and self.control is None:
            raise ValueError(f"{self.kind} requires a control qubit")
        if not controlled and self.control is not None:
            raise ValueError(f"{self.kind} takes no control qubit")
        if self.control is not None and self.control == self.target:
            raise IndexError("control and target must differ")

    def matrix(self) -> np.ndarray:
        """Unitary of this gate: 2x2, or 4x4 on basis index (control_bit << 1) | target_bit."""
        u = _base_unitary(self.kind, self.angles)
        if self.control is None:
            return u
        m = np.eye(4, dtype=complex)
        m[1, 1], m[1, 3], m[3, 1], m[3, 3] = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
        return m


def _base_unitary(kind: str, angles: Sequence[float]) -> np.ndarray:
    if kind in ("RX", "CRX"):
        c, s = np.cos(angles[0] / 2), np.sin(angles[0] / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if kind in ("RY", "CRY"):
        c, s = np.cos(angles[0] / 2), np.sin(angles[0] / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind in ("RZ", "CRZ"):
        e = np.exp(-0.5j * angles[0])
        return np.array([[e, 0], [0, np.conj(e)]])
    if kind == "U3":
        th, ph, lam = angles
        c, s = np.cos(th / 2), np.sin(th / 2)
        return np.array([[c, -np.exp(1j * lam) * s],
                         [np.exp(1j * ph) * s, np.exp(1j * (ph + lam)) * c]])
    # CNOT
    return np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass
class QuantumState:
    """Amplitude vector over the 2**num_qubits computational basis."""

    num_qubits: int
    amplitudes: np.ndarray

    def copy(self) -> "QuantumState":
        return QuantumState(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class Observable:
    """Pauli-Z readout M_l on one qubit; qubit_index is 1-based as in M_l,
    measuring qubit ``qubit_index - 1`` of the register."""

    qubit_index: int


def zero_amplitudes(num_qubits: int) -> np.ndarray:
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return amps


def init_state(num_qubits: int) -> QuantumState:
    """|0...0> on ``num_qubits`` qubits. Raises SizeError outside 1..MAX_QUBITS."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise SizeError(f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")
    return QuantumState(num_qubits, zero_amplitudes(num_qubits))


def _check_indices(num_qubits: int, gate: GateOp) -> None:
    if not 0 <= gate.target < num_qubits:
        raise IndexError(f"target {gate.target} out of range for {num_qubits} qubits")
    if gate.control is not None and not 0 <= gate.control < num_qubits:
        raise IndexError(f"control {gate.control} out of range for {num_qubits} qubits")


@dataclass
class CompiledOps:
    """Gate sequence flattened into kernel-ready arrays.

    ``angles`` stays mutable on purpose: the parameter-shift machinery edits
    single entries in place between runs.
    """

    num_qubits: int
    kinds: np.ndarray
    targets: np.ndarray
    controls: np.ndarray
    angles: np.ndarray  # (n_ops, 3), unused slots zero

    @classmethod
    def from_ops(cls, ops: Sequence[GateOp], num_qubits: int) -> "CompiledOps":
        n = len(ops)
        kinds = np.empty(n, dtype=np.int64)
        targets = np.empty(n, dtype=np.int64)
        controls = np.empty(n, dtype=np.int64)
        angles = np.zeros((n, 3), dtype=np.float64)
        for i, op in enumerate(ops):
            _check_indices(num_qubits, op)
            kinds[i] = backend.GATE_CODES[op.kind]
            targets[i] = op.target
            controls[i] = -1 if op.control is None else op.control
            angles[i, :len(op.angles)] = op.angles
        return cls(num_qubits, kinds, targets, controls, angles)

    def run(self, amps: np.ndarray | None = None) -> np.ndarray:
        """Apply all ops; starts from |0...0> when ``amps`` is None, else in place."""
        if amps is None:
            amps = zero_amplitudes(self.num_qubits)
        backend.apply_ops(amps, self.num_qubits, self.kinds, self.targets,
                          self.controls, self.angles)
        return amps

    def __len__(self) -> int:
        return self.kinds.shape[0]


@dataclass
class Circuit:
    """Ordered list of gate descriptors on a fixed register (encoding and
    trainable gates alike)."""

    num_qubits: int
    ops: list[GateOp] = field(default_factory=list)

    def append(self, op: GateOp) -> None:
        self.ops.append(op)

    def extend(self, ops: Iterable[GateOp]) -> None:
        self.ops.extend(ops)

    def compiled(self) -> CompiledOps:
        return CompiledOps.from_ops(self.ops, self.num_qubits)

    def run(self, state: QuantumState | None = None) -> QuantumState:
        amps = None if state is None else state.amplitudes.copy()
        out = self.compiled().run(amps)
        return QuantumState(self.num_qubits, out)


def apply_gate(state: QuantumState, gate: GateOp) -> QuantumState:
    """U . state as a new state; the input is left untouched."""
    _check_indices(state.num_qubits, gate)
    out = state.amplitudes.copy()
    CompiledOps.from_ops([gate], state.num_qubits).run(out)
    return QuantumState(state.num_qubits, out)


def expectation_all(state: QuantumState) -> np.ndarray:
    """<Z> of every qubit: element l is P(qubit l = 0) - P(qubit l = 1)."""
    out = np.empty(state.num_qubits, dtype=np.float64)
    backend.z_expectations(state.amplitudes, state.num_qubits, out)
    return out


def expectation_z(state: QuantumState, obs: Observable) -> float:
    if not 1 <= obs.qubit_index <= state.num_qubits:
        raise IndexError(f"observable qubit_index {obs.qubit_index} out of range "
                         f"for {state.num_qubits} qubits (1-based)")
    return float(expectation_all(state)[obs.qubit_index - 1])
