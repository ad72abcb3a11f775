"""Trainable circuits and exact parameter-shift differentiation.

The ansatz is the U3CU3 pattern: per block, an arbitrary single-qubit
rotation on every qubit followed by controlled rotations on the ring
(i, i+1 mod q); a 1-qubit register gets the U3 part only. Every U3 is stored
as the product RZ(phi) RY(theta) RZ(lam) (rightmost first) and every
controlled U3 as CRZ(phi) CRY(theta) CRZ(lam), so each trainable angle sits
in exactly one rotation gate.

Gradients use the parameter-shift rule. A plain Pauli rotation has generator
eigenvalues +-1/2 and the two-term rule is exact:

    df/dt = 1/2 [f(t + pi/2) - f(t - pi/2)]

A controlled rotation has generator eigenvalues {0, +-1/2}, which introduces
a half-frequency component; the exact rule there is the four-term variant
with shifts pi/2 and 3pi/2 and coefficients (sqrt(2) +- 1) / (4 sqrt(2)).
Angles uploaded by the encoder are plain rotations scaled by
``plan.angle_scale``, so data gradients reuse the two-term rule times that
scale.

Parameter vectors are stored modulo 2*pi (binding normalizes); shifted
evaluations apply the raw offsets so the rules act on the physical
expectation function around the stored representative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import UploadPlan, upload_ops
from .errors import GeometryError
from .statevector import (CompiledOps, GateOp, QuantumState, zero_amplitudes)

TWO_PI = 2.0 * math.pi

_SQRT2 = math.sqrt(2.0)
_FOUR_TERM = (
    ((_SQRT2 + 1.0) / (4.0 * _SQRT2), 0.5 * math.pi),
    (-(_SQRT2 + 1.0) / (4.0 * _SQRT2), -0.5 * math.pi),
    (-(_SQRT2 - 1.0) / (4.0 * _SQRT2), 1.5 * math.pi),
    ((_SQRT2 - 1.0) / (4.0 * _SQRT2), -1.5 * math.pi),
)


def shift_terms(controlled: bool, shift: float = 0.5 * math.pi):
    """(coefficient, offset) pairs of the exact rule for one rotation angle."""
    if controlled:
        return _FOUR_TERM
    return ((0.5, shift), (-0.5, -shift))


@dataclass(frozen=True)
class PqcSpec:
    """Structure of a trainable circuit: ``blocks`` U3CU3 layers on
    ``num_qubits`` qubits (U3-only when num_qubits == 1)."""

    num_qubits: int
    blocks: int

    def __post_init__(self):
        if self.num_qubits < 1:
            raise GeometryError("PqcSpec needs at least one qubit")
        if self.blocks < 1:
            raise GeometryError("PqcSpec needs at least one block")

    @classmethod
    def default(cls, num_qubits: int) -> "PqcSpec":
        """Two blocks for entangling registers, one U3 layer for one qubit."""
        return cls(num_qubits, 2 if num_qubits >= 2 else 1)

    @property
    def ring_pairs(self) -> list[tuple[int, int]]:
        q = self.num_qubits
        if q == 1:
            return []
        return [(i, (i + 1) % q) for i in range(q)]

    @property
    def params_per_block(self) -> int:
        return 3 * self.num_qubits + 3 * len(self.ring_pairs)

    @property
    def num_params(self) -> int:
        return self.blocks * self.params_per_block


def init_params(spec: PqcSpec, rng: np.random.Generator) -> np.ndarray:
    """Uniform angles on [0, 2*pi)."""
    return rng.uniform(0.0, TWO_PI, size=spec.num_params)


def normalize_params(theta: np.ndarray) -> np.ndarray:
    return np.mod(np.asarray(theta, dtype=np.float64), TWO_PI)


def _check_theta(spec: PqcSpec, theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (spec.num_params,):
        raise GeometryError(
            f"expected {spec.num_params} parameters, got shape {theta.shape}")
    if not np.all(np.isfinite(theta)):
        raise GeometryError("parameters must be finite")
    return normalize_params(theta)


def build_pqc_ops(spec: PqcSpec, theta: np.ndarray):
    """Ops plus, per parameter, its (op_index, controlled) placement.

    Parameter layout is block-major: for each block, (theta, phi, lam) per
    qubit for the U3s, then (theta, phi, lam) per ring pair for the CU3s.
    """
    theta = _check_theta(spec, theta)
    ops: list[GateOp] = []
    placement: list[tuple[int, bool]] = []
    k = 0
    for _ in range(spec.blocks):
        for qubit in range(spec.num_qubits):
            th, ph, lam = theta[k], theta[k + 1], theta[k + 2]
            # circuit order RZ(lam), RY(th), RZ(ph); placement in theta order
            i_lam = len(ops)
            ops.append(GateOp("RZ", qubit, angles=(float(lam),)))
            i_th = len(ops)
            ops.append(GateOp("RY", qubit, angles=(float(th),)))
            i_ph = len(ops)
            ops.append(GateOp("RZ", qubit, angles=(float(ph),)))
            placement.extend([(i_th, False), (i_ph, False), (i_lam, False)])
            k += 3
        for ctrl, tgt in spec.ring_pairs:
            th, ph, lam = theta[k], theta[k + 1], theta[k + 2]
            i_lam = len(ops)
            ops.append(GateOp("CRZ", tgt, ctrl, angles=(float(lam),)))
            i_th = len(ops)
            ops.append(GateOp("CRY", tgt, ctrl, angles=(float(th),)))
            i_ph = len(ops)
            ops.append(GateOp("CRZ", tgt, ctrl, angles=(float(ph),)))
            placement.extend([(i_th, True), (i_ph, True), (i_lam, True)])
            k += 3
    return ops, placement


@dataclass
class BoundPqc:
    """A spec bound to concrete angles, compiled for the kernel."""

    spec: PqcSpec
    compiled: CompiledOps
    # per parameter: list of (op_index, controlled); one entry unless a
    # parameter is reused (interleaved re-uploading)
    occurrences: list[list[tuple[int, bool]]]


def bind(spec: PqcSpec, theta: np.ndarray) -> BoundPqc:
    ops, placement = build_pqc_ops(spec, theta)
    compiled = CompiledOps.from_ops(ops, spec.num_qubits)
    return BoundPqc(spec, compiled, [[p] for p in placement])


def pqc_forward(state: QuantumState, spec: PqcSpec,
                theta: np.ndarray) -> QuantumState:
    """U_T(theta) |state>."""
    if state.num_qubits != spec.num_qubits:
        raise GeometryError(f"state has {state.num_qubits} qubits, "
                            f"spec wants {spec.num_qubits}")
    amps = bind(spec, theta).compiled.run(state.amplitudes.copy())
    return QuantumState(spec.num_qubits, amps)


def _z_all(compiled: CompiledOps, base: np.ndarray | None,
           scratch: np.ndarray, out: np.ndarray) -> np.ndarray:
    from . import backend
    if base is None:
        scratch[:] = 0.0
        scratch[0] = 1.0
    else:
        scratch[:] = base
    backend.apply_ops(scratch, compiled.num_qubits, compiled.kinds,
                      compiled.targets, compiled.controls, compiled.angles)
    backend.z_expectations(scratch, compiled.num_qubits, out)
    return out


def shift_jacobian(compiled: CompiledOps,
                   occurrences: list[list[tuple[int, bool]]],
                   scales: np.ndarray | float = 1.0,
                   base: np.ndarray | None = None,
                   shift: float = 0.5 * math.pi) -> np.ndarray:
    """d<Z_l>/d(parameter k) for every qubit l, by shifted re-evaluation.

    ``compiled.angles`` is mutated in place and restored. ``base`` is the
    amplitude vector fed to the circuit (|0...0> when None) — pass a cached
    encoded state to differentiate a trainable tail without re-encoding.
    """
    n_params = len(occurrences)
    q = compiled.num_qubits
    jac = np.zeros((n_params, q), dtype=np.float64)
    scratch = np.empty(1 << q, dtype=np.complex128)
    f = np.empty(q, dtype=np.float64)
    scales = np.broadcast_to(np.asarray(scales, dtype=np.float64), (n_params,))
    angles = compiled.angles
    for k, occ in enumerate(occurrences):
        for op_idx, controlled in occ:
            old = angles[op_idx, 0]
            for coeff, delta in shift_terms(controlled, shift):
                angles[op_idx, 0] = old + delta
                _z_all(compiled, base, scratch, f)
                jac[k] += coeff * f
            angles[op_idx, 0] = old
        jac[k] *= scales[k]
    return jac


def param_shift_grad(spec: PqcSpec, theta: np.ndarray,
                     input_state: QuantumState, observable_index: int = 0,
                     shift: float = 0.5 * math.pi) -> np.ndarray:
    """Exact d<Z_obs>/d(theta) after U_T(theta) on ``input_state``.

    ``observable_index`` indexes the expectation_all vector (0-based qubit).
    """
    if input_state.num_qubits != spec.num_qubits:
        raise GeometryError("input state and spec disagree on qubit count")
    if not 0 <= observable_index < spec.num_qubits:
        raise IndexError(f"observable_index {observable_index} out of range")
    bound = bind(spec, theta)
    jac = shift_jacobian(bound.compiled, bound.occurrences,
                         base=input_state.amplitudes, shift=shift)
    return jac[:, observable_index].copy()


def _encoded_pqc(plan: UploadPlan, spec: PqcSpec, theta: np.ndarray,
                 row: np.ndarray):
    if plan.num_qubits != spec.num_qubits:
        raise GeometryError("upload plan and spec disagree on qubit count")
    enc = upload_ops(row, plan)
    pqc_ops, placement = build_pqc_ops(spec, theta)
    compiled = CompiledOps.from_ops(enc + pqc_ops, spec.num_qubits)
    n_enc = len(enc)
    input_occ = [[(j, False)] for j in range(n_enc)]
    theta_occ = [[(i + n_enc, c)] for i, c in placement]
    return compiled, input_occ, theta_occ


def input_shift_grad(plan: UploadPlan, spec: PqcSpec, theta: np.ndarray,
                     row: np.ndarray, observable_index: int = 0,
                     shift: float = 0.5 * math.pi) -> np.ndarray:
    """d<Z_obs>/d(row_j): the shift rule on upload angles times angle_scale."""
    row = np.asarray(row, dtype=np.float64)
    if not 0 <= observable_index < spec.num_qubits:
        raise IndexError(f"observable_index {observable_index} out of range")
    compiled, input_occ, _ = _encoded_pqc(plan, spec, theta, row)
    jac = shift_jacobian(compiled, input_occ, scales=plan.angle_scale,
                         shift=shift)
    return jac[:, observable_index].copy()


def input_shift_jacobian(plan: UploadPlan, spec: PqcSpec, theta: np.ndarray,
                         row: np.ndarray,
                         shift: float = 0.5 * math.pi) -> np.ndarray:
    """(len(row), num_qubits) Jacobian of all <Z_l> w.r.t. the row values."""
    compiled, input_occ, _ = _encoded_pqc(plan, spec, theta,
                                          np.asarray(row, dtype=np.float64))
    return shift_jacobian(compiled, input_occ, scales=plan.angle_scale,
                          shift=shift)
