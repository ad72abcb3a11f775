"""Pure-numpy fallback for the compiled statevector kernels.

Must stay semantically identical to ``fastqconv._kernel`` (the Cython
extension); tests/test_kernel_backends.py enforces agreement.
"""
import numpy as np

K_RX, K_RY, K_RZ, K_U3, K_CNOT, K_CRX, K_CRY, K_CRZ = range(8)

# basis-index pairs per (num_qubits, target, control); bounded by q <= 20
_PAIR_CACHE = {}


def _pairs(num_qubits, target, control):
    key = (num_qubits, target, control)
    hit = _PAIR_CACHE.get(key)
    if hit is None:
        idx = np.arange(1 << num_qubits)
        sel = (idx >> target) & 1 == 0
        if control >= 0:
            sel &= (idx >> control) & 1 == 1
        i0 = idx[sel]
        hit = (i0, i0 | (1 << target))
        _PAIR_CACHE[key] = hit
    return hit


def _unitary2(kind, th, ph, lam):
    if kind == K_RX or kind == K_CRX:
        c, s = np.cos(0.5 * th), np.sin(0.5 * th)
        return c, -1j * s, -1j * s, c
    if kind == K_RY or kind == K_CRY:
        c, s = np.cos(0.5 * th), np.sin(0.5 * th)
        return c, -s, s, c
    if kind == K_RZ or kind == K_CRZ:
        e = np.exp(-0.5j * th)
        return e, 0.0, 0.0, np.conj(e)
    if kind == K_U3:
        c, s = np.cos(0.5 * th), np.sin(0.5 * th)
        return (c, -np.exp(1j * lam) * s,
                np.exp(1j * ph) * s, np.exp(1j * (ph + lam)) * c)
    if kind == K_CNOT:
        return 0.0, 1.0, 1.0, 0.0
    raise ValueError(f"unknown gate code {kind}")


def apply_ops(amps, num_qubits, kinds, targets, controls, angles):
    """Apply a gate sequence in place to a 2**num_qubits amplitude vector."""
    for p in range(kinds.shape[0]):
        u00, u01, u10, u11 = _unitary2(kinds[p], angles[p, 0], angles[p, 1],
                                       angles[p, 2])
        i0, i1 = _pairs(num_qubits, targets[p], controls[p])
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = u00 * a0 + u01 * a1
        amps[i1] = u10 * a0 + u11 * a1


def z_expectations(amps, num_qubits, out):
    """out[j] = P(qubit j = 0) - P(qubit j = 1); qubit j is bit j of the index."""
    probs = amps.real * amps.real + amps.imag * amps.imag
    for j in range(num_qubits):
        i0, i1 = _pairs(num_qubits, j, -1)
        out[j] = probs[i0].sum() - probs[i1].sum()
