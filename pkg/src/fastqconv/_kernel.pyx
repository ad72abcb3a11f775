# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled statevector kernels.

Semantics must stay in lockstep with fastqconv._kernel_py (the pure-numpy
fallback). Gate kind codes mirror fastqconv.backend.GATE_CODES.
"""
from libc.math cimport cos, sin

cdef enum GateKind:
    K_RX = 0
    K_RY = 1
    K_RZ = 2
    K_U3 = 3
    K_CNOT = 4
    K_CRX = 5
    K_CRY = 6
    K_CRZ = 7


def apply_ops(double complex[::1] amps, int num_qubits,
              const long long[::1] kinds,
              const long long[::1] targets,
              const long long[::1] controls,
              const double[:, ::1] angles):
    """Apply a gate sequence in place to a 2**num_qubits amplitude vector."""
    cdef Py_ssize_t n_ops = kinds.shape[0]
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << num_qubits
    cdef Py_ssize_t p, base, off, i0, i1, stride, cmask
    cdef long long kind
    cdef double half, ph, lam, c, s
    cdef double complex u00, u01, u10, u11, a0, a1
    for p in range(n_ops):
        kind = kinds[p]
        stride = (<Py_ssize_t>1) << targets[p]
        cmask = 0
        if controls[p] >= 0:
            cmask = (<Py_ssize_t>1) << controls[p]
        if kind == K_RX or kind == K_CRX:
            half = 0.5 * angles[p, 0]
            c = cos(half)
            s = sin(half)
            u00 = c
            u01 = -1j * s
            u10 = -1j * s
            u11 = c
        elif kind == K_RY or kind == K_CRY:
            half = 0.5 * angles[p, 0]
            c = cos(half)
            s = sin(half)
            u00 = c
            u01 = -s
            u10 = s
            u11 = c
        elif kind == K_RZ or kind == K_CRZ:
            half = 0.5 * angles[p, 0]
            u00 = cos(half) - 1j * sin(half)
            u01 = 0
            u10 = 0
            u11 = cos(half) + 1j * sin(half)
        elif kind == K_U3:
            half = 0.5 * angles[p, 0]
            ph = angles[p, 1]
            lam = angles[p, 2]
            c = cos(half)
            s = sin(half)
            u00 = c
            u01 = -(cos(lam) + 1j * sin(lam)) * s
            u10 = (cos(ph) + 1j * sin(ph)) * s
            u11 = (cos(ph + lam) + 1j * sin(ph + lam)) * c
        else:  # K_CNOT
            u00 = 0
            u01 = 1
            u10 = 1
            u11 = 0
        base = 0
        while base < dim:
            for off in range(stride):
                i0 = base + off
                if cmask != 0 and (i0 & cmask) == 0:
                    continue
                i1 = i0 + stride
                a0 = amps[i0]
                a1 = amps[i1]
                amps[i0] = u00 * a0 + u01 * a1
                amps[i1] = u10 * a0 + u11 * a1
            base += 2 * stride


def z_expectations(const double complex[::1] amps, int num_qubits,
                   double[::1] out):
    """out[j] = P(qubit j = 0) - P(qubit j = 1); qubit j is bit j of the index."""
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << num_qubits
    cdef Py_ssize_t k, j
    cdef double pr
    for j in range(num_qubits):
        out[j] = 0.0
    for k in range(dim):
        pr = amps[k].real * amps[k].real + amps[k].imag * amps[k].imag
        for j in range(num_qubits):
            if (k >> j) & 1:
                out[j] -= pr
            else:
                out[j] += pr
