"""fastqconv: channel-uploading quantum convolution on an exact statevector
simulator, with parameter-shift training, gate-count instrumentation, and a
toy quantum region-proposal head."""

from .backend import KERNEL_BACKEND, kernel_backends
from .statevector import (Circuit, GateOp, Observable, QuantumState,
                          apply_gate, expectation_all, expectation_z,
                          init_state)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "kernel_backends",
    "Circuit",
    "GateOp",
    "Observable",
    "QuantumState",
    "apply_gate",
    "expectation_all",
    "expectation_z",
    "init_state",
    "__version__",
]
