"""Kernel backend selection.

The hot statevector kernels exist twice: a Cython extension
(``fastqconv._kernel``) and a pure-numpy fallback (``fastqconv._kernel_py``)
with identical semantics. The compiled kernel is used when importable; set
``FASTQCONV_KERNEL=python`` or ``=compiled`` to force one side (``compiled``
raises if the extension is missing).

Both kernels share the integer gate codes below. Gate matrices are the
rotation matrices R_x, R_y, R_z (half-angle convention), the standard
three-angle single-qubit rotation U3, and their controlled embeddings acting
on the control=1 subspace.
"""
import os

GATE_CODES = {
    "RX": 0,
    "RY": 1,
    "RZ": 2,
    "U3": 3,
    "CNOT": 4,
    "CRX": 5,
    "CRY": 6,
    "CRZ": 7,
}

CONTROLLED_KINDS = frozenset({"CNOT", "CRX", "CRY", "CRZ"})

_choice = os.environ.get("FASTQCONV_KERNEL", "auto").lower()
if _choice not in {"auto", "compiled", "python"}:
    raise ValueError(f"FASTQCONV_KERNEL must be auto|compiled|python, got {_choice!r}")

_impl = None
if _choice in ("auto", "compiled"):
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
        KERNEL_BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = None
if _impl is None:
    from . import _kernel_py as _impl
    KERNEL_BACKEND = "python"

apply_ops = _impl.apply_ops
z_expectations = _impl.z_expectations


def kernel_backends():
    """Names of the kernel implementations importable in this environment."""
    names = ["python"]
    try:
        from . import _kernel  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names


def get_kernel(name):
    """Fetch one kernel module by name ('compiled' or 'python')."""
    if name == "python":
        from . import _kernel_py
        return _kernel_py
    if name == "compiled":
        from . import _kernel
        return _kernel
    raise ValueError(f"unknown kernel backend {name!r}")
