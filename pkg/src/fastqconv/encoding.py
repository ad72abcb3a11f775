"""Patch lowering and channel-uploading state preparation.

``im2col`` flattens every receptive field of an (H, W, C) tensor into one row
of a patch matrix; one quantum encode is performed per row. Channel uploading
writes the whole row (all channels) onto a fixed q-qubit register by rotation
gates, value ``j`` landing on qubit ``j mod q`` — multiple values share a
qubit, which is what distinguishes it from the per-channel baseline that
spends a fresh register per channel.

Rows are expected in [-1, 1]; ``minmax_normalize`` provides the default
per-tensor mapping. Value ``v`` becomes a rotation by ``angle_scale * v``
(default pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, GeometryError
from .statevector import Circuit, GateOp, QuantumState

UPLOAD_AXES = ("RX", "RY", "RZ", "CYCLE")
_CYCLE = ("RX", "RY", "RZ")


@dataclass(frozen=True)
class UploadPlan:
    """How a patch row is written onto the register."""

    num_qubits: int
    axis: str = "RY"
    angle_scale: float = math.pi

    def __post_init__(self):
        if self.num_qubits < 1:
            raise GeometryError("UploadPlan needs at least one qubit")
        if self.axis not in UPLOAD_AXES:
            raise GeometryError(f"upload axis must be one of {UPLOAD_AXES}")
        if not self.angle_scale > 0:
            raise GeometryError("angle_scale must be positive")

    def axis_for(self, j: int) -> str:
        return _CYCLE[j % 3] if self.axis == "CYCLE" else self.axis


@dataclass(frozen=True)
class PatchGeometry:
    in_shape: tuple[int, int, int]
    kernel: tuple[int, int]
    stride: int
    pad: int
    h_out: int
    w_out: int


@dataclass
class PatchMatrix:
    """Rows = output positions (row-major), columns = (dy, dx, c)-ordered patch."""

    values: np.ndarray
    geometry: PatchGeometry

    @property
    def rows(self) -> int:
        return self.values.shape[0]


def _out_extent(size: int, k: int, stride: int, pad: int) -> int:
    return (size + 2 * pad - k) // stride + 1


def im2col(x: np.ndarray, kernel: tuple[int, int], stride: int = 1,
           pad: int = 0) -> PatchMatrix:
    """Lower an (H, W, C) tensor to its patch matrix with zero padding."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise GeometryError(f"expected (H, W, C) tensor, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DataError("input tensor contains non-finite values")
    kh, kw = kernel
    if kh < 1 or kw < 1 or stride < 1 or pad < 0:
        raise GeometryError("kernel and stride must be >= 1, pad >= 0")
    h, w, c = x.shape
    if kh > h + 2 * pad or kw > w + 2 * pad:
        raise GeometryError(f"kernel {kernel} larger than padded input {(h, w)}")
    h_out = _out_extent(h, kh, stride, pad)
    w_out = _out_extent(w, kw, stride, pad)
    xp = np.pad(x, ((pad, pad), (pad, pad), (0, 0))) if pad else x
    p = np.empty((h_out * w_out, kh * kw * c), dtype=np.float64)
    for dy in range(kh):
        for dx in range(kw):
            block = xp[dy:dy + stride * h_out:stride,
                       dx:dx + stride * w_out:stride, :]
            p[:, (dy * kw + dx) * c:(dy * kw + dx + 1) * c] = block.reshape(-1, c)
    geom = PatchGeometry((h, w, c), (kh, kw), stride, pad, h_out, w_out)
    return PatchMatrix(p, geom)


def col2im_adjoint(p: PatchMatrix) -> np.ndarray:
    """Exact adjoint of im2col as a linear map: scatter-add rows back."""
    g = p.geometry
    h, w, c = g.in_shape
    kh, kw = g.kernel
    if p.values.shape != (g.h_out * g.w_out, kh * kw * c):
        raise GeometryError("patch matrix does not match its geometry record")
    xp = np.zeros((h + 2 * g.pad, w + 2 * g.pad, c), dtype=np.float64)
    for dy in range(kh):
        for dx in range(kw):
            block = p.values[:, (dy * kw + dx) * c:(dy * kw + dx + 1) * c]
            xp[dy:dy + g.stride * g.h_out:g.stride,
               dx:dx + g.stride * g.w_out:g.stride, :] += block.reshape(
                   g.h_out, g.w_out, c)
    if g.pad:
        return xp[g.pad:g.pad + h, g.pad:g.pad + w, :]
    return xp


def upload_ops(row: np.ndarray, plan: UploadPlan) -> list[GateOp]:
    """Rotation gates realizing the channel-uploading encoder for one row."""
    row = np.asarray(row, dtype=np.float64)
    if not np.all(np.isfinite(row)):
        raise DataError("row contains non-finite values")
    return [GateOp(plan.axis_for(j), j % plan.num_qubits,
                   angles=(plan.angle_scale * float(v),))
            for j, v in enumerate(row)]


def encode_row(row: np.ndarray, plan: UploadPlan) -> QuantumState:
    """Upload a whole patch row (all channels) onto one register."""
    return Circuit(plan.num_qubits, upload_ops(row, plan)).run()


def encode_row_per_channel(row: np.ndarray, plan: UploadPlan,
                           channels: int) -> list[QuantumState]:
    """Per-channel baseline: a fresh register per channel of the same row."""
    row = np.asarray(row, dtype=np.float64)
    if channels < 1 or row.shape[0] % channels:
        raise GeometryError(
            f"row length {row.shape[0]} not divisible by {channels} channels")
    return [encode_row(row[c::channels], plan) for c in range(channels)]


def minmax_normalize(x: np.ndarray) -> np.ndarray:
    """Map a tensor to [-1, 1] per min/max; a constant tensor maps to zeros."""
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DataError("tensor contains non-finite values")
    lo, hi = x.min(), x.max()
    if hi == lo:
        return np.zeros_like(x)
    return 2.0 * (x - lo) / (hi - lo) - 1.0
