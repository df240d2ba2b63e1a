"""Checksum encoding vectors and left/right checksum evaluation.

An encoding vector e defines the checksum e^T y of a transform output; its
transform-side image e^T W (equal to the DFT of e, W being symmetric) lets
the same checksum be predicted from the input before the transform runs.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..fft_core import build_twiddles, dft_reference, fft_execute, make_plan


class EncodingKind(str, Enum):
    WANG = "wang"
    JOU = "jou"
    ONES = "ones"
    LINEAR = "linear"


@dataclass(frozen=True)
class EncodingVector:
    kind: EncodingKind
    values: np.ndarray  # the weights e
    etw: np.ndarray  # e^T W
    etw_inv: np.ndarray  # e^T W^-1, the input-side row for inverse transforms
    requires_variant_input: bool = False


def _values(kind: EncodingKind, length: int) -> np.ndarray:
    k = np.arange(length)
    if kind is EncodingKind.WANG:
        omega3 = np.exp(-2j * np.pi / 3)
        return omega3 ** (k % 3)
    if kind is EncodingKind.JOU:
        omega = np.exp(-2j * np.pi / length)
        return omega**k
    if kind is EncodingKind.ONES:
        return np.ones(length, dtype=np.complex128)
    if kind is EncodingKind.LINEAR:
        return (k + 1).astype(np.complex128)
    raise ValueError(f"unknown encoding kind {kind}")


def make_encoding(kind: EncodingKind | str, length: int) -> EncodingVector:
    """Build weights and their transform-side image for a given length.

    The Jou encoding is only meaningful against the variant input produced
    by :func:`jou_variant_input`; the returned vector is marked accordingly.
    """
    kind = EncodingKind(kind)
    if length < 1:
        raise ValueError("encoding length must be >= 1")
    values = _values(kind, length)
    if length >= 2 and length & (length - 1) == 0:
        plan = make_plan(length, precision="fp64")
        twiddles = build_twiddles(plan)
        etw = fft_execute(plan, twiddles, values)
        # W^-1 is symmetric too, so e^T W^-1 is the inverse transform of e
        etw_inv = fft_execute(plan, twiddles, values, inverse=True)
    else:
        etw = dft_reference(values)
        etw_inv = dft_reference(values, inverse=True)
    return EncodingVector(
        kind=kind,
        values=values,
        etw=np.asarray(etw, dtype=np.complex128),
        etw_inv=np.asarray(etw_inv, dtype=np.complex128),
        requires_variant_input=kind is EncodingKind.JOU,
    )


def jou_variant_input(x: np.ndarray) -> np.ndarray:
    """x'_k = 2 x_k + x_{(k+1) mod n}, the remapped input the Jou scheme checks."""
    x = np.asarray(x)
    if x.shape[-1] < 2:
        raise ValueError("variant input needs length >= 2")
    return 2 * x + np.roll(x, -1, axis=-1)


def left_checksum(x: np.ndarray, enc: EncodingVector, side: str = "input") -> complex:
    """Input side: (e^T W) x, predicted from the input. Output side: e^T y."""
    x = np.asarray(x)
    if side == "input":
        weights = enc.etw
    elif side == "output":
        weights = enc.values
    else:
        raise ValueError("side must be 'input' or 'output'")
    if x.shape[-1] != weights.shape[0]:
        raise ValueError("length mismatch between signal and encoding")
    return x @ weights
