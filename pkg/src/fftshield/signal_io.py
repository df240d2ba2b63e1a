"""Raw signal files: headerless little-endian interleaved (re, im) pairs."""

from pathlib import Path

import numpy as np

_REAL = {"fp32": np.dtype("<f4"), "fp64": np.dtype("<f8")}
_COMPLEX = {"fp32": np.complex64, "fp64": np.complex128}


def read_signals(path, n: int, precision: str = "fp32") -> np.ndarray:
    """Load a (batch, n) complex array; batch is inferred from the file size."""
    real = _REAL[precision]
    raw = np.fromfile(Path(path), dtype=real)
    per_signal = 2 * n
    if raw.size == 0 or raw.size % per_signal:
        raise ValueError(
            f"input length mismatch: {raw.size * real.itemsize} bytes is not a "
            f"whole number of {n}-sample {precision} signals"
        )
    batch = raw.size // per_signal
    pairs = raw.reshape(batch, n, 2).astype(np.float64)
    return (pairs[..., 0] + 1j * pairs[..., 1]).astype(_COMPLEX[precision])


def write_signals(path, data: np.ndarray, precision: str = "fp32") -> None:
    """Store a signal or batch as interleaved (re, im) pairs."""
    real = _REAL[precision]
    arr = np.asarray(data, dtype=_COMPLEX[precision]).reshape(-1)
    pairs = np.empty((arr.size, 2), dtype=real)
    pairs[:, 0] = arr.real
    pairs[:, 1] = arr.imag
    pairs.tofile(Path(path))
