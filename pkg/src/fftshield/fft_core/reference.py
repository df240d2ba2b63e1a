"""Brute-force O(N^2) DFT used as the independent oracle.

Deliberately shares nothing with the staged transform path: the matrix is
built from a modular power table and applied row-block by row-block.
"""

import numpy as np

ORACLE_MAX_N = 2**14


def dft_reference(x: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Direct evaluation of y_j = sum_n x_n w^(jn); inverse scales by 1/N.

    Accepts any length (not just powers of two) up to the oracle budget cap.
    Batched inputs transform along the last axis.
    """
    x = np.asarray(x)
    single = x.ndim == 1
    xs = x.reshape(1, -1) if single else x
    n = xs.shape[-1]
    if n < 1:
        raise ValueError("empty signal")
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_N}, got {n}")
    sign = 1.0 if inverse else -1.0
    powers = np.exp(sign * 2j * np.pi * np.arange(n) / n)
    xc = xs.astype(np.complex128)
    out = np.empty_like(xc)
    cols = np.arange(n)
    block = max(1, 2**21 // n)
    for start in range(0, n, block):
        rows = np.arange(start, min(start + block, n))
        w_block = powers[(rows[:, None] * cols[None, :]) % n]
        out[:, rows] = xc @ w_block.T
    if inverse:
        out /= n
    result = out[0] if single else out
    return result.astype(x.dtype) if np.iscomplexobj(x) else result
