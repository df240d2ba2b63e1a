"""Pure-numpy Stockham butterfly kernel.

Reference backend: vectorized over tiles, bit-for-bit independent of the
compiled extension but computing the same decimation-in-time schedule.
"""

import numpy as np

NAME = "numpy"


def tile_fft(tiles: np.ndarray, base: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Transform every row of ``tiles`` (shape (T, L), L a power of two).

    ``base`` holds the unit-circle factors w_L^k for k < L/2, in the same
    complex dtype as ``tiles``. Output is in natural order (autosort); no
    bit-reversal pass. The inverse path conjugates the factors but does NOT
    apply the 1/L scale -- the caller owns scaling.
    """
    t, length = tiles.shape
    if length == 1:
        return tiles.copy()
    # out-of-place: the caller's buffer is never used as scratch
    a = np.array(tiles, order="C", copy=True)
    b = np.empty_like(a)
    m = length // 2
    s = 1
    while m >= 1:
        w = base[:: length // (2 * s)][:s]
        if inverse:
            w = np.conj(w)
        x = a.reshape(t, 2 * m, s)
        hi = x[:, m:, :] * w[None, None, :]
        y = b.reshape(t, m, 2, s)
        y[:, :, 0, :] = x[:, :m, :] + hi
        y[:, :, 1, :] = x[:, :m, :] - hi
        a, b = b, a
        m //= 2
        s *= 2
    return a
