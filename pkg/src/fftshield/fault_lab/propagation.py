"""Corruption footprint of a single error through a radix-2 network.

Runs the same radix-2 schedule twice, clean and with one element disturbed
between two butterfly steps, and counts how many outputs diverge. Each
remaining step doubles the footprint.
"""

import numpy as np


def _radix2_fft(x: np.ndarray, disturb_after: int | None = None,
                element: int = 0, epsilon: complex = 0.0) -> np.ndarray:
    n = x.size
    steps = n.bit_length() - 1
    base = np.exp(-2j * np.pi * np.arange(n // 2) / n)
    a = x.astype(np.complex128).copy()
    b = np.empty_like(a)
    if disturb_after == 0:
        a[element] += epsilon
    m = n // 2
    s = 1
    for step in range(steps):
        w = base[:: n // (2 * s)][:s]
        xv = a.reshape(2 * m, s)
        hi = xv[m:, :] * w[None, :]
        yv = b.reshape(m, 2, s)
        yv[:, 0, :] = xv[:m, :] + hi
        yv[:, 1, :] = xv[:m, :] - hi
        a, b = b, a
        m //= 2
        s *= 2
        if disturb_after == step + 1:
            a[element] += epsilon
    return a


def propagation_footprint(
    n: int,
    inject_stage: int,
    element: int = 0,
    seed: int = 0,
    epsilon: complex | None = None,
) -> int:
    """Count outputs corrupted by one error injected mid-transform.

    ``inject_stage`` is the number of butterfly steps completed before the
    injection: 0 disturbs the input, log2(n) disturbs the final output.
    """
    if n < 2 or n & (n - 1):
        raise ValueError("n must be a power of two >= 2")
    steps = n.bit_length() - 1
    if not 0 <= inject_stage <= steps:
        raise ValueError(f"inject_stage must be in 0..{steps}")
    if not 0 <= element < n:
        raise ValueError("element out of range")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if epsilon is None:
        epsilon = 1e3 * (1.0 + 1.0j)
    clean = _radix2_fft(x)
    dirty = _radix2_fft(x, disturb_after=inject_stage, element=element, epsilon=epsilon)
    tol = 1e-9 * abs(epsilon)
    return int(np.count_nonzero(np.abs(clean - dirty) > tol))
