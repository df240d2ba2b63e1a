# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Stockham butterfly kernel (hot loop of every stage pass)."""

import numpy as np

NAME = "ext"

ctypedef float complex cfloat_t
ctypedef double complex cdouble_t

ctypedef fused cplx:
    cfloat_t
    cdouble_t


cdef void _steps(cplx[:, ::1] a, cplx[:, ::1] b, cplx[::1] base,
                 bint inverse) nogil:
    cdef Py_ssize_t t_count = a.shape[0]
    cdef Py_ssize_t length = a.shape[1]
    cdef Py_ssize_t m = length // 2
    cdef Py_ssize_t s = 1
    cdef Py_ssize_t t, p, q, stride
    cdef cplx lo, hi, w
    cdef cplx[:, ::1] x = a
    cdef cplx[:, ::1] y = b
    cdef cplx[:, ::1] tmp
    while m >= 1:
        stride = length // (2 * s)
        for t in range(t_count):
            for p in range(m):
                for q in range(s):
                    w = base[q * stride]
                    if inverse:
                        w = w.conjugate()
                    lo = x[t, q + s * p]
                    hi = x[t, q + s * (p + m)] * w
                    y[t, q + s * 2 * p] = lo + hi
                    y[t, q + s * (2 * p + 1)] = lo - hi
        tmp = x
        x = y
        y = tmp
        m //= 2
        s *= 2


def tile_fft(tiles, base, bint inverse=False):
    """Transform every row of ``tiles`` (shape (T, L), L a power of two).

    Same contract as the numpy backend: natural-order output, conjugated
    factors on the inverse path, scaling left to the caller.
    """
    tiles = np.ascontiguousarray(tiles)
    t, length = tiles.shape
    if length == 1:
        return tiles.copy()
    steps = length.bit_length() - 1
    a = tiles.copy()
    b = np.empty_like(tiles)
    if tiles.dtype == np.complex64:
        _steps[cfloat_t](a, b, np.ascontiguousarray(base), inverse)
    elif tiles.dtype == np.complex128:
        _steps[cdouble_t](a, b, np.ascontiguousarray(base), inverse)
    else:
        raise TypeError(f"unsupported dtype {tiles.dtype}")
    return a if steps % 2 == 0 else b
