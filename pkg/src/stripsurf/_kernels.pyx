# cython: boundscheck=False, wraparound=False
"""Compiled evaluator kernels.

Must mirror `stripsurf._kernels_py` operation for operation: the two
backends are required to agree bit for bit on float64 inputs.
"""

import array as _array

from cpython cimport array
from libc.math cimport fabs, rint, sqrt

BACKEND = "cython"

RAW, BANDED, CHAIN = 0, 1, 2


cpdef double sigma(double t):
    return t / sqrt(t * t + 1.0)


cpdef double sigma_prime(double t):
    cdef double u = t * t + 1.0
    return 1.0 / (u * sqrt(u))


cpdef double merge_raw_x(double x, double y):
    cdef double ay = fabs(y)
    cdef double k
    if ay == 0.0:
        return sigma(x)
    k = 1.0 / ay
    if x <= -k:
        return sigma_prime(k) * (x + k) - sigma(k)
    if x >= k:
        return sigma_prime(k) * (x - k) + sigma(k)
    return sigma(x)


cpdef double merge_banded_x(double x, double y):
    cdef double ay = fabs(y)
    cdef double rho
    if ay >= 0.5:
        return x
    rho = 2.0 * ay
    return rho * x + (1.0 - rho) * merge_raw_x(x, y)


cpdef double chain_x(double x, double y):
    # rint rounds half to even under the default FP environment,
    # matching Python's round() in the pure backend
    cdef double n = 2.0 * rint(y * 0.5)
    if fabs(y - n) >= 0.5:
        return x
    return merge_banded_x(x, y - n)


def sample_rows(int kind, xs, ys):
    """Row-major x' values of the selected map over the xs/ys grid."""
    cdef array.array xa = _array.array("d", xs)
    cdef array.array ya = _array.array("d", ys)
    cdef Py_ssize_t nx = len(xa)
    cdef Py_ssize_t ny = len(ya)
    cdef array.array out = _array.array("d", bytes(8 * nx * ny))
    cdef double[::1] xv = xa
    cdef double[::1] yv = ya
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, idx = 0
    cdef double y
    for j in range(ny):
        y = yv[j]
        if kind == RAW:
            for i in range(nx):
                ov[idx] = merge_raw_x(xv[i], y)
                idx += 1
        elif kind == BANDED:
            for i in range(nx):
                ov[idx] = merge_banded_x(xv[i], y)
                idx += 1
        else:
            for i in range(nx):
                ov[idx] = chain_x(xv[i], y)
                idx += 1
    return out
