# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot loops in :mod:`ringcav._pykernels`.

Both modules expose the same two functions with identical return contracts.
"""

import numpy as np
from libc.math cimport fabs, isfinite


def lyapunov_kron(double[:, ::1] A, double[:, ::1] D):
    """Solve A V + V A^T = -D through the n^2 x n^2 Kronecker system.

    Returns ``(V, pivot_ratio)`` where ``pivot_ratio`` is the smallest
    partial-pivoting pivot divided by the largest system entry.
    """
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t N = n * n
    cdef Py_ssize_t i, j, k, row, col, piv
    cdef double big, val, factor, tmp, min_piv
    M_arr = np.zeros((N, N))
    b_arr = np.empty(N)
    cdef double[:, ::1] M = M_arr
    cdef double[::1] b = b_arr

    # row-major vec: vec(AV) = (A kron I) vec V, vec(V A^T) = (I kron A) vec V
    for i in range(n):
        for j in range(n):
            row = i * n + j
            b[row] = -D[i, j]
            for k in range(n):
                M[row, k * n + j] += A[i, k]
                M[row, i * n + k] += A[j, k]

    big = 0.0
    for i in range(N):
        for j in range(N):
            if fabs(M[i, j]) > big:
                big = fabs(M[i, j])
    if big == 0.0:
        return np.zeros((n, n)), 0.0

    min_piv = big
    for col in range(N):
        piv = col
        val = fabs(M[col, col])
        for i in range(col + 1, N):
            if fabs(M[i, col]) > val:
                val = fabs(M[i, col])
                piv = i
        if val < min_piv:
            min_piv = val
        if val == 0.0:
            return None, 0.0
        if piv != col:
            for j in range(col, N):
                tmp = M[col, j]
                M[col, j] = M[piv, j]
                M[piv, j] = tmp
            tmp = b[col]
            b[col] = b[piv]
            b[piv] = tmp
        for i in range(col + 1, N):
            factor = M[i, col] / M[col, col]
            if factor != 0.0:
                for j in range(col + 1, N):
                    M[i, j] -= factor * M[col, j]
                b[i] -= factor * b[col]

    for i in range(N - 1, -1, -1):
        tmp = b[i]
        for j in range(i + 1, N):
            tmp -= M[i, j] * b[j]
        b[i] = tmp / M[i, i]

    return b_arr.reshape(n, n).copy(), min_piv / big


cdef void _rhs(double[:, ::1] A, double[:, ::1] D, double[:, ::1] V,
               double[:, ::1] out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double s
    for i in range(n):
        for j in range(n):
            s = D[i, j]
            for k in range(n):
                s += A[i, k] * V[k, j] + V[i, k] * A[j, k]
            out[i, j] = s


def rk4_lyapunov(double[:, ::1] A, double[:, ::1] D, double[:, ::1] V0,
                 double dt, long nsteps, double norm_limit):
    """Classical RK4 on dV/dt = A V + V A^T + D for ``nsteps`` steps.

    Returns ``(V, diverged)``; integration stops early once any entry is
    non-finite or exceeds ``norm_limit`` in magnitude.
    """
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t i, j
    cdef long step
    cdef double h2 = 0.5 * dt, h6 = dt / 6.0
    cdef bint diverged = False
    V_arr = np.array(V0, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] V = V_arr
    cdef double[:, ::1] W = np.empty((n, n))
    cdef double[:, ::1] k1 = np.empty((n, n))
    cdef double[:, ::1] k2 = np.empty((n, n))
    cdef double[:, ::1] k3 = np.empty((n, n))
    cdef double[:, ::1] k4 = np.empty((n, n))

    with nogil:
        for step in range(nsteps):
            _rhs(A, D, V, k1, n)
            for i in range(n):
                for j in range(n):
                    W[i, j] = V[i, j] + h2 * k1[i, j]
            _rhs(A, D, W, k2, n)
            for i in range(n):
                for j in range(n):
                    W[i, j] = V[i, j] + h2 * k2[i, j]
            _rhs(A, D, W, k3, n)
            for i in range(n):
                for j in range(n):
                    W[i, j] = V[i, j] + dt * k3[i, j]
            _rhs(A, D, W, k4, n)
            for i in range(n):
                for j in range(n):
                    V[i, j] += h6 * (k1[i, j] + 2.0 * k2[i, j] + 2.0 * k3[i, j] + k4[i, j])
                    if not isfinite(V[i, j]) or fabs(V[i, j]) > norm_limit:
                        diverged = True
            if diverged:
                break
    return V_arr, bool(diverged)
