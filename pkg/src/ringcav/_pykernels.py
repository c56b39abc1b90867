"""Pure-Python (numpy/scipy) kernels; used when the compiled module is unavailable."""

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve


def lyapunov_kron(A, D):
    n = A.shape[0]
    eye = np.eye(n)
    # row-major vec: vec(AV) = (A kron I) vec V, vec(V A^T) = (I kron A) vec V
    M = np.kron(A, eye) + np.kron(eye, A)
    big = np.abs(M).max()
    if big == 0.0:
        return np.zeros((n, n)), 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(M, check_finite=False)
    min_piv = np.abs(np.diag(lu)).min()
    if min_piv == 0.0:
        return None, 0.0
    v = lu_solve((lu, piv), -D.reshape(-1), check_finite=False)
    return v.reshape(n, n), min_piv / big


def rk4_lyapunov(A, D, V0, dt, nsteps, norm_limit):
    V = np.array(V0, dtype=float, copy=True)
    At = A.T

    def rhs(W):
        return A @ W + W @ At + D

    for _ in range(nsteps):
        k1 = rhs(V)
        k2 = rhs(V + 0.5 * dt * k1)
        k3 = rhs(V + 0.5 * dt * k2)
        k4 = rhs(V + dt * k3)
        V += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(V)) or np.abs(V).max() > norm_limit:
            return V, True
    return V, False
