"""Small dense kernels: Hurwitz test, Lyapunov solve, RK4 oracle, symplectic spectrum."""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from ._backend import kernels
from .errors import (
    NonSymmetric,
    OddDimension,
    PairingError,
    SingularSystem,
    StepSizeError,
    UnstableSystem,
)

STAB_RELATIVE = 1e-6
SYMMETRY_RTOL = 1e-10
PAIRING_RTOL = 1e-8
SINGULAR_PIVOT = 64 * np.finfo(float).eps
MAX_DIRECT_STEPS = 200_000


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    max_real_part: float
    eigenvalues: tuple
    margin: float


def _finite_square(M, name):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


def stability(A) -> StabilityReport:
    """Stable iff every eigenvalue has real part below ``-1e-6 * max|A_ij|``."""
    A = _finite_square(A, "drift matrix")
    ev = np.linalg.eigvals(A)
    margin = STAB_RELATIVE * float(np.abs(A).max())
    max_re = float(ev.real.max())
    return StabilityReport(
        stable=max_re < -margin,
        max_real_part=max_re,
        eigenvalues=tuple(complex(z) for z in ev),
        margin=margin,
    )


def symmetrize(V):
    V = np.asarray(V, dtype=float)
    return 0.5 * (V + V.T)


def lyapunov_residual(A, V, D):
    """||A V + V A^T + D||_F / max(||D||_F, 1)."""
    R = A @ V + V @ A.T + D
    return float(np.linalg.norm(R) / max(np.linalg.norm(D), 1.0))


def solve_lyapunov(A, D, *, check_stability=True):
    """Steady-state covariance V solving A V + V A^T = -D.

    The 8x8 problem is vectorized into a 64x64 dense system; the result is
    symmetrized before returning.
    """
    A = _finite_square(A, "drift matrix")
    D = _finite_square(D, "diffusion matrix")
    if A.shape != D.shape:
        raise ValueError(f"shape mismatch: A {A.shape}, D {D.shape}")
    if check_stability:
        rep = stability(A)
        if not rep.stable:
            raise UnstableSystem(f"max Re(eig A) = {rep.max_real_part:.6g} >= -{rep.margin:.3g}")
    V, pivot_ratio = kernels.lyapunov_kron(np.ascontiguousarray(A), np.ascontiguousarray(D))
    if V is None or pivot_ratio < SINGULAR_PIVOT:
        raise SingularSystem(f"Kronecker system is rank-deficient (pivot ratio {pivot_ratio:.3g})")
    return symmetrize(V)


def _rk4_gain(z):
    return 1 + z + z * z / 2 + z**3 / 6 + z**4 / 24


def _rk4_affine_map(A, D, dt):
    """Matrix R and vector c with vec(step(V)) = R vec(V) + c, built from the matrix-form step."""
    n = A.shape[0]
    At = A.T

    def step(V, forcing):
        f = lambda W: A @ W + W @ At + forcing
        k1 = f(V)
        k2 = f(V + 0.5 * dt * k1)
        k3 = f(V + 0.5 * dt * k2)
        k4 = f(V + dt * k3)
        return V + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)

    zero = np.zeros((n, n))
    c = step(zero, D).reshape(-1)
    R = np.empty((n * n, n * n))
    for k in range(n * n):
        E = np.zeros(n * n)
        E[k] = 1.0
        R[:, k] = step(E.reshape(n, n), zero).reshape(-1)
    return R, c


def _compose_steps(R, c, nsteps):
    """Exact composition of ``nsteps`` applications of v -> R v + c by repeated squaring."""
    Rt, ct = np.eye(R.shape[0]), np.zeros_like(c)
    Rb, cb = R, c
    while nsteps:
        if nsteps & 1:
            Rt, ct = Rb @ Rt, Rb @ ct + cb
        Rb, cb = Rb @ Rb, Rb @ cb + cb
        nsteps >>= 1
    return Rt, ct


def integrate_oracle(A, D, t_end=None, dt=None, V0=None):
    """Integrate dV/dt = A V + V A^T + D with classical RK4 from V(0) = I/2.

    Test oracle only. Defaults: ``dt = 0.1 / max|eig A|`` and
    ``t_end = 20 / |max Re eig A|``. Short runs step directly; runs longer
    than ``MAX_DIRECT_STEPS`` compose the (affine) RK4 step map by repeated
    squaring, which applies the identical step count.
    """
    A = _finite_square(A, "drift matrix")
    D = _finite_square(D, "diffusion matrix")
    n = A.shape[0]
    rep = stability(A)
    if not rep.stable:
        raise UnstableSystem(f"max Re(eig A) = {rep.max_real_part:.6g}")
    ev = np.asarray(rep.eigenvalues)
    if dt is None:
        dt = 0.1 / float(np.abs(ev).max())
    if t_end is None:
        t_end = 20.0 / abs(rep.max_real_part)
    if dt <= 0 or t_end <= 0:
        raise ValueError("dt and t_end must be positive")
    nsteps = max(1, math.ceil(t_end / dt - 1e-9))
    h = t_end / nsteps
    # RK4 is stable on the Lyapunov operator iff |gain| < 1 on every lambda_i + lambda_j
    pair_sums = (ev[:, None] + ev[None, :]).ravel()
    if np.abs(_rk4_gain(h * pair_sums)).max() >= 1.0:
        raise StepSizeError(f"dt = {h:.3g} s exceeds the RK4 stability region")
    V0 = 0.5 * np.eye(n) if V0 is None else np.array(V0, dtype=float)

    if nsteps <= MAX_DIRECT_STEPS:
        limit = 1e12 * (1.0 + np.abs(V0).max() + np.abs(D).max() * t_end)
        V, diverged = kernels.rk4_lyapunov(
            np.ascontiguousarray(A), np.ascontiguousarray(D), np.ascontiguousarray(V0), h, nsteps, limit
        )
        if diverged:
            raise StepSizeError(f"RK4 diverged with dt = {h:.3g} s")
    else:
        R, c = _rk4_affine_map(A, D, h)
        Rt, ct = _compose_steps(R, c, nsteps)
        V = (Rt @ V0.reshape(-1) + ct).reshape(n, n)
        if not np.all(np.isfinite(V)):
            raise StepSizeError(f"RK4 diverged with dt = {h:.3g} s")
    return symmetrize(V)


@lru_cache(maxsize=16)
def symplectic_form(n_modes):
    omega = np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    omega.flags.writeable = False
    return omega


def symplectic_eigenvalues(V):
    """Symplectic spectrum of a 2n x 2n covariance matrix, ascending.

    Moduli of the eigenvalues of i*Omega*V, which come in +/- pairs; the
    pairs are matched after sorting and a mismatch raises PairingError.
    """
    V = np.asarray(V, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ValueError(f"covariance matrix must be square, got shape {V.shape}")
    dim = V.shape[0]
    if dim % 2:
        raise OddDimension(f"covariance matrix dimension {dim} is odd")
    scale = max(float(np.abs(V).max()), np.finfo(float).tiny)
    if np.abs(V - V.T).max() > SYMMETRY_RTOL * scale:
        raise NonSymmetric("covariance matrix is not symmetric")
    V = symmetrize(V)
    mods = np.sort(np.abs(np.linalg.eigvals(symplectic_form(dim // 2) @ V)))
    lo, hi = mods[0::2], mods[1::2]
    if np.any(np.abs(hi - lo) > PAIRING_RTOL * np.maximum(hi, scale * 1e-12)):
        raise PairingError(f"unpaired symplectic spectrum {mods}")
    return 0.5 * (lo + hi)
