import math

import numpy as np
import pytest
from scipy.linalg import expm

from ringcav.linalg import stability, symplectic_form
from ringcav.model import build_drift
from ringcav.params import PhysicalParams, derive

WM = 2 * math.pi * 1e7

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_params(rng):
    return PhysicalParams(
        P=rng.uniform(0, 50e-3),
        omega_m=WM * rng.uniform(0.5, 2),
        kappa=math.pi * 1e7 * rng.uniform(0.3, 3),
        gamma_m=2 * math.pi * 1e2 * rng.uniform(0.5, 20),
        gamma_a=math.pi * 1e7 * rng.uniform(0.3, 3),
        G_a=math.pi * 1e6 * rng.uniform(0, 20),
        theta=rng.uniform(0, math.pi),
        T=rng.uniform(0, 3e-3),
        r=rng.uniform(0, 1.5),
        phi=rng.uniform(0, 2 * math.pi),
        Delta=WM * rng.uniform(-2, 2),
        Delta_a=WM * rng.uniform(-2, 2),
    )


def random_stable_params(rng, count):
    out = []
    while len(out) < count:
        p = random_params(rng)
        if stability(build_drift(p, derive(p))).stable:
            out.append(p)
    return out


def random_hurwitz(rng, n=8, scale=1.0):
    """Random dense matrix shifted so every eigenvalue has real part <= -0.1*scale."""
    A = rng.normal(size=(n, n)) * scale
    shift = np.linalg.eigvals(A).real.max() + scale * rng.uniform(0.1, 1.0)
    return A - shift * np.eye(n)


def random_psd(rng, n=8):
    B = rng.normal(size=(n, n))
    return B @ B.T


def random_symplectic(rng, n_modes, strength=0.6):
    """exp(Omega H) with H symmetric is symplectic."""
    H = rng.normal(size=(2 * n_modes, 2 * n_modes)) * strength
    return expm(symplectic_form(n_modes) @ (H + H.T) / 2)


def random_physical_cov(rng, n_modes):
    """Williamson form S diag(nu) S^T with nu >= 1/2."""
    nu = 0.5 + rng.exponential(0.5, size=n_modes)
    S = random_symplectic(rng, n_modes)
    return S @ np.diag(np.repeat(nu, 2)) @ S.T, np.sort(nu)


def tmsv(s):
    """Two-mode squeezed vacuum covariance (vacuum variance 1/2)."""
    c, sh = math.cosh(2 * s), math.sinh(2 * s)
    Z = np.diag([1.0, -1.0])
    return 0.5 * np.block([[c * np.eye(2), sh * Z], [sh * Z, c * np.eye(2)]])
