"""Linearized fluctuation dynamics in the quadrature basis.

Index ordering is (q1, p1, q2, p2, X, Y, x, y): two mirrors, the cavity
field, the atomic ensemble.
"""

from dataclasses import dataclass

import numpy as np

from .params import DerivedParams, PhysicalParams, derive

Q1, P1, Q2, P2, X, Y, XA, YA = range(8)

# (row, col) of every entry the linearized equations can populate
DRIFT_PATTERN = frozenset(
    [
        (Q1, P1), (P1, Q1), (P1, P1), (P1, X),
        (Q2, P2), (P2, Q2), (P2, P2), (P2, X),
        (X, X), (X, Y), (X, YA),
        (Y, Q1), (Y, Q2), (Y, X), (Y, Y), (Y, XA),
        (XA, Y), (XA, XA), (XA, YA),
        (YA, X), (YA, XA), (YA, YA),
    ]
)
DIFFUSION_PATTERN = frozenset([(P1, P1), (P2, P2), (X, X), (X, Y), (Y, X), (Y, Y), (XA, XA), (YA, YA)])


def _resolve(p, d):
    return derive(p) if d is None else d


def build_drift(p: PhysicalParams, d: DerivedParams = None) -> np.ndarray:
    d = _resolve(p, d)
    wm, gm, g = p.omega_m, p.gamma_m, d.g_eff
    A = np.zeros((8, 8))
    A[Q1, P1] = wm
    A[P1, Q1], A[P1, P1], A[P1, X] = -wm, -gm, -g
    A[Q2, P2] = wm
    A[P2, Q2], A[P2, P2], A[P2, X] = -wm, -gm, g
    A[X, X], A[X, Y], A[X, YA] = -p.kappa, p.Delta, p.G_a
    A[Y, Q1], A[Y, Q2] = -g, g
    A[Y, X], A[Y, Y], A[Y, XA] = -p.Delta, -p.kappa, -p.G_a
    A[XA, Y], A[XA, XA], A[XA, YA] = p.G_a, -p.gamma_a, p.Delta_a
    A[YA, X], A[YA, XA], A[YA, YA] = -p.G_a, -p.Delta_a, -p.gamma_a
    return A


def build_diffusion(p: PhysicalParams, d: DerivedParams = None) -> np.ndarray:
    """Noise correlation matrix for the rotating-frame squeezed, thermal and vacuum baths."""
    d = _resolve(p, d)
    mech = p.gamma_m * (2 * d.n_th + 1)
    k2 = 2 * p.kappa
    D = np.zeros((8, 8))
    D[P1, P1] = D[P2, P2] = mech
    D[X, X] = k2 * (d.M.real + d.N + 0.5)
    D[Y, Y] = k2 * (-d.M.real + d.N + 0.5)
    D[X, Y] = D[Y, X] = k2 * d.M.imag
    D[XA, XA] = D[YA, YA] = p.gamma_a
    return D


@dataclass(frozen=True)
class SteadyStateReport:
    q1: float
    q2: float
    p1: float
    p2: float
    c: complex
    a: complex


def steady_state(p: PhysicalParams, d: DerivedParams = None) -> SteadyStateReport:
    d = _resolve(p, d)
    shift = d.G0 * d.cos2 * abs(d.a_s) ** 2 / p.omega_m
    c_s = -1j * p.G_a * d.a_s / (p.gamma_a + 1j * p.Delta_a)
    return SteadyStateReport(q1=-shift, q2=shift, p1=0.0, p2=0.0, c=complex(c_s), a=d.a_s)
