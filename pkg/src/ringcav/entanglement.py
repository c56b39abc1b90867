"""Logarithmic negativity between modes of the 8x8 steady-state covariance matrix."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import UnphysicalState
from .linalg import symplectic_eigenvalues

MODES = ("m1", "m2", "op", "a")
MODE_INDEX = {name: 2 * k for k, name in enumerate(MODES)}
PHYSICAL_TOL = 1e-9
# one-vs-two factors below this are roundoff; the cube root would amplify them
FACTOR_ZERO = 1e-12


@dataclass(frozen=True)
class ModePartition:
    """Ordered subset of modes; ``split`` names the partially transposed mode.

    For three modes, ``split=None`` means the tripartite measure over all
    three one-vs-two cuts.
    """

    modes: tuple
    split: str = None

    def __post_init__(self):
        modes = tuple(self.modes)
        object.__setattr__(self, "modes", modes)
        if len(modes) not in (2, 3):
            raise ValueError(f"need 2 or 3 modes, got {modes}")
        unknown = [m for m in modes if m not in MODE_INDEX]
        if unknown:
            raise ValueError(f"unknown mode(s) {unknown}; expected a subset of {MODES}")
        if len(set(modes)) != len(modes):
            raise ValueError(f"modes must be distinct, got {modes}")
        if self.split is not None and self.split not in modes:
            raise ValueError(f"split mode {self.split!r} not among {modes}")

    @property
    def indices(self):
        return [i for m in self.modes for i in (MODE_INDEX[m], MODE_INDEX[m] + 1)]

    def with_split(self, mode):
        return ModePartition(self.modes, mode)


@dataclass(frozen=True)
class EntanglementResult:
    value: float
    eta: float
    partition: ModePartition
    components: tuple = ()


def _partition(spec):
    return spec if isinstance(spec, ModePartition) else ModePartition(tuple(spec))


def extract_submatrix(V, part):
    part = _partition(part)
    V = np.asarray(V, dtype=float)
    if V.shape != (8, 8):
        raise ValueError(f"expected the full 8x8 covariance matrix, got {V.shape}")
    idx = part.indices
    return V[np.ix_(idx, idx)]


def _reduced(V, part):
    V = np.asarray(V, dtype=float)
    dim = 2 * len(part.modes)
    if V.shape == (dim, dim):
        return V
    return extract_submatrix(V, part)


def partial_transpose(Vs, mode_position):
    """Flip the momentum quadrature of the mode at ``mode_position``."""
    signs = np.ones(Vs.shape[0])
    signs[2 * mode_position + 1] = -1.0
    return Vs * np.outer(signs, signs)


def check_physical(Vs, tol=PHYSICAL_TOL):
    nu = symplectic_eigenvalues(Vs)
    if nu[0] < 0.5 - tol:
        raise UnphysicalState(f"smallest symplectic eigenvalue {nu[0]:.12g} < 1/2")
    return nu


def negativity(eta):
    """max(0, -ln 2 eta), natural log."""
    return max(0.0, -math.log(2.0 * eta))


def pt_eta(Vs, mode_position=0):
    """Smallest symplectic eigenvalue of the partially transposed covariance matrix."""
    return float(symplectic_eigenvalues(partial_transpose(np.asarray(Vs, dtype=float), mode_position))[0])


def closed_form_eta(Vs):
    """Two-mode PPT eigenvalue from block determinants (independent of any eigensolver)."""
    Vs = np.asarray(Vs, dtype=float)
    a, b, c = Vs[:2, :2], Vs[2:, 2:], Vs[:2, 2:]
    sigma = np.linalg.det(a) + np.linalg.det(b) - 2.0 * np.linalg.det(c)
    disc = max(sigma * sigma - 4.0 * np.linalg.det(Vs), 0.0)
    return math.sqrt(max(sigma - math.sqrt(disc), 0.0) / 2.0)


def log_negativity_pair(V, pair, *, check=True) -> EntanglementResult:
    """E_N between two modes.

    ``V`` is either the full 8x8 matrix (the pair's rows/columns are
    extracted) or an already reduced 4x4 matrix. ``check=False`` skips the
    uncertainty-principle test when the caller has already validated ``V``.
    """
    pair = _partition(pair)
    if len(pair.modes) != 2:
        raise ValueError(f"a pair needs exactly two modes, got {pair.modes}")
    Vs = _reduced(V, pair)
    if check:
        check_physical(Vs)
    eta = pt_eta(Vs, 0)
    return EntanglementResult(negativity(eta), eta, pair)


def log_negativity_one_vs_two(V, triple, *, check=True) -> EntanglementResult:
    triple = _partition(triple)
    if len(triple.modes) != 3 or triple.split is None:
        raise ValueError("need three modes and a designated transposed mode")
    Vs = _reduced(V, triple)
    if check:
        check_physical(Vs)
    eta = pt_eta(Vs, triple.modes.index(triple.split))
    return EntanglementResult(negativity(eta), eta, triple)


def tripartite_negativity(V, triple, *, check=True) -> EntanglementResult:
    """Geometric mean of the three one-vs-two negativities; 0 if any cut is separable."""
    triple = _partition(triple)
    if len(triple.modes) != 3:
        raise ValueError(f"need three modes, got {triple.modes}")
    Vs = _reduced(V, triple)
    if check:
        check_physical(Vs)
    etas = [pt_eta(Vs, k) for k in range(3)]
    parts = tuple(0.0 if (x := negativity(e)) < FACTOR_ZERO else x for e in etas)
    value = 0.0 if min(parts) == 0.0 else (parts[0] * parts[1] * parts[2]) ** (1.0 / 3.0)
    return EntanglementResult(value, min(etas), ModePartition(triple.modes), parts)
