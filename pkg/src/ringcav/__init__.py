"""Steady-state bipartite and tripartite entanglement in a ring-cavity
atom-optomechanical system (two movable mirrors, cavity field, atomic ensemble)."""

from ._backend import NAME as backend
from .entanglement import (
    ModePartition,
    EntanglementResult,
    extract_submatrix,
    log_negativity_one_vs_two,
    log_negativity_pair,
    tripartite_negativity,
)
from .linalg import integrate_oracle, solve_lyapunov, stability, symplectic_eigenvalues
from .model import build_diffusion, build_drift, steady_state
from .params import DerivedParams, PhysicalParams, derive

__version__ = "0.1.0"
