"""Point evaluation and one-dimensional parameter sweeps."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np

from .entanglement import (
    MODES,
    ModePartition,
    check_physical,
    log_negativity_one_vs_two,
    log_negativity_pair,
    tripartite_negativity,
)
from .errors import ParameterError
from .linalg import lyapunov_residual, solve_lyapunov, stability
from .model import build_diffusion, build_drift
from .params import PhysicalParams, derive

AXES = ("T", "r", "P", "Delta_a", "G_a", "Delta", "theta", "phi")
NORMALIZABLE_AXES = ("Delta", "Delta_a")
ZERO_CLIP = 1e-12

PAIR_LABELS = {
    "E_m1_m2": ("m1", "m2"),
    "E_m1_op": ("m1", "op"),
    "E_m2_op": ("m2", "op"),
    "E_m1_a": ("m1", "a"),
    "E_m2_a": ("m2", "a"),
    "E_op_a": ("op", "a"),
}
TRIPLE_LABELS = {
    "T_m1m2a": ("m1", "m2", "a"),
    "T_am1op": ("a", "m1", "op"),
    "T_am2op": ("a", "m2", "op"),
    "T_m1m2op": ("m1", "m2", "op"),
}
DEFAULT_QUANTITIES = tuple(PAIR_LABELS) + tuple(TRIPLE_LABELS)


def _one_vs_two_labels():
    labels = {}
    for triple in TRIPLE_LABELS.values():
        for split in triple:
            rest = "".join(m for m in MODES if m in triple and m != split)
            labels[f"O_{split}|{rest}"] = ModePartition(triple, split)
    return labels


ONE_VS_TWO_LABELS = _one_vs_two_labels()


def quantity_labels():
    return tuple(PAIR_LABELS) + tuple(TRIPLE_LABELS) + tuple(ONE_VS_TWO_LABELS)


def evaluate_quantity(V, label, check=True):
    if label in PAIR_LABELS:
        return log_negativity_pair(V, PAIR_LABELS[label], check=check).value
    if label in TRIPLE_LABELS:
        return tripartite_negativity(V, TRIPLE_LABELS[label], check=check).value
    if label in ONE_VS_TWO_LABELS:
        return log_negativity_one_vs_two(V, ONE_VS_TWO_LABELS[label], check=check).value
    raise ValueError(f"unknown quantity label {label!r}; known: {', '.join(quantity_labels())}")


def clip_zero(x):
    return 0.0 if abs(x) < ZERO_CLIP else x


@dataclass
class PointResult:
    params: PhysicalParams
    stable: bool
    max_real_part: float
    values: dict = field(default_factory=dict)
    covariance: np.ndarray = None
    residual: float = None
    min_symplectic: float = None


def evaluate_point(p: PhysicalParams, quantities=DEFAULT_QUANTITIES) -> PointResult:
    d = derive(p)
    A = build_drift(p, d)
    D = build_diffusion(p, d)
    rep = stability(A)
    if not rep.stable:
        return PointResult(p, False, rep.max_real_part)
    V = solve_lyapunov(A, D, check_stability=False)
    # reduced states of a physical V are physical, so sub-checks are skipped
    nu = check_physical(V)
    values = {q: clip_zero(evaluate_quantity(V, q, check=False)) for q in quantities}
    return PointResult(p, True, rep.max_real_part, values, V, lyapunov_residual(A, V, D), float(nu[0]))


class SweepError(ValueError):
    def __init__(self, axis, value, cause):
        super().__init__(f"sweep failed at {axis} = {value!r}: {cause}")
        self.axis = axis
        self.axis_value = value


@dataclass(frozen=True)
class SweepSpec:
    base: PhysicalParams
    axis: str
    min: float
    max: float
    count: int
    scale: str = "linear"
    quantities: tuple = DEFAULT_QUANTITIES
    normalize_axis: bool = False

    def __post_init__(self):
        object.__setattr__(self, "quantities", tuple(self.quantities))
        if self.axis not in AXES:
            raise ValueError(f"invalid sweep axis {self.axis!r}; expected one of {AXES}")
        if self.normalize_axis and self.axis not in NORMALIZABLE_AXES:
            raise ValueError(f"normalize_axis applies only to {NORMALIZABLE_AXES}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)) or not self.min < self.max:
            raise ValueError(f"need finite min < max, got [{self.min}, {self.max}]")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"count must be an integer >= 2, got {self.count}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and self.min <= 0:
            raise ValueError("log scale needs min > 0")
        for q in self.quantities:
            if q not in PAIR_LABELS and q not in TRIPLE_LABELS and q not in ONE_VS_TWO_LABELS:
                raise ValueError(f"unknown quantity label {q!r}")

    def grid(self):
        n = self.count - 1
        lo, hi = float(self.min), float(self.max)
        if self.scale == "linear":
            pts = [lo * (1 - k / n) + hi * (k / n) for k in range(self.count)]
        else:
            ratio = hi / lo
            pts = [lo * ratio ** (k / n) for k in range(self.count)]
            pts[-1] = hi
        return pts

    def params_at(self, value):
        physical = value * self.base.omega_m if self.normalize_axis else value
        return self.base.replace(**{self.axis: physical})


@dataclass
class SweepRow:
    axis_value: float
    stable: bool
    values: dict = field(default_factory=dict)
    min_symplectic: float = None
    residual: float = None


def _row(spec, x):
    try:
        res = evaluate_point(spec.params_at(x), spec.quantities)
    except ParameterError as exc:
        raise SweepError(spec.axis, x, exc) from exc
    return SweepRow(x, res.stable, res.values, res.min_symplectic, res.residual)


def run_sweep(spec: SweepSpec, workers=1):
    """Evaluate every grid point; unstable points give flagged rows without values."""
    grid = spec.grid()
    if workers <= 1:
        return [_row(spec, x) for x in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda x: _row(spec, x), grid))
