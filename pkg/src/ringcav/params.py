"""Physical inputs of the ring-cavity system and the quantities derived from them.

All fields are SI. Frequencies, detunings and rates are angular (rad/s).
"""

from dataclasses import dataclass, fields, replace
import math

from .errors import ParameterError

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K
C_LIGHT = 2.99792458e8  # m / s


@dataclass(frozen=True)
class PhysicalParams:
    P: float = 35e-3
    lambda_: float = 1064e-9
    m: float = 10e-12
    omega_m: float = 2 * math.pi * 1e7
    kappa: float = math.pi * 1e7
    gamma_m: float = 2 * math.pi * 1e2
    gamma_a: float = math.pi * 1e7
    G_a: float = 12 * math.pi * 1e6
    theta: float = math.pi / 3
    L: float = 1e-3
    T: float = 1e-6
    r: float = 0.0
    phi: float = 0.0
    Delta: float = 2 * math.pi * 1e7
    Delta_a: float = -2 * math.pi * 1e7

    def __post_init__(self):
        validate(self)

    def replace(self, **changes):
        return replace(self, **changes)


_POSITIVE = ("lambda_", "m", "omega_m", "kappa", "gamma_m", "gamma_a", "L")
_NONNEGATIVE = ("P", "T", "r", "G_a")


def validate(p):
    for f in fields(p):
        value = getattr(p, f.name)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ParameterError(f.name, f"expected a real number, got {value!r}")
        if not math.isfinite(value):
            raise ParameterError(f.name, f"must be finite, got {value!r}")
    for name in _POSITIVE:
        if getattr(p, name) <= 0:
            raise ParameterError(name, f"must be > 0, got {getattr(p, name)!r}")
    for name in _NONNEGATIVE:
        if getattr(p, name) < 0:
            raise ParameterError(name, f"must be >= 0, got {getattr(p, name)!r}")
    # theta = pi is accepted as the grazing limit where the coupling vanishes.
    if not 0 <= p.theta <= math.pi:
        raise ParameterError("theta", f"must lie in [0, pi], got {p.theta!r}")


@dataclass(frozen=True)
class DerivedParams:
    omega_L: float
    omega_r: float
    E_L: float
    G0: float
    cos2: float
    a_s: complex
    G: float
    n_th: float
    N: float
    M: complex

    @property
    def g_eff(self):
        """Linearized optomechanical coupling G cos^2(theta/2)."""
        return self.G * self.cos2


def thermal_occupancy(omega, T):
    """Bose-Einstein occupancy; exactly 0 at T = 0."""
    if T < 0:
        raise ParameterError("T", f"must be >= 0, got {T!r}")
    if T == 0:
        return 0.0
    x = HBAR * omega / (K_B * T)
    if x > 700:
        return 0.0
    return 1.0 / math.expm1(x)


def derive(p: PhysicalParams) -> DerivedParams:
    validate(p)
    omega_L = 2 * math.pi * C_LIGHT / p.lambda_
    omega_r = omega_L
    E_L = math.sqrt(p.kappa * p.P / (HBAR * omega_L))
    G0 = (omega_r / p.L) * math.sqrt(HBAR / (p.m * p.omega_m))
    # (1 + cos)/2 is exactly 0 at theta = pi, unlike cos(pi/2)**2
    cos2 = 0.5 * (1.0 + math.cos(p.theta))
    a_s = E_L / (p.kappa + 1j * p.Delta + p.G_a**2 / (p.gamma_a + 1j * p.Delta_a))
    G = math.sqrt(2) * G0 * abs(a_s)
    sh, ch = math.sinh(p.r), math.cosh(p.r)
    return DerivedParams(
        omega_L=omega_L,
        omega_r=omega_r,
        E_L=E_L,
        G0=G0,
        cos2=cos2,
        a_s=complex(a_s),
        G=G,
        n_th=thermal_occupancy(p.omega_m, p.T),
        N=sh * sh,
        M=complex(sh * ch * math.cos(p.phi), sh * ch * math.sin(p.phi)),
    )
