import math

from hypothesis import given, strategies as st
import pytest

from ringcav.errors import ParameterError
from ringcav.params import PhysicalParams, derive, thermal_occupancy

WM = 2 * math.pi * 1e7

# mpmath at 30 digits, CODATA constants
NTH_1E4_K = 0.00830437338886198612
G0_REF = 725.282317718593730
EL_REF = 2426841463692.33480


def test_zero_temperature_limit():
    assert derive(PhysicalParams(T=0.0)).n_th == 0.0
    assert thermal_occupancy(3 * WM, 0.0) == 0.0


def test_no_squeezing():
    d = derive(PhysicalParams(r=0.0, phi=1.3))
    assert d.N == 0.0 and d.M == 0.0


def test_thermal_occupancy_value():
    n = derive(PhysicalParams(omega_m=WM, T=1e-4)).n_th
    assert n == pytest.approx(8.3e-3, rel=0.01)
    assert n == pytest.approx(NTH_1E4_K, rel=1e-12)


def test_single_photon_coupling():
    d = derive(PhysicalParams(lambda_=1064e-9, L=1e-3, m=10e-12, omega_m=WM))
    assert d.G0 == pytest.approx(7.25e2, rel=0.01)
    assert d.G0 == pytest.approx(G0_REF, rel=1e-12)


def test_drive_amplitude():
    d = derive(PhysicalParams(P=35e-3, kappa=math.pi * 1e7, lambda_=1064e-9))
    assert d.E_L == pytest.approx(2.43e12, rel=0.01)
    assert d.E_L == pytest.approx(EL_REF, rel=1e-12)


def test_grazing_geometry_is_exactly_uncoupled():
    assert derive(PhysicalParams(theta=math.pi)).cos2 == 0.0
    assert derive(PhysicalParams(theta=math.pi / 3)).cos2 == pytest.approx(0.75, abs=1e-15)


@pytest.mark.parametrize(
    "field, value",
    [("T", -1.0), ("P", -1e-3), ("m", 0.0), ("kappa", -1.0), ("theta", 4.0), ("r", -0.1),
     ("T", float("nan")), ("Delta", float("inf")), ("G_a", -2.0)],
)
def test_invalid_inputs_rejected(field, value):
    with pytest.raises(ParameterError) as info:
        PhysicalParams(**{field: value})
    assert info.value.name == field


@given(st.floats(0, 5), st.floats(-10, 10))
def test_squeezing_moments_identity(r, phi):
    d = derive(PhysicalParams(r=r, phi=phi))
    assert abs(d.M) ** 2 == pytest.approx(d.N * (d.N + 1), rel=1e-12, abs=1e-300)


@given(st.floats(0, 0.1), st.floats(-3, 3), st.floats(0.1, 5))
def test_amplitude_without_atoms(P, delta_ratio, kappa_ratio):
    p = PhysicalParams(P=P, G_a=0.0, Delta=delta_ratio * WM, kappa=kappa_ratio * 1e7)
    d = derive(p)
    expected = d.E_L / complex(p.kappa, p.Delta)
    assert abs(d.a_s - expected) <= 1e-12 * abs(expected) + 1e-300


def test_derive_is_pure():
    p = PhysicalParams(T=2e-4, r=0.4, phi=0.3)
    assert derive(p) == derive(PhysicalParams(T=2e-4, r=0.4, phi=0.3))


def test_derived_nonnegative():
    d = derive(PhysicalParams(P=0.0))
    assert d.E_L == 0.0 and d.G == 0.0 and d.a_s == 0
