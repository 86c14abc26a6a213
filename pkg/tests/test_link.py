import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holoirs import (
    ETA_0,
    DiscreteSurfaceSpec,
    DomainError,
    ElementPattern,
    LinkBudget,
    PhaseProfile,
    SpaceFactorParams,
    SphericalPoint,
    SurfaceSpec,
    TransmitSource,
    baseband_gain,
    beamfocusing_profile,
    discrete_power_gain,
    from_db,
    incident_field_magnitude,
    pathloss_antenna,
    pathloss_direct,
    pathloss_plate,
    received_snr,
    scattered_field_sq,
    space_factor_oracle,
    space_factor_params,
    to_db,
    two_user_interference,
)
from holoirs.link import DEFAULT_BASE_STATION

from conftest import K, LAM

TX = SphericalPoint.from_degrees(2.0, 45.0, 36.0)
RX = SphericalPoint.from_degrees(2.0, 45.0, 30.0)
LB = LinkBudget(P_t=1.0, G_t=100.0, G_r=1.0, f=300e9)
LB0 = LinkBudget(P_t=1.0, G_t=100.0, G_r=1.0, f=300e9, kappa_abs=0.0)


def test_link_budget_validation():
    with pytest.raises(DomainError):
        LinkBudget(P_t=0.0, G_t=1, G_r=1, f=1e9)
    with pytest.raises(DomainError):
        LinkBudget(P_t=1.0, G_t=1, G_r=1, f=1e9, kappa_abs=-1.0)
    assert LB.kappa_abs == 0.0033
    assert LB.k == pytest.approx(K, rel=1e-15)


def test_db_round_trip():
    x = np.logspace(-20, 10, 301)
    assert np.allclose(from_db(to_db(x)), x, rtol=1e-12, atol=0)
    assert from_db(20.0) == pytest.approx(100.0, rel=1e-15)


def test_scattered_field_unit_space_factor(surface_200):
    src = TransmitSource(TX, 1.0, 100.0)
    prof = beamfocusing_profile(TX, RX)
    e2 = scattered_field_sq(src, RX, surface_200, prof, LAM, incident_magnitude=1.0)
    plate = (surface_200.area / LAM) ** 2 / RX.r**2 * math.cos(TX.phi) ** 2 * math.sin(RX.theta) ** 2
    assert e2 == pytest.approx(plate, rel=1e-14)
    e2_src = scattered_field_sq(src, RX, surface_200, prof, LAM)
    assert e2_src == pytest.approx(plate * incident_field_magnitude(src, ETA_0) ** 2, rel=1e-14)


def test_scattered_field_area_law():
    src = TransmitSource(TX, 1.0, 1.0)
    prof = beamfocusing_profile(TX, RX)
    small = scattered_field_sq(src, RX, SurfaceSpec(100 * LAM, 100 * LAM), prof, LAM)
    big = scattered_field_sq(src, RX, SurfaceSpec(200 * LAM, 200 * LAM), prof, LAM)
    assert big / small == pytest.approx(16.0, rel=1e-13)


def test_scattered_field_warns_in_reactive_zone():
    src = TransmitSource(TX, 1.0, 1.0)
    near = SphericalPoint.from_degrees(0.5, 45.0, 30.0)
    with pytest.warns(UserWarning, match="reactive near field"):
        scattered_field_sq(src, near, SurfaceSpec(200 * LAM, 200 * LAM), PhaseProfile(), LAM)


def test_plate_pathloss_perfect_focus_no_absorption(surface_200):
    bar, pl = pathloss_plate(TX, RX, surface_200, LB0, beamfocusing_profile(TX, RX))
    expected = 100.0 * (surface_200.area / (4 * math.pi)) ** 2 * math.cos(TX.phi) ** 2 * math.sin(RX.theta) ** 2 / 16
    assert pl == pytest.approx(expected, rel=1e-14)
    assert bar == pytest.approx(pl, rel=1e-14)


def test_plate_pathloss_distance_law():
    s = SurfaceSpec(0.1, 0.1)
    prof = PhaseProfile()
    _, near = pathloss_plate(TX, RX, s, LB, prof)
    tx2 = SphericalPoint(2 * TX.r, TX.theta, TX.phi)
    rx2 = SphericalPoint(2 * RX.r, RX.theta, RX.phi)
    _, far = pathloss_plate(tx2, rx2, s, LB, prof)
    absorption_db = 10 * math.log10(math.e) * LB.kappa_abs * (TX.r + RX.r)
    assert to_db(near) - to_db(far) == pytest.approx(20 * math.log10(4) + absorption_db, rel=1e-12)


points = st.builds(
    SphericalPoint, st.floats(0.5, 30.0), st.floats(0.05, math.pi - 0.05), st.floats(-1.5, 1.5),
)


@given(points, points, st.floats(10, 300), st.floats(-3, 3), st.floats(-0.5, 0.5))
def test_plate_pathloss_factorisation_and_bound(tx, rx, L_lambda, c1, c2):
    s = SurfaceSpec(L_lambda * LAM, L_lambda * LAM)
    prof = PhaseProfile(c1, c2, c1, -c2)
    bar, pl = pathloss_plate(tx, rx, s, LB, prof)
    from holoirs import space_factor_holographic
    S2 = abs(space_factor_holographic(space_factor_params(tx, rx, prof), s, LB.k)) ** 2
    assert bar == pytest.approx(pl * S2, rel=1e-12, abs=0)
    assert bar <= pl
    assert bar <= LB.G_t * LB.G_r * (s.area / (4 * math.pi)) ** 2 / (tx.r**2 * rx.r**2) * (1 + 1e-12)


def test_plate_pathloss_with_oracle_space_factor():
    s = SurfaceSpec(100 * LAM, 100 * LAM)
    rx = SphericalPoint.from_degrees(5.0, 60.0, 20.0)
    prof = beamfocusing_profile(TX, SphericalPoint.from_degrees(6.0, 60.0, 21.0))
    bar, pl = pathloss_plate(TX, rx, s, LB, prof)
    bar_oracle = pl * abs(space_factor_oracle(TX, rx, prof, s, LB.k)) ** 2
    assert bar == pytest.approx(bar_oracle, rel=1e-6)


def test_element_pattern():
    ep = ElementPattern()
    assert (ep.gamma, ep.q) == (math.pi, 0.285)
    assert ep.gain(0.0) == pytest.approx(math.pi)
    assert ep.gain(math.radians(60)) == pytest.approx(math.pi * 0.5**0.57, rel=1e-14)
    assert ep.gain(2.0) == 0.0
    iso = ElementPattern(q=0.0)
    assert iso.gain(1.3) == iso.gain(0.0) == math.pi
    with pytest.raises(DomainError):
        ElementPattern(gamma=0.0)


def test_antenna_pathloss_formula():
    ep = ElementPattern()
    pl = pathloss_antenna(TX, RX, ep, LB)
    expected = (
        100.0 * (LAM / (4 * math.pi)) ** 4 * ep.gain(TX.theta) * ep.gain(RX.theta) / (TX.r**2 * RX.r**2)
        * math.exp(-0.0033 * (TX.r + RX.r))
    )
    assert pl == pytest.approx(expected, rel=1e-14)
    normal = pathloss_antenna(TX, RX, ep, LB, element_angle="normal")
    th_t = math.acos(math.sin(TX.theta) * math.cos(TX.phi))
    th_r = math.acos(math.sin(RX.theta) * math.cos(RX.phi))
    assert normal == pytest.approx(expected / ep.gain(TX.theta) / ep.gain(RX.theta) * ep.gain(th_t) * ep.gain(th_r))
    with pytest.raises(DomainError):
        pathloss_antenna(TX, RX, ep, LB, element_angle="other")


def test_direct_pathloss():
    lb = LinkBudget(P_t=1.0, G_t=1.0, G_r=1.0, f=300e9)
    pl10 = pathloss_direct(10.0, lb)
    assert pl10 == pytest.approx(LAM**2 / (4 * math.pi * 10) ** 2 * math.exp(-0.033), rel=1e-14)
    assert to_db(pl10) == pytest.approx(-102.0, abs=0.5)
    lb0 = LinkBudget(P_t=1.0, G_t=1.0, G_r=1.0, f=300e9, kappa_abs=0.0)
    assert to_db(pathloss_direct(1.0, lb0)) - to_db(pathloss_direct(2.0, lb0)) == pytest.approx(20 * math.log10(2))
    lb_k = LinkBudget(P_t=1.0, G_t=1.0, G_r=1.0, f=300e9, kappa_abs=0.5)
    r = 1 / lb_k.kappa_abs
    assert pathloss_direct(r, lb_k) / pathloss_direct(r, lb0) == pytest.approx(math.exp(-1), rel=1e-14)
    with pytest.raises(DomainError):
        pathloss_direct(0.0, lb)


def test_baseband_blocked_perfect_focus(surface_200):
    prof = beamfocusing_profile(TX, RX)
    h = baseband_gain(TX, RX, surface_200, prof, LB)
    _, pl = pathloss_plate(TX, RX, surface_200, LB, prof)
    assert abs(h) ** 2 == pytest.approx(pl, rel=1e-13)
    assert np.angle(h) == pytest.approx(np.angle(np.exp(-1j * LB.k * (TX.r + RX.r))), abs=1e-9)


def test_baseband_two_ray_interference(surface_200):
    prof = beamfocusing_profile(TX, RX)
    _, pl = pathloss_plate(TX, RX, surface_200, LB, prof)
    r_d = np.linspace(3.0, 3.0 + LAM, 201)
    gains = np.array([abs(baseband_gain(TX, RX, surface_200, prof, LB, r_d=r)) ** 2 for r in r_d])
    a = math.sqrt(pl)
    b = np.array([math.sqrt(pathloss_direct(r, LB)) for r in r_d])
    # the two-ray envelope: (a - b)^2 <= |h|^2 <= (a + b)^2, reached within one wavelength
    assert np.all(gains <= (a + b) ** 2 * (1 + 1e-12))
    assert np.all(gains >= (a - b) ** 2 * (1 - 1e-12))
    assert gains.max() / gains.min() == pytest.approx(((a + b.mean()) / (a - b.mean())) ** 2, rel=1e-3)


def test_snr():
    assert received_snr(0.5 + 0.5j, 0.0, 1e-12) == 0.0
    assert received_snr(1e-6, 1.0, 1e-12) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        received_snr(1.0, -1.0, 1.0)


def test_discrete_power_gain():
    zero = SpaceFactorParams(0, 0, 0, 0)
    assert discrete_power_gain(DiscreteSurfaceSpec(100, 100, LAM, LAM), zero, K) == 1e8
    assert discrete_power_gain(DiscreteSurfaceSpec(1, 1, LAM, LAM), zero, K) == 1.0
    d = DiscreteSurfaceSpec.from_surface(SurfaceSpec(200 * LAM, 200 * LAM), LAM)
    unfocused = space_factor_params(TX, SphericalPoint.from_degrees(2.0, 45.0, 45.0), PhaseProfile())
    assert discrete_power_gain(d, unfocused, K) < (d.N_y * d.N_z) ** 2


def test_two_user_identical_users(surface_200):
    u = SphericalPoint.from_degrees(2.0, 45.0, 30.0)
    assert two_user_interference(u, u, surface_200, K) == (1.0, 1.0)


# leak gain for co-angular users at 2 m and 8 m, (45, 30) deg, 300 GHz, keyed by L/lambda
LEAK_BASELINE = {
    50: 0.9521962866282345,
    100: 0.44524809923605846,
    200: 0.006363017961274471,
    400: 0.0005882593607307257,
}


def test_two_user_depth_discrimination(surface_200):
    u1 = SphericalPoint.from_degrees(2.0, 45.0, 30.0)
    u2 = SphericalPoint.from_degrees(8.0, 45.0, 30.0)
    focus, leak = two_user_interference(u1, u2, surface_200, K)
    assert focus == 1.0
    assert leak == pytest.approx(LEAK_BASELINE[200], rel=1e-9)
    _, leak_ff = two_user_interference(u1, u2, surface_200, K, evaluator="farfield")
    assert leak_ff == 1.0
    with pytest.raises(DomainError):
        two_user_interference(u1, u2, surface_200, K, evaluator="discrete")


@pytest.mark.parametrize("n", sorted(LEAK_BASELINE))
def test_two_user_leak_baselines(n):
    u1 = SphericalPoint.from_degrees(2.0, 45.0, 30.0)
    u2 = SphericalPoint.from_degrees(8.0, 45.0, 30.0)
    _, leak = two_user_interference(u1, u2, SurfaceSpec(n * LAM, n * LAM), K)
    assert leak == pytest.approx(LEAK_BASELINE[n], rel=1e-9)


def test_default_base_station_cancels():
    assert DEFAULT_BASE_STATION.phi == 0.0
    u1 = SphericalPoint.from_degrees(2.0, 45.0, 30.0)
    u2 = SphericalPoint.from_degrees(8.0, 45.0, 30.0)
    s = SurfaceSpec(100 * LAM, 100 * LAM)
    a = two_user_interference(u1, u2, s, K)
    b = two_user_interference(u1, u2, s, K, base_station=SphericalPoint.from_degrees(11.0, 70.0, -20.0))
    assert a == pytest.approx(b, rel=1e-9)
