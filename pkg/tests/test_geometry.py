import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holoirs import (
    CartesianPoint,
    DomainError,
    PhysicalConstants,
    Region,
    SphericalPoint,
    SurfaceSpec,
    classify_region,
    fresnel_zone,
    to_cartesian,
    to_spherical,
    wavelength,
    wavenumber,
)

EPS = 1e-9
radii = st.floats(1e-3, 1e4)
thetas = st.floats(EPS, math.pi - EPS).filter(lambda t: 0 < t < math.pi)
phis = st.floats(-math.pi / 2 + EPS, math.pi / 2 - EPS)


def test_unit_point_on_normal():
    c = to_cartesian(SphericalPoint(1.0, math.pi / 2, 0.0))
    assert c.x == pytest.approx(1.0, abs=1e-15)
    assert c.y == pytest.approx(0.0, abs=1e-15)
    assert c.z == pytest.approx(0.0, abs=1e-15)


def test_to_cartesian_example():
    c = to_cartesian(SphericalPoint.from_degrees(2.0, 45.0, 30.0))
    # r*cos(phi)*sin(theta) = 2*(sqrt(3)/2)*(sqrt(2)/2) etc.
    assert (c.x, c.y, c.z) == pytest.approx((math.sqrt(6) / 2, math.sqrt(2) / 2, math.sqrt(2)), rel=1e-14)
    assert (c.x, c.y, c.z) == pytest.approx((1.22474, 0.70711, 1.41421), abs=1e-5)


def test_round_trip_fixed_point():
    p = SphericalPoint.from_degrees(8.0, 45.0, 36.0)
    q = to_spherical(to_cartesian(p))
    assert (q.r, q.theta, q.phi) == pytest.approx((p.r, p.theta, p.phi), rel=1e-12)


@given(radii, thetas, phis)
def test_round_trip_property(r, theta, phi):
    p = SphericalPoint(r, theta, phi)
    q = to_spherical(to_cartesian(p))
    assert q.r == pytest.approx(r, rel=1e-12)
    assert q.theta == pytest.approx(theta, rel=1e-12, abs=1e-15)
    assert q.phi == pytest.approx(phi, rel=1e-12, abs=1e-15)


def test_round_trip_bulk():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10_000):
        p = SphericalPoint(
            float(rng.uniform(0.01, 100)), float(rng.uniform(0.01, math.pi - 0.01)),
            float(rng.uniform(-math.pi / 2 + 0.01, math.pi / 2 - 0.01)),
        )
        c = to_cartesian(p)
        q = to_spherical(c)
        c2 = to_cartesian(q)
        worst = max(worst, math.dist((c.x, c.y, c.z), (c2.x, c2.y, c2.z)) / p.r)
    assert worst < 1e-12


@pytest.mark.parametrize(
    "r,theta,phi",
    [(0.0, 1.0, 0.0), (-1.0, 1.0, 0.0), (1.0, 0.0, 0.0), (1.0, math.pi, 0.0),
     (1.0, 1.0, math.pi / 2), (1.0, 1.0, -math.pi / 2), (1.0, 1.0, 2.0), (math.nan, 1.0, 0.0)],
)
def test_point_outside_domain_rejected(r, theta, phi):
    with pytest.raises(DomainError):
        SphericalPoint(r, theta, phi)


def test_rear_cartesian_point_rejected():
    with pytest.raises(DomainError):
        to_spherical(CartesianPoint(-1.0, 0.0, 0.5))


def test_unchecked_point_skips_validation():
    p = SphericalPoint.unchecked(2.0, math.radians(60), math.pi / 2)
    assert p.phi == math.pi / 2


def test_constants_positive():
    with pytest.raises(DomainError):
        PhysicalConstants(eta=0.0)
    assert PhysicalConstants(eta=1.0).eta == 1.0


def test_wavelength_and_wavenumber_at_300ghz():
    assert wavelength(300e9) == pytest.approx(9.9931e-4, rel=1e-5)
    assert wavenumber(300e9) == pytest.approx(2 * math.pi * 300e9 / 299792458.0, rel=1e-15)
    # the rounded figure 6287.6 follows from the 5-digit wavelength above
    assert wavenumber(300e9) == pytest.approx(6287.6, abs=0.11)


def test_wavenumber_scaling():
    assert wavenumber(150e9) == pytest.approx(wavenumber(300e9) / 2, rel=1e-15)


def test_wavelength_custom_medium():
    assert wavelength(2.0, PhysicalConstants(c=1.0)) == 0.5


@pytest.mark.parametrize("f", [0.0, -1.0])
def test_nonpositive_frequency(f):
    with pytest.raises(DomainError):
        wavelength(f)


def test_fresnel_zone_example():
    r_min, r_max = fresnel_zone(SurfaceSpec(0.2, 0.2), 1e-3)
    assert r_min == pytest.approx(1.7536, rel=1e-4)
    assert r_max == pytest.approx(80.0, rel=1e-12)


def test_fresnel_zone_one_wavelength_aperture():
    lam = 1e-3
    r_min, r_max = fresnel_zone(SurfaceSpec(lam, lam), lam)
    assert r_min == pytest.approx(0.62 * lam, rel=1e-12)
    assert r_max == pytest.approx(2 * lam, rel=1e-12)


def test_fresnel_zone_uses_longer_side():
    assert fresnel_zone(SurfaceSpec(0.1, 0.2), 1e-3) == fresnel_zone(SurfaceSpec(0.2, 0.2), 1e-3)


def test_fresnel_zone_quadratic_law():
    _, a = fresnel_zone(SurfaceSpec(0.05, 0.05), 1e-3)
    _, b = fresnel_zone(SurfaceSpec(0.2, 0.2), 1e-3)
    assert b / a == pytest.approx(16.0, rel=1e-14)


@given(st.floats(0.0, 5.0))
def test_fresnel_zone_ordered(log_ratio):
    lam = 1e-3
    L = lam * 10.0**log_ratio
    r_min, r_max = fresnel_zone(SurfaceSpec(L, L), lam)
    assert r_min < r_max


def test_classify_examples():
    s, lam = SurfaceSpec(0.2, 0.2), 1e-3
    assert classify_region(8.0, s, lam) is Region.FRESNEL
    assert classify_region(100.0, s, lam) is Region.FAR
    assert classify_region(1.0, s, lam) is Region.REACTIVE_NEAR
    _, r_max = fresnel_zone(s, lam)
    assert classify_region(r_max, s, lam) is Region.FRESNEL
    assert Region.REACTIVE_NEAR.value == "reactive-near"


@given(st.lists(st.floats(1e-3, 1e3), min_size=2, max_size=30))
def test_classify_monotone(rs):
    s, lam = SurfaceSpec(0.2, 0.2), 1e-3
    order = [Region.REACTIVE_NEAR, Region.FRESNEL, Region.FAR]
    ranks = [order.index(classify_region(r, s, lam)) for r in sorted(rs)]
    assert ranks == sorted(ranks)


def test_surface_validation():
    with pytest.raises(DomainError):
        SurfaceSpec(0.0, 1.0)
    s = SurfaceSpec(0.1, 0.3)
    assert s.L_max == 0.3
    assert s.area == pytest.approx(0.03)
