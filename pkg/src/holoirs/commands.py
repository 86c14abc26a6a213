"""One runner per CLI command; each turns a Scenario into a CSV Table."""

from __future__ import annotations

import math

from .errors import DomainError
from .geometry import SphericalPoint, SurfaceSpec, classify_region, fresnel_zone
from .incident import TransmitSource, beamfocusing_profile, incident_field_magnitude, steering_profile
from .link import (
    ETA_0,
    pathloss_antenna,
    pathloss_plate,
    plate_field_factor,
    two_user_interference,
)
from .scenario import SCHEMA_VERSION, Scenario, Table
from .spacefactor import beampattern_sweep

__all__ = ["run", "RUNNERS"]


def _db(x: float) -> float:
    return -math.inf if x <= 0 else 10.0 * math.log10(x)


def _axis_column(sc: Scenario) -> str:
    return f"{sc.sweep.axis}_o[{sc.sweep_unit}]"


def _axis_value(sc: Scenario, v: float) -> float:
    return math.degrees(v) if sc.sweep_unit == "deg" else float(v)


def _fixed_profile(sc: Scenario, toward: SphericalPoint | None = None):
    """Resolve a non-tracking profile mode; ``toward`` is the default steering target."""
    if sc.profile_mode in ("zero", "explicit"):
        return sc.profile
    if sc.profile_mode == "focus":
        return beamfocusing_profile(sc.tx, sc.profile_point)
    if sc.profile_mode == "steer":
        target = sc.profile_point or toward or sc.rx
        if target is None:
            raise DomainError("[profile] mode=steer needs a direction or an [rx] section")
        return steering_profile(sc.tx, target)
    return None


def _surface_arg(sc: Scenario):
    return sc.discrete if sc.evaluator == "discrete" else sc.surface


def _pattern(sc: Scenario, evaluator: str | None = None, surface=None):
    profile = None if sc.profile_mode == "track" else _fixed_profile(sc)
    rx = sc.rx if (sc.target == "rx" and profile is None) else None
    return beampattern_sweep(
        sc.tx, rx, sc.observation, surface or _surface_arg(sc), 2.0 * math.pi / sc.wavelength,
        sc.sweep, evaluator or sc.evaluator, profile=profile, grid=sc.oracle,
    )


def run_beampattern(sc: Scenario) -> Table:
    rows = [[_axis_value(sc, v), s2, _db(s2)] for v, s2 in _pattern(sc)]
    return Table([_axis_column(sc), "S_sq[1]", "S_sq[dB]"], rows)


def run_scattered_field(sc: Scenario) -> Table:
    if sc.rx is None:
        raise DomainError("scattered-field needs an [rx] section")
    lam = sc.wavelength
    tx = sc.tx
    if sc.incident_magnitude is not None:
        e_i = sc.incident_magnitude
    else:
        e_i = incident_field_magnitude(TransmitSource(tx, sc.link.P_t, sc.link.G_t), ETA_0)
    rows = []
    for v, s2 in _pattern(sc):
        target = sc.rx if sc.profile_mode == "track" and sc.target == "rx" else sc.sweep.point(sc.observation, v)
        e2 = plate_field_factor(tx, target, sc.surface, lam, e_i) * s2
        rows.append([_axis_value(sc, v), e2, _db(e2), s2])
    return Table([_axis_column(sc), "E_s_sq[V^2/m^2]", "E_s_sq[dB]", "S_sq[1]"], rows)


def run_discretize_study(sc: Scenario) -> Table:
    holo = _pattern(sc, "holographic", sc.surface)
    disc = _pattern(sc, "discrete", sc.discrete)
    rows = [
        [_axis_value(sc, v), h, d, abs(h - d)]
        for (v, h), (_, d) in zip(holo, disc)
    ]
    return Table([_axis_column(sc), "S_sq_holographic[1]", "S_sq_discrete[1]", "abs_diff[1]"], rows)


def run_pathloss_compare(sc: Scenario) -> Table:
    literal = sc.convention == "literal"
    make = SphericalPoint.unchecked if literal else SphericalPoint
    element_angle = "polar" if literal else "normal"
    rows = []
    for r in sc.sweep.values():
        rx = make(float(r), sc.rx.theta, sc.rx.phi)
        if sc.profile_mode == "track":
            profile = beamfocusing_profile(sc.tx, rx)
        else:
            profile = _fixed_profile(sc, toward=rx)
        _, pl = pathloss_plate(sc.tx, rx, sc.surface, sc.link, profile)
        pl_ant = pathloss_antenna(sc.tx, rx, sc.element, sc.link, element_angle)
        rows.append([float(r), _db(pl), _db(pl_ant)])
    return Table(["r_r[m]", "PL[dB]", "PLprime[dB]"], rows)


def run_fresnel_zone(sc: Scenario) -> Table:
    r_min, r_max = fresnel_zone(sc.surface, sc.wavelength)
    if sc.probe_r is None:
        return Table(["r_min[m]", "r_max[m]"], [[r_min, r_max]])
    region = classify_region(sc.probe_r, sc.surface, sc.wavelength).value
    return Table(["r_min[m]", "r_max[m]", "r[m]", "region"], [[r_min, r_max, sc.probe_r, region]])


def run_multiuser(sc: Scenario) -> Table:
    r1, r2, theta_deg, phi_deg = sc.users
    u1 = SphericalPoint.from_degrees(r1, theta_deg, phi_deg)
    u2 = SphericalPoint.from_degrees(r2, theta_deg, phi_deg)
    k = 2.0 * math.pi / sc.wavelength
    rows = []
    for L in sc.lengths:
        s = SurfaceSpec(L, L)
        focus, leak = two_user_interference(u1, u2, s, k)
        _, leak_ff = two_user_interference(u1, u2, s, k, evaluator="farfield")
        rows.append([L, L / sc.wavelength, focus, leak, leak_ff])
    return Table(["L[m]", "L[lambda]", "focus_gain[1]", "leak_gain[1]", "leak_gain_farfield[1]"], rows)


RUNNERS = {
    "beampattern": run_beampattern,
    "scattered-field": run_scattered_field,
    "discretize-study": run_discretize_study,
    "pathloss-compare": run_pathloss_compare,
    "fresnel-zone": run_fresnel_zone,
    "multiuser": run_multiuser,
}


def run(sc: Scenario) -> Table:
    table = RUNNERS[sc.command](sc)
    table.comments = [
        f"holoirs {sc.command} schema={SCHEMA_VERSION}",
        "input: " + "; ".join(f"{k}={v}" for k, v in sc.echo),
    ]
    return table
