"""Link-level quantities built on the space factor.

Everything is in linear units; ``to_db``/``from_db`` convert power ratios at
the edges.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import ETA_0, Region, SphericalPoint, SurfaceSpec, classify_region, wavelength
from .incident import PhaseProfile, TransmitSource, beamfocusing_profile, incident_field_magnitude
from .spacefactor import (
    DiscreteSurfaceSpec,
    SpaceFactorParams,
    space_factor_discrete,
    space_factor_farfield,
    space_factor_holographic,
    space_factor_params,
)

DEFAULT_KAPPA_ABS = 0.0033


def to_db(x):
    return 10.0 * np.log10(x)


def from_db(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


@dataclass(frozen=True)
class LinkBudget:
    P_t: float
    G_t: float
    G_r: float
    f: float
    kappa_abs: float = DEFAULT_KAPPA_ABS
    noise_var: float = 1e-12

    def __post_init__(self):
        for name in ("P_t", "G_t", "G_r", "f", "noise_var"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")
        if not self.kappa_abs >= 0:
            raise DomainError(f"kappa_abs must be non-negative, got {self.kappa_abs!r}")

    @property
    def wavelength(self) -> float:
        return wavelength(self.f)

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.wavelength


@dataclass(frozen=True)
class ElementPattern:
    """``G_e(theta) = gamma * cos(theta)**(2q)``, zero beyond 90 degrees."""

    gamma: float = math.pi
    q: float = 0.285

    def __post_init__(self):
        if not self.gamma > 0 or not self.q >= 0:
            raise DomainError(f"need gamma > 0 and q >= 0, got gamma={self.gamma!r}, q={self.q!r}")

    def gain(self, theta: float) -> float:
        c = max(math.cos(theta), 0.0)
        if self.q == 0:
            return self.gamma
        return self.gamma * c ** (2.0 * self.q)


def _cos_azimuth(phi: float) -> float:
    # exactly zero on the half-space boundary, where cos(pi/2) would leave 6e-17
    return 0.0 if abs(phi) == math.pi / 2 else math.cos(phi)


def _check_region(rx: SphericalPoint, s: SurfaceSpec, lam: float):
    if classify_region(rx.r, s, lam) is Region.REACTIVE_NEAR:
        warnings.warn(
            f"receiver at r={rx.r:g} m is inside the reactive near field of the surface",
            stacklevel=3,
        )


def scattered_field_sq(
    tx: TransmitSource,
    rx: SphericalPoint,
    s: SurfaceSpec,
    profile: PhaseProfile,
    lam: float,
    eta: float = ETA_0,
    incident_magnitude: float | None = None,
) -> float:
    """``|E_s|**2`` at the receiver in (V/m)**2.

    ``incident_magnitude`` overrides ``|E_i|`` (otherwise derived from the
    source's power and gain).
    """
    _check_region(rx, s, lam)
    e_i = incident_field_magnitude(tx, eta) if incident_magnitude is None else incident_magnitude
    k = 2.0 * math.pi / lam
    S = space_factor_holographic(space_factor_params(tx.position, rx, profile), s, k)
    return plate_field_factor(tx.position, rx, s, lam, e_i) * abs(S) ** 2


def plate_field_factor(tx: SphericalPoint, rx: SphericalPoint, s: SurfaceSpec, lam: float, e_i: float) -> float:
    """``|E_s|**2`` for a unit space factor; multiply by ``|S|**2`` from any evaluator."""
    return (s.area / lam) ** 2 * e_i**2 / rx.r**2 * _cos_azimuth(tx.phi) ** 2 * math.sin(rx.theta) ** 2


def _absorption(lb: LinkBudget, distance: float) -> float:
    return math.exp(-lb.kappa_abs * distance)


def pathloss_plate(
    tx: SphericalPoint,
    rx: SphericalPoint,
    s: SurfaceSpec,
    lb: LinkBudget,
    profile: PhaseProfile,
) -> tuple[float, float]:
    """Plate-scattering path loss; returns ``(PL_bar, PL)`` with ``PL_bar = PL*|S|**2``."""
    pl = (
        lb.G_t
        * lb.G_r
        * (s.area / (4.0 * math.pi)) ** 2
        * _cos_azimuth(tx.phi) ** 2
        * math.sin(rx.theta) ** 2
        / (tx.r**2 * rx.r**2)
        * _absorption(lb, tx.r + rx.r)
    )
    S = space_factor_holographic(space_factor_params(tx, rx, profile), s, lb.k)
    return pl * abs(S) ** 2, pl


def pathloss_antenna(
    tx: SphericalPoint,
    rx: SphericalPoint,
    ep: ElementPattern,
    lb: LinkBudget,
    element_angle: str = "polar",
) -> float:
    """Single-element antenna-model path loss ``PL'``.

    ``element_angle`` selects what the element pattern is evaluated at:
    ``"polar"`` uses the points' polar angles as written in the model,
    ``"normal"`` the angle between each point and the surface normal.
    """
    if element_angle == "polar":
        th_t, th_r = tx.theta, rx.theta
    elif element_angle == "normal":
        th_t = math.acos(math.sin(tx.theta) * math.cos(tx.phi))
        th_r = math.acos(math.sin(rx.theta) * math.cos(rx.phi))
    else:
        raise DomainError(f"element_angle must be 'polar' or 'normal', got {element_angle!r}")
    return (
        lb.G_t
        * lb.G_r
        * (lb.wavelength / (4.0 * math.pi)) ** 4
        * ep.gain(th_t)
        * ep.gain(th_r)
        / (tx.r**2 * rx.r**2)
        * _absorption(lb, tx.r + rx.r)
    )


def pathloss_direct(r_d: float, lb: LinkBudget) -> float:
    if not r_d > 0:
        raise DomainError(f"direct distance must be positive, got {r_d!r}")
    return lb.G_t * lb.G_r * lb.wavelength**2 / (4.0 * math.pi * r_d) ** 2 * _absorption(lb, r_d)


def baseband_gain(
    tx: SphericalPoint,
    rx: SphericalPoint,
    s: SurfaceSpec,
    profile: PhaseProfile,
    lb: LinkBudget,
    r_d: float | None = None,
) -> complex:
    """End-to-end complex channel ``h``; ``r_d=None`` means the direct path is blocked."""
    k = lb.k
    _, pl = pathloss_plate(tx, rx, s, lb, profile)
    S = space_factor_holographic(space_factor_params(tx, rx, profile), s, k)
    h = math.sqrt(pl) * np.exp(-1j * k * (rx.r + tx.r)) * S
    if r_d is not None:
        h += math.sqrt(pathloss_direct(r_d, lb)) * np.exp(-1j * k * r_d)
    return complex(h)


def received_snr(h: complex, P_t: float, noise_var: float) -> float:
    if P_t < 0 or not noise_var > 0:
        raise DomainError("need P_t >= 0 and noise_var > 0")
    return P_t * abs(h) ** 2 / noise_var


def discrete_power_gain(d: DiscreteSurfaceSpec, p: SpaceFactorParams, k: float) -> float:
    """Array power gain ``(N_y*N_z)**2 * |S|**2`` of the tiled surface."""
    return (d.N_y * d.N_z) ** 2 * abs(space_factor_discrete(p, d, k)) ** 2


# the far end of the link for two_user_interference; its terms cancel
DEFAULT_BASE_STATION = SphericalPoint(5.0, math.pi / 2, 0.0)


def two_user_interference(
    user1: SphericalPoint,
    user2: SphericalPoint,
    s: SurfaceSpec,
    k: float,
    base_station: SphericalPoint = DEFAULT_BASE_STATION,
    evaluator: str = "holographic",
) -> tuple[float, float]:
    """Beampattern at both users when the surface focuses user 1 onto the base station.

    Returns ``(focus_gain, leak_gain)`` = ``|S|**2`` for user 1 and user 2.
    ``evaluator="farfield"`` gives the parallel-ray contrast case.
    """
    profile = beamfocusing_profile(user1, base_station)
    if evaluator == "holographic":
        fn = space_factor_holographic
    elif evaluator == "farfield":
        fn = space_factor_farfield
    else:
        raise DomainError(f"evaluator must be 'holographic' or 'farfield', got {evaluator!r}")
    g1 = abs(fn(space_factor_params(user1, base_station, profile), s, k)) ** 2
    g2 = abs(fn(space_factor_params(user2, base_station, profile), s, k)) ** 2
    return float(g1), float(g2)
