"""Incident spherical wave, Fresnel distance expansion and induced current."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import SphericalPoint, to_cartesian


@dataclass(frozen=True)
class TransmitSource:
    position: SphericalPoint
    P_t: float
    G_t: float

    def __post_init__(self):
        if not (self.P_t > 0 and self.G_t > 0):
            raise DomainError(f"P_t and G_t must be positive, got P_t={self.P_t!r}, G_t={self.G_t!r}")


@dataclass(frozen=True)
class PhaseProfile:
    """Quadratic phase ``k*(C1*y**2 + C2*y + C3*z**2 + C4*z)`` applied by the surface."""

    C1: float = 0.0
    C2: float = 0.0
    C3: float = 0.0
    C4: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.C1, self.C2, self.C3, self.C4)):
            raise DomainError("phase-profile coefficients must be finite")

    def phase(self, y, z, k: float):
        y = np.asarray(y, dtype=float)
        z = np.asarray(z, dtype=float)
        return k * (self.C1 * y * y + self.C2 * y + self.C3 * z * z + self.C4 * z)


ZERO_PROFILE = PhaseProfile()


def exact_distance(src: SphericalPoint, y, z):
    """Euclidean distance from ``src`` to the surface point ``(0, y, z)``."""
    c = to_cartesian(src)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    return np.sqrt(c.x * c.x + (c.y - y) ** 2 + (c.z - z) ** 2)


def fresnel_distance_term(src: SphericalPoint, y, z):
    """Second-order correction ``r(y, z) - r`` about the aperture centre.

    This is the separable form: the ``y*z`` cross term of the Taylor
    expansion is not included.
    """
    q_y, l_y, q_z, l_z = src.fresnel_coefficients()
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    return q_y * y * y - l_y * y + q_z * z * z - l_z * z


def incident_field_magnitude(src: TransmitSource, eta: float) -> float:
    """``|E_i| = sqrt(eta*P_t*G_t/(4*pi*r_t**2))`` at the surface centre."""
    r = src.position.r
    return math.sqrt(eta * src.P_t * src.G_t / (4.0 * math.pi * r * r))


def surface_current(src: TransmitSource, profile: PhaseProfile, y, z, k: float, eta: float):
    """Complex z-directed current density ``J_z*exp(1j*phi(y, z))`` in A/m.

    The amplitude is held at its centre value across the aperture; only the
    phase varies.
    """
    e_i = incident_field_magnitude(src, eta)
    amplitude = 2.0 * e_i * math.cos(src.position.phi) / eta
    phase = (
        -k * (src.position.r + fresnel_distance_term(src.position, y, z))
        + profile.phase(y, z, k)
        + 0.5 * math.pi
    )
    out = amplitude * np.exp(1j * phase)
    return out if np.ndim(out) else complex(out)


def beamfocusing_profile(src: SphericalPoint, focus: SphericalPoint) -> PhaseProfile:
    """Profile that cancels the source and focus-point phases across the aperture."""
    tq_y, tl_y, tq_z, tl_z = src.fresnel_coefficients()
    fq_y, fl_y, fq_z, fl_z = focus.fresnel_coefficients()
    # sums are formed in the same order as in space_factor_params so that
    # focusing on the receiver cancels to exactly zero
    return PhaseProfile(
        C1=tq_y + fq_y,
        C2=-(tl_y + fl_y),
        C3=tq_z + fq_z,
        C4=-(tl_z + fl_z),
    )


def steering_profile(src: SphericalPoint, direction: SphericalPoint) -> PhaseProfile:
    """Linear (anomalous-reflector) profile: the far-field limit of beamfocusing."""
    _, tl_y, _, tl_z = src.fresnel_coefficients()
    _, fl_y, _, fl_z = direction.fresnel_coefficients()
    return PhaseProfile(C1=0.0, C2=-(tl_y + fl_y), C3=0.0, C4=-(tl_z + fl_z))
