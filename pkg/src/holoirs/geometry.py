"""Coordinates, constants and the Fresnel-zone classifier.

The surface lies in the yz-plane, centred at the origin, with its normal along
+x.  Points are described by ``(r, theta, phi)`` where ``theta`` is the polar
angle from +z and ``phi`` the azimuth in the xy-plane measured from +x.  All
angles are radians.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

SPEED_OF_LIGHT = 299792458.0
MU_0 = 1.25663706212e-6
ETA_0 = 376.730313668


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = SPEED_OF_LIGHT
    eta: float = ETA_0
    mu: float = MU_0

    def __post_init__(self):
        for name in ("c", "eta", "mu"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")


FREE_SPACE = PhysicalConstants()


@dataclass(frozen=True)
class CartesianPoint:
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class SphericalPoint:
    """A point in the illuminated half-space x > 0.

    Construction rejects points that are not strictly in front of the
    surface; the physical-optics current model has no meaning for grazing or
    rear illumination.
    """

    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise DomainError(f"radial distance must be positive, got r={self.r!r}")
        if not 0.0 < self.theta < math.pi:
            raise DomainError(f"polar angle must lie in (0, pi), got theta={self.theta!r}")
        if not -math.pi / 2 < self.phi < math.pi / 2:
            raise DomainError(
                f"azimuth must lie in (-pi/2, pi/2) (front half-space), got phi={self.phi!r}"
            )

    @classmethod
    def from_degrees(cls, r: float, theta_deg: float, phi_deg: float) -> "SphericalPoint":
        return cls(r, math.radians(theta_deg), math.radians(phi_deg))

    @classmethod
    def unchecked(cls, r: float, theta: float, phi: float) -> "SphericalPoint":
        """Build a point without the half-space check.

        Only for reproducing published parameter sets that sit on the
        boundary (e.g. an azimuth of exactly 90 degrees); every formula still
        evaluates, but results there are limits rather than physics.
        """
        point = object.__new__(cls)
        object.__setattr__(point, "r", float(r))
        object.__setattr__(point, "theta", float(theta))
        object.__setattr__(point, "phi", float(phi))
        return point

    def fresnel_coefficients(self) -> tuple[float, float, float, float]:
        """Coefficients ``(q_y, l_y, q_z, l_z)`` of the second-order distance term.

        The Fresnel expansion about the aperture centre reads
        ``r(y, z) - r ~= q_y*y**2 - l_y*y + q_z*z**2 - l_z*z``.
        """
        st, ct = math.sin(self.theta), math.cos(self.theta)
        sp = math.sin(self.phi)
        q_y = (1.0 - sp * sp * st * st) / (2.0 * self.r)
        l_y = sp * st
        q_z = st * st / (2.0 * self.r)
        l_z = ct
        return q_y, l_y, q_z, l_z


def to_cartesian(p: SphericalPoint) -> CartesianPoint:
    st = math.sin(p.theta)
    return CartesianPoint(
        p.r * math.cos(p.phi) * st,
        p.r * math.sin(p.phi) * st,
        p.r * math.cos(p.theta),
    )


def to_spherical(c: CartesianPoint) -> SphericalPoint:
    r = math.sqrt(c.x * c.x + c.y * c.y + c.z * c.z)
    if r == 0.0:
        raise DomainError("the origin has no spherical representation")
    theta = math.atan2(math.hypot(c.x, c.y), c.z)
    phi = math.atan2(c.y, c.x)
    return SphericalPoint(r, theta, phi)


@dataclass(frozen=True)
class SurfaceSpec:
    L_y: float
    L_z: float

    def __post_init__(self):
        if not (self.L_y > 0 and self.L_z > 0):
            raise DomainError(f"surface dimensions must be positive, got {self.L_y!r} x {self.L_z!r}")

    @property
    def L_max(self) -> float:
        return max(self.L_y, self.L_z)

    @property
    def area(self) -> float:
        return self.L_y * self.L_z


def wavelength(f: float, constants: PhysicalConstants = FREE_SPACE) -> float:
    if not f > 0:
        raise DomainError(f"frequency must be positive, got {f!r}")
    return constants.c / f


def wavenumber(f: float, constants: PhysicalConstants = FREE_SPACE) -> float:
    return 2.0 * math.pi / wavelength(f, constants)


def fresnel_zone(s: SurfaceSpec, lam: float) -> tuple[float, float]:
    """Radiating near-field interval ``(r_min, r_max]`` of the aperture."""
    if not lam > 0:
        raise DomainError(f"wavelength must be positive, got {lam!r}")
    L = s.L_max
    return 0.62 * math.sqrt(L**3 / lam), 2.0 * L * L / lam


class Region(str, enum.Enum):
    REACTIVE_NEAR = "reactive-near"
    FRESNEL = "fresnel"
    FAR = "far"


def classify_region(r: float, s: SurfaceSpec, lam: float) -> Region:
    if not r > 0:
        raise DomainError(f"distance must be positive, got {r!r}")
    r_min, r_max = fresnel_zone(s, lam)
    if r <= r_min:
        return Region.REACTIVE_NEAR
    if r <= r_max:
        return Region.FRESNEL
    return Region.FAR
