"""Normalised space factor of a rectangular reflecting surface.

Four evaluators share one parameterisation, ``SpaceFactorParams``:

* ``space_factor_holographic`` - closed form through the complex error function,
* ``space_factor_farfield``   - the parallel-ray sinc product,
* ``space_factor_discrete``   - the element sum of a tiled surface,
* ``space_factor_oracle``     - brute-force midpoint quadrature of the
  aperture integrand, built from the geometry rather than from the params.

All return the complex factor (the far-field one is real); the beampattern is
``abs(S)**2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError
from .geometry import SphericalPoint, SurfaceSpec
from .incident import PhaseProfile, beamfocusing_profile, fresnel_distance_term
from .specfun import gaussian_phase_integral, sinc

# maximum quadratic phase k*|a|*(L/2)**2 [rad] below which the series branch is used
EPS_SWITCH = 1e-4
_SERIES_ORDER = 4


@dataclass(frozen=True)
class SpaceFactorParams:
    a_y: float
    b_y: float
    a_z: float
    b_z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.a_y, self.b_y, self.a_z, self.b_z)):
            raise DomainError("space-factor parameters must be finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return self.a_y, self.b_y, self.a_z, self.b_z


@dataclass(frozen=True)
class DiscreteSurfaceSpec:
    """``N_y x N_z`` elements of size ``tile_y x tile_z`` with no gaps."""

    N_y: int
    N_z: int
    tile_y: float
    tile_z: float

    def __post_init__(self):
        if int(self.N_y) != self.N_y or int(self.N_z) != self.N_z or self.N_y < 1 or self.N_z < 1:
            raise DomainError(f"element counts must be positive integers, got {self.N_y!r} x {self.N_z!r}")
        if not (self.tile_y > 0 and self.tile_z > 0):
            raise DomainError("tile dimensions must be positive")

    @classmethod
    def from_surface(cls, s: SurfaceSpec, tile_y: float, tile_z: float | None = None) -> "DiscreteSurfaceSpec":
        tile_z = tile_y if tile_z is None else tile_z
        n_y = s.L_y / tile_y
        n_z = s.L_z / tile_z
        if abs(n_y - round(n_y)) > 1e-9 * n_y or abs(n_z - round(n_z)) > 1e-9 * n_z:
            raise DomainError(
                f"surface {s.L_y} x {s.L_z} m is not an integer number of {tile_y} x {tile_z} m tiles"
            )
        return cls(int(round(n_y)), int(round(n_z)), tile_y, tile_z)

    @property
    def surface(self) -> SurfaceSpec:
        return SurfaceSpec(self.N_y * self.tile_y, self.N_z * self.tile_z)


def space_factor_params(tx: SphericalPoint, rx: SphericalPoint, profile: PhaseProfile) -> SpaceFactorParams:
    tq_y, tl_y, tq_z, tl_z = tx.fresnel_coefficients()
    rq_y, rl_y, rq_z, rl_z = rx.fresnel_coefficients()
    return SpaceFactorParams(
        a_y=(tq_y + rq_y) - profile.C1,
        b_y=(tl_y + rl_y) + profile.C2,
        a_z=(tq_z + rq_z) - profile.C3,
        b_z=(tl_z + rl_z) + profile.C4,
    )


def _cos_moments(x: float, n_max: int) -> np.ndarray:
    """``int_0^1 t**(2n) cos(x t) dt`` for ``n = 0..n_max``."""
    out = np.empty(n_max + 1)
    if abs(x) < 2.0:
        m = np.arange(25)
        x2m = np.array([x ** (2 * j) / math.factorial(2 * j) for j in range(25)]) * (-1.0) ** m
        for n in range(n_max + 1):
            out[n] = np.sum(x2m / (2 * n + 2 * m + 1))
        return out
    sx, cx = math.sin(x), math.cos(x)
    c_p = sx / x          # p = 0
    s_p = (1.0 - cx) / x
    out[0] = c_p
    for p in range(1, 2 * n_max + 1):
        c_p, s_p = sx / x - p / x * s_p, -cx / x + p / x * c_p
        if p % 2 == 0:
            out[p // 2] = c_p
    return out


def _axis_factor_series(a: float, b: float, L: float, k: float) -> complex:
    # expand exp(-1j*k*a*y**2) about a = 0; the n = 0 term is the sinc
    phi = k * a * L * L / 4.0
    moments = _cos_moments(k * b * L / 2.0, _SERIES_ORDER)
    total = 0j
    for n in range(_SERIES_ORDER + 1):
        total += (-1j * phi) ** n / math.factorial(n) * moments[n]
    return total


def axis_factor(a: float, b: float, L: float, k: float) -> complex:
    """``(1/L) * int_{-L/2}^{L/2} exp(-1j*k*(a*y**2 - b*y)) dy``."""
    if abs(k * a) * (L / 2.0) ** 2 < EPS_SWITCH:
        return _axis_factor_series(a, b, L, k)
    return gaussian_phase_integral(a, b, k, -L / 2.0, L / 2.0) / L


def space_factor_holographic(p: SpaceFactorParams, s: SurfaceSpec, k: float) -> complex:
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got {k!r}")
    return axis_factor(p.a_y, p.b_y, s.L_y, k) * axis_factor(p.a_z, p.b_z, s.L_z, k)


def space_factor_farfield(p: SpaceFactorParams, s: SurfaceSpec, k: float) -> float:
    """Parallel-ray limit ``sinc(k*L_y*b_y/2) * sinc(k*L_z*b_z/2)``; ignores ``a_y``, ``a_z``."""
    return sinc(k * s.L_y * p.b_y / 2.0) * sinc(k * s.L_z * p.b_z / 2.0)


def _element_indices(n: int) -> np.ndarray:
    if n % 2 == 0:
        return np.arange(-n // 2, n // 2, dtype=float)
    return np.arange(-(n - 1) // 2, (n - 1) // 2 + 1, dtype=float)


def _discrete_axis(a: float, b: float, n: int, tile: float, k: float) -> complex:
    pos = _element_indices(n) * tile
    return complex(np.exp(-1j * k * (a * pos * pos - b * pos)).sum() / n)


def space_factor_discrete(p: SpaceFactorParams, d: DiscreteSurfaceSpec, k: float) -> complex:
    """Normalised element sum.

    Even counts use indices ``-N/2 .. N/2-1``; odd counts the symmetric set
    ``-(N-1)/2 .. (N-1)/2``.
    """
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got {k!r}")
    lam = 2.0 * math.pi / k
    if d.tile_y > lam * (1 + 1e-12) or d.tile_z > lam * (1 + 1e-12):
        warnings.warn(
            f"tiles of {d.tile_y:.4g} x {d.tile_z:.4g} m exceed the wavelength {lam:.4g} m;"
            " the element sum no longer approximates a continuous aperture",
            stacklevel=2,
        )
    return _discrete_axis(p.a_y, p.b_y, d.N_y, d.tile_y, k) * _discrete_axis(p.a_z, p.b_z, d.N_z, d.tile_z, k)


@dataclass(frozen=True)
class OracleGrid:
    """Sampling control for :func:`space_factor_oracle`.

    The starting grid has at least ``samples_per_cycle`` cells per 2*pi of
    accumulated phase along each axis (16, i.e. at most pi/8 per cell, is the
    floor) and at least ``min_samples`` cells.  The grid is then halved
    repeatedly and the midpoint sums are Richardson-extrapolated until two
    successive extrapolants differ by less than ``tol``.  ``budget`` caps the
    number of integrand evaluations.
    """

    samples_per_cycle: float = 16.0
    min_samples: int = 64
    tol: float = 1e-12
    max_refinements: int = 10
    budget: int = 10**8
    separable: bool = True
    pilot: int = 1025

    def __post_init__(self):
        if self.samples_per_cycle < 16.0:
            raise DomainError("the oracle needs at least 16 samples per phase cycle")
        if self.min_samples < 64:
            raise DomainError("the oracle needs at least 64 samples per axis")


def _phase_span(psi, L: float, pilot: int) -> float:
    grid = np.linspace(-L / 2.0, L / 2.0, pilot)
    return float(np.abs(np.diff(psi(grid))).sum())


def _start_count(psi, L: float, grid: OracleGrid) -> int:
    span = _phase_span(psi, L, grid.pilot)
    return max(grid.min_samples, math.ceil(grid.samples_per_cycle * span / (2.0 * math.pi)))


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int):
        if self.used + n > self.limit:
            raise ResolutionError(
                f"oracle grid needs more than {self.limit} integrand evaluations"
                f" ({self.used} used, next level {n})"
            )
        self.used += n


def _richardson(level_means, tol: float, max_refinements: int):
    """Romberg table on midpoint means; ``level_means`` yields successive halvings."""
    prev = None
    for level, mean in enumerate(level_means):
        row = [mean]
        if prev is not None:
            for j in range(len(prev)):
                row.append(row[j] + (row[j] - prev[j]) / (4.0 ** (j + 1) - 1.0))
            if abs(row[-1] - prev[-1]) <= tol:
                return row[-1]
        if level >= max_refinements:
            break
        prev = row
    raise ResolutionError(f"oracle quadrature did not reach tol={tol:g} in {max_refinements} refinements")


def _midpoints(L: float, n: int) -> np.ndarray:
    return -L / 2.0 + (np.arange(n) + 0.5) * (L / n)


def _oracle_1d(psi, L: float, grid: OracleGrid, budget: _Budget) -> complex:
    n0 = _start_count(psi, L, grid)

    def means():
        n = n0
        while True:
            budget.spend(n)
            yield complex(np.exp(1j * psi(_midpoints(L, n))).mean())
            n *= 2

    return _richardson(means(), grid.tol, grid.max_refinements)


def _oracle_2d(psi2, s: SurfaceSpec, n_y0: int, n_z0: int, grid: OracleGrid, budget: _Budget) -> complex:
    def means():
        n_y, n_z = n_y0, n_z0
        while True:
            budget.spend(n_y * n_z)
            z = _midpoints(s.L_z, n_z)
            total = 0j
            rows = max(1, 2**20 // n_z)
            ys = _midpoints(s.L_y, n_y)
            for start in range(0, n_y, rows):
                y = ys[start:start + rows, None]
                total += np.exp(1j * psi2(y, z[None, :])).sum()
            yield total / (n_y * n_z)
            n_y *= 2
            n_z *= 2

    return _richardson(means(), grid.tol, grid.max_refinements)


def space_factor_oracle(
    tx: SphericalPoint,
    rx: SphericalPoint,
    profile: PhaseProfile,
    s: SurfaceSpec,
    k: float,
    grid: OracleGrid | None = None,
) -> complex:
    """Reference space factor by direct quadrature over the aperture.

    Integrates ``exp(-1j*k*(rt(y,z) + rr(y,z)) + 1j*phi(y,z)) / (L_y*L_z)``
    where ``rt``, ``rr`` are the Fresnel distance terms of the two end points
    and ``phi`` the surface phase.  Nothing here goes through the reduced
    parameters or the error function.

    With ``grid.separable`` (default) the double midpoint sum is formed as
    the product of the two line sums, which is the same number for this
    integrand; ``separable=False`` evaluates every cell of the 2-D grid.
    """
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got {k!r}")
    grid = grid or OracleGrid()
    budget = _Budget(grid.budget)

    def psi2(y, z):
        return -k * (fresnel_distance_term(tx, y, z) + fresnel_distance_term(rx, y, z)) + profile.phase(y, z, k)

    def psi_y(y):
        return psi2(y, 0.0)

    def psi_z(z):
        return psi2(0.0, z)

    if grid.separable:
        n_y0 = _start_count(psi_y, s.L_y, grid)
        n_z0 = _start_count(psi_z, s.L_z, grid)
        if n_y0 * n_z0 > grid.budget:
            raise ResolutionError(
                f"phase-resolution grid of {n_y0} x {n_z0} cells exceeds the budget of {grid.budget}"
            )
        return _oracle_1d(psi_y, s.L_y, grid, budget) * _oracle_1d(psi_z, s.L_z, grid, budget)
    n_y0 = _start_count(psi_y, s.L_y, grid)
    n_z0 = _start_count(psi_z, s.L_z, grid)
    return _oracle_2d(psi2, s, n_y0, n_z0, grid, budget)


EVALUATORS = ("holographic", "farfield", "discrete", "oracle")
SWEEP_AXES = ("r", "theta", "phi")


@dataclass(frozen=True)
class Sweep:
    """Sweep of one spherical coordinate of the observation point (SI units, radians)."""

    axis: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise DomainError(f"sweep axis must be one of {SWEEP_AXES}, got {self.axis!r}")
        if self.count < 2:
            raise DomainError(f"a sweep needs at least 2 points, got {self.count}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def point(self, base: SphericalPoint, value: float) -> SphericalPoint:
        coords = {"r": base.r, "theta": base.theta, "phi": base.phi}
        coords[self.axis] = float(value)
        return SphericalPoint(**coords)


def evaluate(
    evaluator: str,
    tx: SphericalPoint,
    rx: SphericalPoint,
    profile: PhaseProfile,
    surface: SurfaceSpec | DiscreteSurfaceSpec,
    k: float,
    grid: OracleGrid | None = None,
) -> complex:
    """Space factor at ``rx`` by the named evaluator."""
    if evaluator == "discrete":
        if not isinstance(surface, DiscreteSurfaceSpec):
            raise DomainError("the discrete evaluator needs a DiscreteSurfaceSpec")
        return space_factor_discrete(space_factor_params(tx, rx, profile), surface, k)
    s = surface.surface if isinstance(surface, DiscreteSurfaceSpec) else surface
    if evaluator == "holographic":
        return space_factor_holographic(space_factor_params(tx, rx, profile), s, k)
    if evaluator == "farfield":
        return complex(space_factor_farfield(space_factor_params(tx, rx, profile), s, k))
    if evaluator == "oracle":
        return space_factor_oracle(tx, rx, profile, s, k, grid)
    raise DomainError(f"unknown evaluator {evaluator!r}; choose from {EVALUATORS}")


def beampattern_sweep(
    tx: SphericalPoint,
    rx: SphericalPoint | None,
    observation: SphericalPoint,
    surface: SurfaceSpec | DiscreteSurfaceSpec,
    k: float,
    sweep: Sweep,
    evaluator: str = "holographic",
    profile: PhaseProfile | None = None,
    grid: OracleGrid | None = None,
) -> np.ndarray:
    """Normalised beampattern ``|S|**2`` along a sweep of the observation point.

    With ``profile=None`` the surface is refocused on every swept observation
    point and the pattern is read at ``rx`` (or at the observation point
    itself when ``rx`` is None).  With an explicit ``profile`` the surface is
    fixed and the pattern is read at the swept point.

    Returns an array of shape ``(count, 2)`` holding ``(value, |S|**2)`` rows
    in sweep order.
    """
    if evaluator not in EVALUATORS:
        raise DomainError(f"unknown evaluator {evaluator!r}; choose from {EVALUATORS}")
    values = sweep.values()
    out = np.empty((values.size, 2))
    for i, v in enumerate(values):
        obs = sweep.point(observation, v)
        if profile is None:
            prof = beamfocusing_profile(tx, obs)
            target = obs if rx is None else rx
        else:
            prof, target = profile, obs
        S = evaluate(evaluator, tx, target, prof, surface, k, grid)
        out[i] = v, abs(S) ** 2
    return out
