"""Near-field space factor, scattered field and path loss of holographic reflecting surfaces."""

from .errors import DomainError, HoloIRSError, ResolutionError, ScenarioParseError
from .geometry import (
    ETA_0,
    FREE_SPACE,
    SPEED_OF_LIGHT,
    CartesianPoint,
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
from .incident import (
    ZERO_PROFILE,
    PhaseProfile,
    TransmitSource,
    beamfocusing_profile,
    exact_distance,
    fresnel_distance_term,
    incident_field_magnitude,
    steering_profile,
    surface_current,
)
from .link import (
    ElementPattern,
    LinkBudget,
    baseband_gain,
    discrete_power_gain,
    from_db,
    pathloss_antenna,
    pathloss_direct,
    pathloss_plate,
    plate_field_factor,
    received_snr,
    scattered_field_sq,
    to_db,
    two_user_interference,
)
from .spacefactor import (
    EPS_SWITCH,
    DiscreteSurfaceSpec,
    OracleGrid,
    SpaceFactorParams,
    Sweep,
    axis_factor,
    beampattern_sweep,
    space_factor_discrete,
    space_factor_farfield,
    space_factor_holographic,
    space_factor_oracle,
    space_factor_params,
)
from .specfun import erf_ray, fresnel_cs, fresnel_tail, gaussian_phase_integral, sinc

__version__ = "0.1.0"
