"""Pass kinematics: angular rates, the flat-Earth Doppler magnitude, the
common/residual split, and a spherical-geometry finite-difference oracle.

The per-terminal minimum track distance is approximated everywhere by the
cell-center value ``min_center_orbit_distance_m``; terminals closer to the
ground track than that see a clamped-to-zero Doppler (the radicand is
floored at zero), which keeps the magnitude continuous and nonnegative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scenario import PhysicalConstants, ScenarioConfig


@dataclass(frozen=True)
class DopplerContext:
    """Kinematic constants for one satellite position over one scenario."""
    omega_s_radps: float
    omega_f_radps: float
    rho_hz: float
    min_center_orbit_distance_m: float
    center_offset_m: float
    common_doppler_hz: float
    altitude_m: float
    earth_radius_m: float


@dataclass(frozen=True)
class DopplerResult:
    magnitude_hz: float
    residual_hz: float


def satellite_angular_rate(altitude_m: float,
                           constants: PhysicalConstants = PhysicalConstants()) -> float:
    """Circular-orbit angular rate sqrt(mu / (r_e + H)^3)."""
    return math.sqrt(constants.earth_mu_m3ps2
                     / (constants.earth_radius_m + altitude_m) ** 3)


def effective_angular_rate(omega_s_radps: float, inclination_rad: float,
                           constants: PhysicalConstants = PhysicalConstants()) -> float:
    """Satellite angular rate relative to the rotating Earth,
    omega_s - omega_E * cos(i)."""
    return omega_s_radps - constants.earth_angular_rate_radps * math.cos(inclination_rad)


def doppler_scale(carrier_hz: float, omega_f_radps: float,
                  constants: PhysicalConstants = PhysicalConstants()) -> float:
    """Doppler scale f_o * r_e * omega_F / c (Hz)."""
    return carrier_hz * constants.earth_radius_m * omega_f_radps / constants.light_speed_mps


def doppler_magnitude(x_t_m, x_min_m: float, altitude_m: float, rho_hz: float,
                      constants: PhysicalConstants = PhysicalConstants()):
    """Flat-Earth Doppler magnitude at horizontal distance x_t from the
    subpoint, given the track's minimum distance x_min.

    Accepts scalars or numpy arrays for ``x_t_m``.  Negative radicands
    (terminal inside the closest-approach distance) are clamped to zero.
    """
    r_e = constants.earth_radius_m
    r_o = r_e / (r_e + altitude_m)
    x = np.asarray(x_t_m, dtype=float)
    radicand = np.maximum(0.0, x * x - x_min_m * x_min_m)
    denom = (r_o * altitude_m) ** 2 + r_o * x * x
    result = rho_hz * np.sqrt(radicand / denom)
    if np.isscalar(x_t_m):
        return float(result)
    return result


def make_context(scenario: ScenarioConfig) -> DopplerContext:
    """Precompute the kinematic constants and the common Doppler at the
    cell center for one scenario snapshot."""
    omega_s = satellite_angular_rate(scenario.orbit.altitude_m, scenario.constants)
    omega_f = effective_angular_rate(omega_s, scenario.orbit.inclination_rad,
                                     scenario.constants)
    rho = doppler_scale(scenario.radio.carrier_hz, omega_f, scenario.constants)
    x_min = scenario.cell.min_center_orbit_distance_m
    common = doppler_magnitude(scenario.cell.center_offset_m, x_min,
                               scenario.orbit.altitude_m, rho, scenario.constants)
    return DopplerContext(
        omega_s_radps=omega_s,
        omega_f_radps=omega_f,
        rho_hz=rho,
        min_center_orbit_distance_m=x_min,
        center_offset_m=scenario.cell.center_offset_m,
        common_doppler_hz=common,
        altitude_m=scenario.orbit.altitude_m,
        earth_radius_m=scenario.constants.earth_radius_m,
    )


def residual_doppler(context: DopplerContext, x_t_m):
    """Doppler left after subtracting the common (cell-center) component."""
    constants = PhysicalConstants(earth_radius_m=context.earth_radius_m)
    chi = doppler_magnitude(x_t_m, context.min_center_orbit_distance_m,
                            context.altitude_m, context.rho_hz, constants)
    return chi - context.common_doppler_hz


def doppler_at(context: DopplerContext, x_t_m: float) -> DopplerResult:
    constants = PhysicalConstants(earth_radius_m=context.earth_radius_m)
    chi = doppler_magnitude(x_t_m, context.min_center_orbit_distance_m,
                            context.altitude_m, context.rho_hz, constants)
    return DopplerResult(magnitude_hz=chi,
                         residual_hz=chi - context.common_doppler_hz)


# ---------------------------------------------------------------------------
# Independent validation oracle
# ---------------------------------------------------------------------------

def _oracle_geometry(x_t_m: float, x_min_m: float, altitude_m: float,
                     earth_radius_m: float):
    """Terminal on the sphere at cross-track angle x_min/r_e from the orbit
    plane; the satellite's along-track angle is chosen so the ground arc to
    the subpoint equals x_t."""
    r_e = earth_radius_m
    beta = x_min_m / r_e
    gamma = x_t_m / r_e
    cos_u0 = math.cos(gamma) / math.cos(beta)
    if cos_u0 > 1.0 + 1e-12:
        raise ValueError(
            f"degenerate geometry: x_t={x_t_m} below the track minimum {x_min_m}")
    u0 = math.acos(min(1.0, cos_u0))
    terminal = np.array([r_e * math.cos(beta), 0.0, r_e * math.sin(beta)])
    return u0, terminal


def doppler_oracle_finite_difference(x_t_m: float, x_min_m: float,
                                     altitude_m: float,
                                     scenario: ScenarioConfig,
                                     dt_s: float = 1e-3) -> float:
    """Doppler magnitude from a central finite difference of the 3-D slant
    range along a circular inclined pass at the scenario's relative angular
    rate.  Used only to bound the closed form's approximation error."""
    constants = scenario.constants
    r_e = constants.earth_radius_m
    r_orbit = r_e + altitude_m
    omega_s = satellite_angular_rate(altitude_m, constants)
    omega_f = effective_angular_rate(omega_s, scenario.orbit.inclination_rad,
                                     constants)
    u0, terminal = _oracle_geometry(x_t_m, x_min_m, altitude_m, r_e)

    def slant(t: float) -> float:
        u = u0 + omega_f * t
        sat = np.array([r_orbit * math.cos(u), r_orbit * math.sin(u), 0.0])
        return float(np.linalg.norm(sat - terminal))

    range_rate = (slant(dt_s) - slant(-dt_s)) / (2.0 * dt_s)
    return scenario.radio.carrier_hz * abs(range_rate) / constants.light_speed_mps


def oracle_elevation_rad(x_t_m: float, altitude_m: float,
                         earth_radius_m: float) -> float:
    """True (spherical) elevation of the satellite seen from a terminal at
    ground arc distance x_t from the subpoint."""
    r_e = earth_radius_m
    r_orbit = r_e + altitude_m
    gamma = x_t_m / r_e
    slant = math.sqrt(r_e * r_e + r_orbit * r_orbit
                      - 2.0 * r_e * r_orbit * math.cos(gamma))
    sin_elev = (r_orbit * math.cos(gamma) - r_e) / slant
    return math.asin(max(-1.0, min(1.0, sin_elev)))
