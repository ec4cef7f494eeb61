"""Doppler, inter-carrier interference and downlink coverage probability
for ground terminals served by a LEO satellite beam."""

__version__ = "0.1.0"

from .coverage import (coverage_exact_numeric, coverage_ideal,
                       coverage_residual, coverage_uncompensated)
from .doppler import (DopplerContext, doppler_magnitude,
                      doppler_oracle_finite_difference, doppler_scale,
                      effective_angular_rate, make_context, residual_doppler,
                      satellite_angular_rate)
from .geometry import distance_cdf, sample_terminal, slant_distance
from .montecarlo import McConfig, McEstimate, estimate_coverage, validate
from .ofdm import link_attenuation, power_split, sinc, sinc_inverse, sinr
from .scenario import (CellGeometry, OrbitParams, PhysicalConstants,
                       RadioParams, ScenarioConfig, cell_radius,
                       derive_link_budget, load_preset, load_scenario,
                       min_center_orbit_distance, with_overrides)
from .sweeps import SweepSpec, figure_preset, run_sweep

__all__ = [
    "CellGeometry", "DopplerContext", "McConfig", "McEstimate",
    "OrbitParams", "PhysicalConstants", "RadioParams", "ScenarioConfig",
    "SweepSpec", "cell_radius", "coverage_exact_numeric", "coverage_ideal",
    "coverage_residual", "coverage_uncompensated", "derive_link_budget",
    "distance_cdf", "doppler_magnitude", "doppler_oracle_finite_difference",
    "doppler_scale", "effective_angular_rate", "estimate_coverage",
    "figure_preset", "link_attenuation", "load_preset", "load_scenario",
    "make_context", "min_center_orbit_distance", "power_split",
    "residual_doppler", "run_sweep", "sample_terminal",
    "satellite_angular_rate", "sinc", "sinc_inverse", "sinr",
    "slant_distance", "validate", "with_overrides",
]
