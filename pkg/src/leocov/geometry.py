"""Disc-cell geometry: horizontal-distance CDF, uniform sampling, slant range.

The serving beam footprint is a disc of radius R centered at C.  The
satellite subpoint sits at horizontal distance ``center_offset_m`` from C.
``distance_cdf`` gives the distribution of the horizontal distance from a
uniformly placed terminal to the subpoint; outside the listed branches the
CDF is clamped to 0 below the support and 1 above it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Tolerance absorbing floating-point drift in the arccos arguments at the
# branch edges.
_ACOS_SLACK = 1e-12


@dataclass(frozen=True)
class TerminalSample:
    radial_m: float
    azimuth_rad: float
    horizontal_distance_m: float


def _clamped_acos(value: float) -> float:
    if value > 1.0:
        if value > 1.0 + _ACOS_SLACK:
            raise ValueError(f"acos argument {value} out of range")
        value = 1.0
    elif value < -1.0:
        if value < -1.0 - _ACOS_SLACK:
            raise ValueError(f"acos argument {value} out of range")
        value = -1.0
    return math.acos(value)


def distance_cdf(x_m: float, cell_radius_m: float, center_offset_m: float) -> float:
    """P(horizontal distance to the subpoint <= x) for a uniform terminal.

    Piecewise: a pure quadratic while the circle of radius x around the
    subpoint lies inside the cell, then a circle-circle lens area; clamped
    to [0, 1] outside the support.
    """
    if cell_radius_m <= 0:
        raise ValueError("cell_radius_m must be positive")
    if center_offset_m < 0:
        raise ValueError("center_offset_m must be nonnegative")
    r_c = cell_radius_m
    offset = center_offset_m
    if x_m <= max(0.0, offset - r_c):
        return 0.0
    if x_m >= r_c + offset:
        return 1.0
    if offset == 0.0:
        return (x_m / r_c) ** 2
    if x_m <= r_c - offset:
        return (x_m / r_c) ** 2
    theta = _clamped_acos(
        (x_m * x_m + offset * offset - r_c * r_c) / (2.0 * offset * x_m))
    phi = _clamped_acos(
        (r_c * r_c + offset * offset - x_m * x_m) / (2.0 * offset * r_c))
    value = ((x_m * x_m) / (math.pi * r_c * r_c)
             * (theta - 0.5 * math.sin(2.0 * theta))
             + (phi - 0.5 * math.sin(2.0 * phi)) / math.pi)
    return min(1.0, max(0.0, value))


def sample_horizontal_distances(rng: np.random.Generator, cell_radius_m: float,
                                center_offset_m: float, n: int) -> np.ndarray:
    """Horizontal distances to the subpoint for n uniform terminals."""
    u = rng.random(n)
    v = rng.random(n)
    radial = cell_radius_m * np.sqrt(u)
    azimuth = 2.0 * np.pi * v
    return np.sqrt(radial * radial + center_offset_m * center_offset_m
                   - 2.0 * radial * center_offset_m * np.cos(azimuth))


def sample_terminal(rng: np.random.Generator, cell_radius_m: float,
                    center_offset_m: float) -> TerminalSample:
    """Draw one terminal uniformly over the disc."""
    u, v = rng.random(2)
    radial = cell_radius_m * math.sqrt(u)
    azimuth = 2.0 * math.pi * v
    horizontal = math.sqrt(radial * radial + center_offset_m * center_offset_m
                           - 2.0 * radial * center_offset_m * math.cos(azimuth))
    return TerminalSample(radial_m=radial, azimuth_rad=azimuth,
                          horizontal_distance_m=horizontal)


def slant_distance(horizontal_m, altitude_m):
    """Straight-line terminal-to-satellite distance sqrt(X^2 + H^2)."""
    return np.hypot(horizontal_m, altitude_m)
