"""OFDM impairment math: sinc and its principal-branch inverse, link
attenuation, the useful/ICI power split, and the resulting SINR.

Normalized convention throughout: sinc(x) = sin(pi x) / (pi x), so a
frequency offset of one subcarrier spacing (offset * T = 1) lands on the
first orthogonality null.  The infinite-subcarrier ICI model is used as is;
it is accurate for symbol sizes above roughly 60 subcarriers and is the
center-subcarrier worst case for edge subcarriers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scenario import RadioParams, ScenarioConfig, db_to_linear

_BISECT_MAX_ITER = 200
_BISECT_WIDTH = 1e-14


@dataclass(frozen=True)
class LinkBudget:
    attenuation_amplitude: float
    useful_power_w: float
    ici_power_w: float
    noise_power_w: float


@dataclass(frozen=True)
class SinrSample:
    sinr_linear: float
    x_t_m: float
    residual_hz: float


def sinc(x):
    """Normalized sinc, sin(pi x)/(pi x), with sinc(0) = 1."""
    return np.sinc(x)


def sinc_inverse(y: float) -> float:
    """Inverse of sinc on [0, 1], where it decreases strictly from 1 to 0.

    Bisection: unconditionally convergent on the monotone branch.
    """
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"sinc_inverse requires y in [0, 1], got {y}")
    if y == 1.0:
        return 0.0
    if y == 0.0:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if float(np.sinc(mid)) > y:
            lo = mid
        else:
            hi = mid
        if hi - lo < _BISECT_WIDTH:
            break
    return 0.5 * (lo + hi)


def link_attenuation(x_t_m, radio: RadioParams, altitude_m: float):
    """Amplitude attenuation sqrt(l G_R G_max) * lambda / (4 pi D)."""
    gain_amplitude = math.sqrt(db_to_linear(radio.rain_gain_db)
                               * db_to_linear(radio.terminal_gain_dbi)
                               * db_to_linear(radio.sat_max_gain_dbi))
    distance = np.hypot(x_t_m, altitude_m)
    return gain_amplitude * radio.wavelength_m / (4.0 * np.pi * distance)


def power_split(residual_hz, symbol_duration_s: float, eta):
    """Split |eta|^2 into useful power and ICI for a frequency offset held
    over one symbol: useful = |eta|^2 sinc^2(offset T), ICI the remainder."""
    s2 = np.sinc(np.asarray(residual_hz) * symbol_duration_s) ** 2
    eta2 = np.abs(eta) ** 2
    return eta2 * s2, eta2 * (1.0 - s2)


def sinr_linear(x_t_m, residual_hz, scenario: ScenarioConfig):
    """SINR with an offset-induced ICI floor; vectorized over inputs.

    useful = A sinc^2(offset T) / D^2 against ICI + noise, where
    A = P_tx l G_R G_max (lambda / 4 pi)^2 and D^2 = x^2 + H^2.
    """
    radio = scenario.radio
    aggregate = radio.aggregate_gain
    noise = radio.noise_power_w
    d2 = np.asarray(x_t_m, dtype=float) ** 2 + scenario.orbit.altitude_m ** 2
    s2 = np.sinc(np.asarray(residual_hz) * radio.symbol_duration_s) ** 2
    useful = aggregate * s2 / d2
    interference = aggregate * (1.0 - s2) / d2
    denom = interference + noise
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(denom > 0.0, useful / denom,
                       np.where(useful > 0.0, np.inf, 0.0))
    if np.isscalar(x_t_m) and np.isscalar(residual_hz):
        return float(out)
    return out


def sinr(x_t_m: float, residual_hz: float, scenario: ScenarioConfig) -> SinrSample:
    return SinrSample(sinr_linear=sinr_linear(x_t_m, residual_hz, scenario),
                      x_t_m=x_t_m, residual_hz=residual_hz)
