"""Scenario configuration: presets, validation and derived link-budget quantities.

All values are stored internally in SI units (m, s, Hz, W, rad); dB and
degrees appear only at the configuration-file boundary.  Configuration
documents are YAML with unit-suffixed convenience keys (``altitude_km``,
``carrier_ghz``, ...) alongside the canonical SI keys; see
``docs/scenario_schema.md``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from importlib import resources
from typing import Any

import yaml

BOLTZMANN_JPK = 1.380649e-23

PRESET_ENV_VAR = "LEOCOV_PRESET_DIR"

_PRESET_FILES = {"S": "s_band.yaml", "Ka": "ka_band.yaml"}


class ScenarioError(ValueError):
    """Base class for configuration problems."""


class SchemaError(ScenarioError):
    """The document does not parse or contains unknown keys."""


class ValidationError(ScenarioError):
    """A parsed value violates a field invariant."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValidationError(message)


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x_lin: float) -> float:
    return 10.0 * math.log10(x_lin)


@dataclass(frozen=True)
class PhysicalConstants:
    earth_radius_m: float = 6.371e6
    light_speed_mps: float = 2.99792458e8
    earth_mu_m3ps2: float = 3.986004418e14
    earth_angular_rate_radps: float = 7.2921159e-5

    def __post_init__(self) -> None:
        _require(self.earth_radius_m > 0, "earth_radius_m must be positive")
        _require(self.light_speed_mps > 0, "light_speed_mps must be positive")
        _require(self.earth_mu_m3ps2 > 0, "earth_mu_m3ps2 must be positive")
        # Zero is allowed so a non-rotating Earth can be modelled in tests.
        _require(self.earth_angular_rate_radps >= 0,
                 "earth_angular_rate_radps must be nonnegative")


@dataclass(frozen=True)
class OrbitParams:
    altitude_m: float
    inclination_rad: float

    def __post_init__(self) -> None:
        _require(self.altitude_m > 0, "altitude_m must be positive")
        _require(0.0 <= self.inclination_rad <= math.pi,
                 "inclination_rad must lie in [0, pi]")


@dataclass(frozen=True)
class CellGeometry:
    hpbw_rad: float
    cell_radius_m: float
    center_offset_m: float
    min_center_orbit_distance_m: float
    max_elevation_rad: float
    min_elevation_rad: float

    def __post_init__(self) -> None:
        _require(0.0 < self.hpbw_rad < math.pi, "hpbw_rad must lie in (0, pi)")
        _require(self.cell_radius_m > 0, "cell_radius_m must be positive")
        _require(self.center_offset_m >= 0, "center_offset_m must be nonnegative")
        _require(self.min_center_orbit_distance_m >= 0,
                 "min_center_orbit_distance_m must be nonnegative")
        _require(0.0 < self.min_elevation_rad < self.max_elevation_rad <= math.pi / 2,
                 "need 0 < min_elevation < max_elevation <= pi/2")


@dataclass(frozen=True)
class RadioParams:
    carrier_hz: float
    wavelength_m: float
    subcarrier_spacing_hz: float
    symbol_duration_s: float
    bandwidth_hz: float
    eirp_density_dbw_per_mhz: float
    sat_max_gain_dbi: float
    terminal_gain_dbi: float
    rain_gain_db: float
    system_noise_temp_k: float
    tx_power_w: float
    noise_power_w: float
    aggregate_gain: float

    def __post_init__(self) -> None:
        _require(self.carrier_hz > 0, "carrier_hz must be positive")
        _require(self.subcarrier_spacing_hz > 0,
                 "subcarrier_spacing_hz must be positive")
        _require(self.bandwidth_hz > 0, "bandwidth_hz must be positive")
        _require(self.system_noise_temp_k >= 0,
                 "system_noise_temp_k must be nonnegative")
        _require(self.tx_power_w > 0, "tx_power_w must be positive")
        _require(self.noise_power_w >= 0, "noise_power_w must be nonnegative")
        _require(self.aggregate_gain > 0, "aggregate_gain must be positive")


@dataclass(frozen=True)
class ScenarioConfig:
    constants: PhysicalConstants
    orbit: OrbitParams
    cell: CellGeometry
    radio: RadioParams
    band_label: str  # "S" | "Ka" | "custom"


def cell_radius(altitude_m: float, hpbw_rad: float) -> float:
    """Footprint radius of a nadir-pointing beam: H * tan(hpbw / 2)."""
    if not altitude_m > 0:
        raise ValidationError("altitude_m must be positive")
    if not 0.0 <= hpbw_rad < math.pi:
        raise ValidationError("hpbw_rad must lie in [0, pi)")
    return altitude_m * math.tan(hpbw_rad / 2.0)


def min_center_orbit_distance(altitude_m: float, max_elevation_rad: float) -> float:
    """Ground distance from the cell center to the orbit track implied by the
    peak elevation the pass can reach: H / tan(alpha_max)."""
    if not max_elevation_rad > 0:
        raise ValidationError("max_elevation_rad must be positive")
    if max_elevation_rad > math.pi / 2:
        raise ValidationError("max_elevation_rad must not exceed pi/2")
    if max_elevation_rad == math.pi / 2:
        return 0.0
    return altitude_m / math.tan(max_elevation_rad)


# ---------------------------------------------------------------------------
# Document parsing
# ---------------------------------------------------------------------------

# (canonical_si_key, {alt_key: scale_or_converter})
_DEG = math.pi / 180.0


def _num(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{key}: expected a number, got {value!r}")
    return float(value)


class _Section:
    """Picks fields out of one mapping, resolving unit-suffixed aliases."""

    def __init__(self, name: str, data: dict[str, Any]):
        if not isinstance(data, dict):
            raise SchemaError(f"section '{name}' must be a mapping")
        self.name = name
        self.data = dict(data)
        self.used: set[str] = set()

    def get(self, si_key: str, aliases: dict[str, float] | None = None,
            default: float | None = None, required: bool = False) -> float | None:
        candidates = {si_key: 1.0}
        if aliases:
            candidates.update(aliases)
        found = [k for k in candidates if k in self.data]
        if len(found) > 1:
            raise SchemaError(
                f"{self.name}: keys {found} are aliases of one field; give one")
        if not found:
            if required:
                raise SchemaError(f"{self.name}: missing required key '{si_key}'")
            return default
        key = found[0]
        self.used.add(key)
        return _num(self.data[key], f"{self.name}.{key}") * candidates[key]

    def finish(self) -> None:
        unknown = set(self.data) - self.used
        if unknown:
            raise SchemaError(
                f"{self.name}: unknown keys {sorted(unknown)}")


def _deep_merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = value
    return out


def _preset_document(label: str) -> dict:
    filename = _PRESET_FILES.get(label)
    if filename is None:
        raise SchemaError(
            f"unknown preset '{label}'; valid presets: {sorted(_PRESET_FILES)}")
    preset_dir = os.environ.get(PRESET_ENV_VAR)
    if preset_dir:
        path = os.path.join(preset_dir, filename)
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = (resources.files("leocov") / "presets" / filename).read_text()
    return yaml.safe_load(text)


def scenario_from_dict(doc: dict[str, Any]) -> ScenarioConfig:
    """Build and fully derive a ScenarioConfig from a parsed document.

    A ``band`` key selects a built-in preset whose values act as defaults;
    everything the document states explicitly wins.
    """
    if not isinstance(doc, dict):
        raise SchemaError("top-level document must be a mapping")
    doc = dict(doc)
    band = doc.pop("band", "custom")
    if band != "custom":
        preset = _preset_document(str(band))
        preset.pop("band", None)
        doc = _deep_merge(preset, doc)

    known_sections = {"constants", "orbit", "cell", "radio"}
    unknown = set(doc) - known_sections
    if unknown:
        raise SchemaError(f"unknown top-level keys {sorted(unknown)}")

    const_sec = _Section("constants", doc.get("constants", {}))
    constants = PhysicalConstants(
        earth_radius_m=const_sec.get(
            "earth_radius_m", {"earth_radius_km": 1e3},
            default=PhysicalConstants.earth_radius_m),
        light_speed_mps=const_sec.get(
            "light_speed_mps", default=PhysicalConstants.light_speed_mps),
        earth_mu_m3ps2=const_sec.get(
            "earth_mu_m3ps2", default=PhysicalConstants.earth_mu_m3ps2),
        earth_angular_rate_radps=const_sec.get(
            "earth_angular_rate_radps",
            default=PhysicalConstants.earth_angular_rate_radps),
    )
    const_sec.finish()

    orbit_sec = _Section("orbit", doc.get("orbit", {}))
    orbit = OrbitParams(
        altitude_m=orbit_sec.get("altitude_m", {"altitude_km": 1e3}, required=True),
        inclination_rad=orbit_sec.get(
            "inclination_rad", {"inclination_deg": _DEG}, required=True),
    )
    orbit_sec.finish()

    cell_sec = _Section("cell", doc.get("cell", {}))
    hpbw = cell_sec.get("hpbw_rad", {"hpbw_deg": _DEG}, required=True)
    max_elev = cell_sec.get(
        "max_elevation_rad", {"max_elevation_deg": _DEG}, default=85.0 * _DEG)
    radius = cell_sec.get("cell_radius_m", {"cell_radius_km": 1e3})
    if radius is None:
        radius = cell_radius(orbit.altitude_m, hpbw)
    else:
        expected = cell_radius(orbit.altitude_m, hpbw)
        if abs(radius - expected) > 1e-6 * radius:
            raise ValidationError(
                f"cell_radius_m={radius} inconsistent with beamwidth-derived "
                f"radius {expected}")
    cell = CellGeometry(
        hpbw_rad=hpbw,
        cell_radius_m=radius,
        center_offset_m=cell_sec.get(
            "center_offset_m", {"center_offset_km": 1e3}, default=0.0),
        min_center_orbit_distance_m=min_center_orbit_distance(
            orbit.altitude_m, max_elev),
        max_elevation_rad=max_elev,
        min_elevation_rad=cell_sec.get(
            "min_elevation_rad", {"min_elevation_deg": _DEG}, default=10.0 * _DEG),
    )
    cell_sec.finish()

    radio_sec = _Section("radio", doc.get("radio", {}))
    carrier = radio_sec.get("carrier_hz", {"carrier_ghz": 1e9, "carrier_mhz": 1e6},
                            required=True)
    spacing = radio_sec.get(
        "subcarrier_spacing_hz", {"subcarrier_spacing_khz": 1e3}, required=True)
    bandwidth = radio_sec.get("bandwidth_hz", {"bandwidth_mhz": 1e6}, required=True)
    radio = _derive_radio(
        constants=constants,
        carrier_hz=carrier,
        subcarrier_spacing_hz=spacing,
        bandwidth_hz=bandwidth,
        eirp_density_dbw_per_mhz=radio_sec.get(
            "eirp_density_dbw_per_mhz", required=True),
        sat_max_gain_dbi=radio_sec.get("sat_max_gain_dbi", required=True),
        terminal_gain_dbi=radio_sec.get("terminal_gain_dbi", required=True),
        rain_gain_db=radio_sec.get("rain_gain_db", default=0.0),
        system_noise_temp_k=radio_sec.get("system_noise_temp_k", default=290.0),
    )
    radio_sec.finish()

    return ScenarioConfig(constants=constants, orbit=orbit, cell=cell,
                          radio=radio, band_label=str(band))


def _derive_radio(constants: PhysicalConstants, carrier_hz: float,
                  subcarrier_spacing_hz: float, bandwidth_hz: float,
                  eirp_density_dbw_per_mhz: float, sat_max_gain_dbi: float,
                  terminal_gain_dbi: float, rain_gain_db: float,
                  system_noise_temp_k: float) -> RadioParams:
    if bandwidth_hz <= 0:
        raise ValidationError("bandwidth_hz must be positive")
    wavelength = constants.light_speed_mps / carrier_hz
    tx_power_dbw = (eirp_density_dbw_per_mhz
                    + 10.0 * math.log10(bandwidth_hz / 1e6)
                    - sat_max_gain_dbi)
    tx_power_w = db_to_linear(tx_power_dbw)
    noise_power_w = BOLTZMANN_JPK * system_noise_temp_k * bandwidth_hz
    aggregate_gain = (tx_power_w
                      * db_to_linear(rain_gain_db)
                      * db_to_linear(terminal_gain_dbi)
                      * db_to_linear(sat_max_gain_dbi)
                      * (wavelength / (4.0 * math.pi)) ** 2)
    return RadioParams(
        carrier_hz=carrier_hz,
        wavelength_m=wavelength,
        subcarrier_spacing_hz=subcarrier_spacing_hz,
        symbol_duration_s=1.0 / subcarrier_spacing_hz,
        bandwidth_hz=bandwidth_hz,
        eirp_density_dbw_per_mhz=eirp_density_dbw_per_mhz,
        sat_max_gain_dbi=sat_max_gain_dbi,
        terminal_gain_dbi=terminal_gain_dbi,
        rain_gain_db=rain_gain_db,
        system_noise_temp_k=system_noise_temp_k,
        tx_power_w=tx_power_w,
        noise_power_w=noise_power_w,
        aggregate_gain=aggregate_gain,
    )


def derive_link_budget(config: ScenarioConfig) -> RadioParams:
    """Recompute every derived radio quantity from the primary fields."""
    return _derive_radio(
        constants=config.constants,
        carrier_hz=config.radio.carrier_hz,
        subcarrier_spacing_hz=config.radio.subcarrier_spacing_hz,
        bandwidth_hz=config.radio.bandwidth_hz,
        eirp_density_dbw_per_mhz=config.radio.eirp_density_dbw_per_mhz,
        sat_max_gain_dbi=config.radio.sat_max_gain_dbi,
        terminal_gain_dbi=config.radio.terminal_gain_dbi,
        rain_gain_db=config.radio.rain_gain_db,
        system_noise_temp_k=config.radio.system_noise_temp_k,
    )


def load_scenario(text: str) -> ScenarioConfig:
    """Parse a YAML scenario document and return the derived configuration."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(f"scenario document does not parse: {exc}") from exc
    if doc is None:
        doc = {}
    return scenario_from_dict(doc)


def load_scenario_file(path: str | os.PathLike) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path!r}: {exc}")
    return load_scenario(text)


def load_preset(label: str) -> ScenarioConfig:
    return scenario_from_dict({"band": label})


def scenario_to_dict(config: ScenarioConfig) -> dict[str, Any]:
    """Canonical SI-keyed document; reloading it reproduces the config exactly."""
    return {
        "band": "custom",
        "constants": {
            "earth_radius_m": config.constants.earth_radius_m,
            "light_speed_mps": config.constants.light_speed_mps,
            "earth_mu_m3ps2": config.constants.earth_mu_m3ps2,
            "earth_angular_rate_radps": config.constants.earth_angular_rate_radps,
        },
        "orbit": {
            "altitude_m": config.orbit.altitude_m,
            "inclination_rad": config.orbit.inclination_rad,
        },
        "cell": {
            "hpbw_rad": config.cell.hpbw_rad,
            "cell_radius_m": config.cell.cell_radius_m,
            "center_offset_m": config.cell.center_offset_m,
            "max_elevation_rad": config.cell.max_elevation_rad,
            "min_elevation_rad": config.cell.min_elevation_rad,
        },
        "radio": {
            "carrier_hz": config.radio.carrier_hz,
            "subcarrier_spacing_hz": config.radio.subcarrier_spacing_hz,
            "bandwidth_hz": config.radio.bandwidth_hz,
            "eirp_density_dbw_per_mhz": config.radio.eirp_density_dbw_per_mhz,
            "sat_max_gain_dbi": config.radio.sat_max_gain_dbi,
            "terminal_gain_dbi": config.radio.terminal_gain_dbi,
            "rain_gain_db": config.radio.rain_gain_db,
            "system_noise_temp_k": config.radio.system_noise_temp_k,
        },
    }


def scenario_to_yaml(config: ScenarioConfig) -> str:
    return yaml.safe_dump(scenario_to_dict(config), sort_keys=False)


def with_overrides(config: ScenarioConfig, **si_overrides: float) -> ScenarioConfig:
    """Return a new fully re-derived scenario with the given SI fields replaced.

    Recognized keys: altitude_m, inclination_rad, hpbw_rad, center_offset_m,
    max_elevation_rad, min_elevation_rad, subcarrier_spacing_hz, carrier_hz,
    bandwidth_hz, eirp_density_dbw_per_mhz, sat_max_gain_dbi,
    terminal_gain_dbi, rain_gain_db, system_noise_temp_k.
    """
    doc = scenario_to_dict(config)
    # Dependent fields must be rebuilt, so drop the stored derived radius when
    # any geometric driver changes.
    sections = {
        "altitude_m": "orbit", "inclination_rad": "orbit",
        "hpbw_rad": "cell", "center_offset_m": "cell",
        "max_elevation_rad": "cell", "min_elevation_rad": "cell",
        "carrier_hz": "radio", "subcarrier_spacing_hz": "radio",
        "bandwidth_hz": "radio", "eirp_density_dbw_per_mhz": "radio",
        "sat_max_gain_dbi": "radio", "terminal_gain_dbi": "radio",
        "rain_gain_db": "radio", "system_noise_temp_k": "radio",
    }
    for key, value in si_overrides.items():
        section = sections.get(key)
        if section is None:
            raise SchemaError(f"unknown override '{key}'")
        doc[section][key] = float(value)
        if key in ("altitude_m", "hpbw_rad"):
            doc["cell"].pop("cell_radius_m", None)
    result = scenario_from_dict(doc)
    return replace(result, band_label=config.band_label)
