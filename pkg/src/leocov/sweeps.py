"""Parameter sweeps and figure-data presets.

Each preset bundles one or more sweep jobs that emit the CSV behind one
panel of the coverage study: band comparison, subcarrier-spacing sweep,
beamwidth sweep, and satellite-location sweep.  Rendering is out of scope
here; the plots package consumes these CSVs.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

from .coverage import coverage_by_mode
from .doppler import make_context
from .montecarlo import McConfig, estimate_curve
from .scenario import ScenarioConfig, load_preset, with_overrides

DEG = math.pi / 180.0

# 1 dB steps bracketing the visible dynamic range of the coverage curves.
DEFAULT_TAU_GRID_DB = tuple(float(t) for t in range(-10, 31))

SWEEP_VARIABLES = ("tau_db", "subcarrier_spacing_hz", "hpbw_rad",
                   "altitude_m", "center_offset_m")
ANALYTIC_MODES = ("ideal", "residual", "uncompensated", "exact")


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: tuple
    fixed_overrides: dict = field(default_factory=dict)
    modes: tuple = ("ideal", "residual", "uncompensated")
    tau_grid_db: tuple = DEFAULT_TAU_GRID_DB

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(
                f"unknown sweep variable '{self.variable}'; "
                f"choose from {SWEEP_VARIABLES}")
        if not self.values:
            raise ValueError("sweep values must be nonempty")
        for mode in self.modes:
            if mode not in ANALYTIC_MODES + ("mc",):
                raise ValueError(f"unknown mode '{mode}'")


@dataclass(frozen=True)
class FigureJob:
    label: str
    band: str
    spec: SweepSpec


FIGURE_NAMES = ("fig2a", "fig2b", "fig2c", "fig2d")


def figure_preset(name: str) -> list[FigureJob]:
    """Sweep jobs for one figure panel; one CSV per job."""
    taus = DEFAULT_TAU_GRID_DB
    if name == "fig2a":
        modes = ("ideal", "residual", "uncompensated", "mc")
        return [FigureJob(label=f"fig2a_{band}", band=band,
                          spec=SweepSpec(variable="tau_db", values=taus,
                                         modes=modes, tau_grid_db=taus))
                for band in ("S", "Ka")]
    if name == "fig2b":
        return [FigureJob(
            label="fig2b_S", band="S",
            spec=SweepSpec(variable="subcarrier_spacing_hz",
                           values=(15e3, 30e3, 60e3, 120e3),
                           modes=("ideal", "residual", "uncompensated"),
                           tau_grid_db=taus))]
    if name == "fig2c":
        jobs = []
        for band, base_deg in (("S", 8.832), ("Ka", 4.4127)):
            values = tuple(base_deg * f * DEG for f in (0.5, 1.0, 2.0))
            jobs.append(FigureJob(
                label=f"fig2c_{band}", band=band,
                spec=SweepSpec(variable="hpbw_rad", values=values,
                               modes=("ideal", "residual"),
                               tau_grid_db=taus)))
        return jobs
    if name == "fig2d":
        return [
            FigureJob(label="fig2d_altitude_Ka", band="Ka",
                      spec=SweepSpec(variable="altitude_m",
                                     values=(600e3, 1200e3),
                                     modes=("ideal", "residual"),
                                     tau_grid_db=taus)),
            FigureJob(label="fig2d_offset_Ka", band="Ka",
                      spec=SweepSpec(variable="center_offset_m",
                                     values=(150e3, 300e3, 450e3, 600e3),
                                     fixed_overrides={"altitude_m": 1200e3},
                                     modes=("ideal", "residual"),
                                     tau_grid_db=taus)),
        ]
    raise ValueError(f"unknown figure preset '{name}'; valid names: "
                     f"{', '.join(FIGURE_NAMES)}")


def _fmt(value: float) -> str:
    return format(value, ".12g")


def run_sweep(spec: SweepSpec, scenario: ScenarioConfig,
              mc_config: McConfig | None = None) -> str:
    """Run one sweep and return its CSV text.

    One row per (value, threshold); dependent quantities (cell radius,
    track distance, common Doppler, link budget) are re-derived per value.
    """
    wants_mc = "mc" in spec.modes
    if wants_mc and mc_config is None:
        raise ValueError("mc mode requested but no Monte-Carlo config given")
    analytic_modes = [m for m in spec.modes if m != "mc"]

    columns = []
    if spec.variable != "tau_db":
        columns.append(spec.variable)
    columns.append("tau_db")
    columns.extend(f"p_{m}" for m in analytic_modes)
    if wants_mc:
        columns.extend(["p_mc", "se_mc"])

    out = io.StringIO()
    out.write(",".join(columns) + "\n")

    sweep_values = (None,) if spec.variable == "tau_db" else spec.values
    for value in sweep_values:
        overrides = dict(spec.fixed_overrides)
        if value is not None:
            overrides[spec.variable] = value
        sc = with_overrides(scenario, **overrides) if overrides else scenario
        context = make_context(sc)
        taus = [10.0 ** (t / 10.0) for t in spec.tau_grid_db]
        analytic = {m: [coverage_by_mode(m, tau, sc, context) for tau in taus]
                    for m in analytic_modes}
        mc = estimate_curve(taus, sc, mc_config) if wants_mc else None
        for i, tau_db in enumerate(spec.tau_grid_db):
            row = []
            if value is not None:
                row.append(_fmt(value))
            row.append(_fmt(tau_db))
            row.extend(_fmt(analytic[m][i]) for m in analytic_modes)
            if mc is not None:
                row.extend([_fmt(mc[i].probability), _fmt(mc[i].standard_error)])
            out.write(",".join(row) + "\n")
    return out.getvalue()


def run_figure(name: str, mc_config: McConfig | None = None,
               scenarios: dict[str, ScenarioConfig] | None = None) -> dict[str, str]:
    """All CSVs for one figure preset, keyed by job label."""
    results = {}
    for job in figure_preset(name):
        if scenarios and job.band in scenarios:
            scenario = scenarios[job.band]
        else:
            scenario = load_preset(job.band)
        results[job.label] = run_sweep(job.spec, scenario, mc_config)
    return results
