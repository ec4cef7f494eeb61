"""Render coverage-sweep CSV files into threshold-vs-coverage charts.

Input files follow the ``leocov`` CLI schema: a ``tau_db`` axis column,
one ``p_<mode>`` column per curve, optionally a leading sweep-variable
column (then rows are grouped per swept value) and ``se_*`` columns with
standard errors. Rendering is read-only: nothing is recomputed.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

PANELS = ("fig2a", "fig2b", "fig2c", "fig2d")

AXIS_COLUMN = "tau_db"

_SWEEP_LABELS = {
    "subcarrier_spacing_hz": ("{:.0f} kHz", 1e-3),
    "hpbw_rad": ("{:.2f}\N{DEGREE SIGN}", 57.29577951308232),
    "altitude_m": ("{:.0f} km", 1e-3),
    "center_offset_m": ("{:.0f} km", 1e-3),
}


class CsvSchemaError(ValueError):
    """A CSV file does not match the sweep-output schema."""


@dataclass(frozen=True)
class Series:
    label: str
    tau_db: tuple
    probability: tuple
    standard_error: tuple | None = None


@dataclass(frozen=True)
class FigureJob:
    csv_paths: tuple
    panel: str
    output_image_path: str
    style_options: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.panel not in PANELS:
            raise ValueError(
                f"unknown panel '{self.panel}'; choose from {PANELS}")
        if not self.csv_paths:
            raise ValueError("at least one CSV path is required")


def _read(path: str) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise CsvSchemaError(f"{path}: file is empty")
    if frame.empty:
        raise CsvSchemaError(f"{path}: no data rows")
    if AXIS_COLUMN not in frame.columns:
        raise CsvSchemaError(f"{path}: missing required column "
                             f"'{AXIS_COLUMN}'")
    return frame


def _sweep_label(variable: str, value: float) -> str:
    fmt, scale = _SWEEP_LABELS.get(variable, ("{:g}", 1.0))
    return f"{variable}={fmt.format(value * scale)}"


def extract_series(path: str) -> list[Series]:
    """One series per data column, per swept value if the file has one."""
    frame = _read(path)
    prob_columns = [c for c in frame.columns if c.startswith("p_")]
    if not prob_columns:
        raise CsvSchemaError(f"{path}: missing data columns; expected at "
                             f"least one 'p_<mode>' column")
    sweep_columns = [c for c in frame.columns
                     if c != AXIS_COLUMN and not c.startswith("p_")
                     and not c.startswith("se_")]
    if len(sweep_columns) > 1:
        raise CsvSchemaError(f"{path}: more than one sweep column: "
                             f"{sweep_columns}")
    stem = os.path.splitext(os.path.basename(path))[0]

    groups = [(None, frame)]
    if sweep_columns:
        variable = sweep_columns[0]
        groups = [(value, group) for value, group
                  in frame.groupby(variable, sort=False)]

    series = []
    for value, group in groups:
        for column in prob_columns:
            parts = [stem]
            if value is not None:
                parts.append(_sweep_label(sweep_columns[0], value))
            parts.append(column[2:])
            se_column = "se_" + column[2:]
            errors = tuple(group[se_column]) \
                if se_column in group.columns else None
            series.append(Series(label=" ".join(parts),
                                 tau_db=tuple(group[AXIS_COLUMN]),
                                 probability=tuple(group[column]),
                                 standard_error=errors))
    return series


def render(job: FigureJob) -> str:
    """Draw every series from every CSV on one panel; returns the image path.

    All validation happens before the figure is touched, so a schema error
    never leaves a partial image behind.
    """
    all_series = []
    for path in job.csv_paths:
        all_series.extend(extract_series(path))

    style = job.style_options
    fig, axes = plt.subplots(figsize=style.get("figsize", (7.0, 4.5)))
    try:
        for series in all_series:
            line, = axes.plot(series.tau_db, series.probability,
                              label=series.label)
            if series.standard_error is not None:
                low = [p - 3 * s for p, s
                       in zip(series.probability, series.standard_error)]
                high = [p + 3 * s for p, s
                        in zip(series.probability, series.standard_error)]
                axes.fill_between(series.tau_db, low, high,
                                  color=line.get_color(), alpha=0.2)
        axes.set_xlabel(style.get("xlabel", "SINR threshold (dB)"))
        axes.set_ylabel(style.get("ylabel", "Coverage probability"))
        axes.set_title(style.get("title", job.panel))
        if style.get("logy"):
            axes.set_yscale("log")
        else:
            axes.set_ylim(-0.02, 1.02)
        axes.grid(True, alpha=0.3)
        axes.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(job.output_image_path)
    finally:
        plt.close(fig)
    return job.output_image_path
