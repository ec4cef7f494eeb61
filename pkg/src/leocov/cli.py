"""Command-line front end.

Subcommands: coverage, doppler, cdf, mc, validate, sweep, figure.
Exit codes: 0 success, 1 validation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import io
import os
import sys

from . import __version__
from .coverage import coverage_by_mode
from .doppler import doppler_at, make_context
from .geometry import distance_cdf
from .montecarlo import MODES as MC_MODES
from .montecarlo import McConfig, estimate_coverage, validate
from .scenario import ScenarioError, load_preset, load_scenario_file
from .sweeps import (ANALYTIC_MODES, DEFAULT_TAU_GRID_DB, FIGURE_NAMES,
                     SweepSpec, figure_preset, run_sweep)


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _scenario_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--scenario", metavar="PATH",
                       help="YAML scenario document")
    group.add_argument("--preset", choices=["S", "Ka"], default="S",
                       help="built-in band preset (default: S)")


def _tau_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tau-min-db", type=float, default=-10.0)
    parser.add_argument("--tau-max-db", type=float, default=30.0)
    parser.add_argument("--tau-step-db", type=float, default=1.0)


def _out_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", metavar="PATH",
                        help="output file (default: stdout)")
    parser.add_argument("--format", choices=["csv"], default="csv")


def _load(args: argparse.Namespace):
    if args.scenario:
        return load_scenario_file(args.scenario)
    return load_preset(args.preset)


def _tau_grid(args: argparse.Namespace) -> list[float]:
    grid = []
    tau = args.tau_min_db
    while tau <= args.tau_max_db + 1e-9:
        grid.append(round(tau, 9))
        tau += args.tau_step_db
    return grid


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise SystemExit(f"error: {flag} expects a comma-separated number list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leocov",
        description="Doppler, inter-carrier interference and coverage "
                    "probability for LEO satellite downlinks")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_cov = sub.add_parser("coverage", help="analytic coverage curves as CSV")
    _scenario_args(p_cov)
    _tau_args(p_cov)
    _out_arg(p_cov)
    p_cov.add_argument("--modes", default="ideal,residual,uncompensated",
                       help=f"comma list from {ANALYTIC_MODES}")

    p_dop = sub.add_parser("doppler", help="Doppler split for given distances")
    _scenario_args(p_dop)
    _out_arg(p_dop)
    p_dop.add_argument("--x-t-km", required=True,
                       help="comma-separated horizontal distances (km)")

    p_cdf = sub.add_parser("cdf", help="horizontal-distance CDF as CSV")
    _scenario_args(p_cdf)
    _out_arg(p_cdf)
    p_cdf.add_argument("--points", type=int, default=200)

    p_mc = sub.add_parser("mc", help="Monte-Carlo coverage estimate")
    _scenario_args(p_mc)
    _out_arg(p_mc)
    p_mc.add_argument("--tau-db", type=float, required=True)
    p_mc.add_argument("--samples", type=int, default=1_000_000)
    p_mc.add_argument("--seed", type=int, default=1)
    p_mc.add_argument("--mode", choices=MC_MODES, default="residual")
    p_mc.add_argument("--workers", type=int, default=1,
                      help="worker hint; results are partition-independent")

    p_val = sub.add_parser("validate",
                           help="analytic-vs-Monte-Carlo agreement report")
    _scenario_args(p_val)
    _tau_args(p_val)
    _out_arg(p_val)
    p_val.add_argument("--samples", type=int, default=1_000_000)
    p_val.add_argument("--seed", type=int, default=1)

    p_sweep = sub.add_parser("sweep", help="parameter sweep as CSV")
    _scenario_args(p_sweep)
    _tau_args(p_sweep)
    _out_arg(p_sweep)
    p_sweep.add_argument("--variable", required=True)
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated SI values")
    p_sweep.add_argument("--modes", default="ideal,residual,uncompensated")
    p_sweep.add_argument("--samples", type=int, default=100_000)
    p_sweep.add_argument("--seed", type=int, default=1)

    p_fig = sub.add_parser("figure", help="figure-preset CSV data")
    p_fig.add_argument("--name", required=True, choices=FIGURE_NAMES)
    p_fig.add_argument("--out-dir", default=".",
                       help="directory receiving one CSV per sweep job")
    p_fig.add_argument("--samples", type=int, default=100_000)
    p_fig.add_argument("--seed", type=int, default=1)
    return parser


def _cmd_coverage(args) -> int:
    scenario = _load(args)
    modes = tuple(m.strip() for m in args.modes.split(",") if m.strip())
    for mode in modes:
        if mode not in ANALYTIC_MODES:
            raise SystemExit(f"error: unknown mode '{mode}'")
    spec = SweepSpec(variable="tau_db", values=tuple(_tau_grid(args)),
                     modes=modes, tau_grid_db=tuple(_tau_grid(args)))
    _emit(args, run_sweep(spec, scenario))
    return 0


def _cmd_doppler(args) -> int:
    scenario = _load(args)
    context = make_context(scenario)
    out = io.StringIO()
    out.write("x_t_m,doppler_hz,common_hz,residual_hz\n")
    for x_km in _parse_float_list(args.x_t_km, "--x-t-km"):
        result = doppler_at(context, x_km * 1e3)
        out.write(",".join([
            _fmt(x_km * 1e3), _fmt(result.magnitude_hz),
            _fmt(context.common_doppler_hz), _fmt(result.residual_hz)]) + "\n")
    _emit(args, out.getvalue())
    return 0


def _cmd_cdf(args) -> int:
    scenario = _load(args)
    r_c = scenario.cell.cell_radius_m
    offset = scenario.cell.center_offset_m
    out = io.StringIO()
    out.write("x_m,cdf\n")
    for i in range(args.points + 1):
        x = (r_c + offset) * i / args.points
        out.write(f"{_fmt(x)},{_fmt(distance_cdf(x, r_c, offset))}\n")
    _emit(args, out.getvalue())
    return 0


def _cmd_mc(args) -> int:
    scenario = _load(args)
    config = McConfig(samples=args.samples, seed=args.seed, mode=args.mode,
                      worker_hint=args.workers)
    est = estimate_coverage(10.0 ** (args.tau_db / 10.0), scenario, config)
    out = ("tau_db,mode,probability,standard_error,samples,seed\n"
           f"{_fmt(args.tau_db)},{est.mode},{_fmt(est.probability)},"
           f"{_fmt(est.standard_error)},{est.samples},{est.seed}\n")
    _emit(args, out)
    return 0


def _cmd_validate(args) -> int:
    scenario = _load(args)
    config = McConfig(samples=args.samples, seed=args.seed)
    report = validate(scenario, _tau_grid(args), config)
    out = io.StringIO()
    out.write("mode,tau_db,analytic,mc,standard_error,z_score,within_3se\n")
    for row in report.rows:
        out.write(",".join([
            row.mode, _fmt(row.tau_db), _fmt(row.analytic), _fmt(row.mc),
            _fmt(row.standard_error), _fmt(row.z_score),
            str(int(row.within_3se))]) + "\n")
    _emit(args, out.getvalue())
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: max |analytic - mc| = {report.max_abs_gap:.3e}, "
          f"{report.exceed_fraction * 100:.2f}% of points beyond 3 SE",
          file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_sweep(args) -> int:
    scenario = _load(args)
    modes = tuple(m.strip() for m in args.modes.split(",") if m.strip())
    spec = SweepSpec(variable=args.variable,
                     values=tuple(_parse_float_list(args.values, "--values")),
                     modes=modes, tau_grid_db=tuple(_tau_grid(args)))
    mc_config = McConfig(samples=args.samples, seed=args.seed) \
        if "mc" in modes else None
    _emit(args, run_sweep(spec, scenario, mc_config))
    return 0


def _cmd_figure(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    mc_config = McConfig(samples=args.samples, seed=args.seed)
    for job in figure_preset(args.name):
        scenario = load_preset(job.band)
        csv_text = run_sweep(job.spec, scenario, mc_config)
        path = os.path.join(args.out_dir, f"{job.label}.csv")
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(csv_text)
        print(path)
    return 0


_COMMANDS = {
    "coverage": _cmd_coverage,
    "doppler": _cmd_doppler,
    "cdf": _cmd_cdf,
    "mc": _cmd_mc,
    "validate": _cmd_validate,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
