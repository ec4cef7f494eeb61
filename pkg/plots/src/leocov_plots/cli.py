"""``render_figure`` command: coverage-sweep CSVs in, one chart out."""
from __future__ import annotations

import argparse
import sys

from .render import PANELS, CsvSchemaError, FigureJob, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render_figure",
        description="Render coverage-sweep CSV files into a single "
                    "threshold-vs-coverage chart")
    parser.add_argument("--panel", required=True, choices=PANELS)
    parser.add_argument("--csv", required=True, nargs="+", metavar="PATH",
                        help="one or more sweep CSV files")
    parser.add_argument("--out", required=True, metavar="IMAGE",
                        help="output image path (.png, .svg, ...)")
    parser.add_argument("--title", help="figure title override")
    parser.add_argument("--xlabel", help="x-axis label override")
    parser.add_argument("--ylabel", help="y-axis label override")
    parser.add_argument("--logy", action="store_true",
                        help="logarithmic probability axis")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    style = {key: value for key, value in
             (("title", args.title), ("xlabel", args.xlabel),
              ("ylabel", args.ylabel)) if value is not None}
    if args.logy:
        style["logy"] = True
    job = FigureJob(csv_paths=tuple(args.csv), panel=args.panel,
                    output_image_path=args.out, style_options=style)
    try:
        print(render(job))
    except (CsvSchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
