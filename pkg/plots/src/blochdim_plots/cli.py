"""Script entry point: render figures from CSV paths.

Usage:
  blochdim-plots coverage --csv out/bloch_coverage.csv --out fig1.png
  blochdim-plots saturation --vectors out/vectors_k4.csv out/vectors_k6.csv --out fig2.png
"""

from __future__ import annotations

import argparse
import sys

from .figures import FigureSpec, MissingInputError, SchemaError, plot_coverage, plot_saturation


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blochdim-plots", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coverage", help="sphere scatter + norm histogram")
    p.add_argument("--csv", required=True, help="bloch_coverage.csv path")
    p.add_argument("--out", required=True, help="output image path")

    p = sub.add_parser("saturation", help="per-valence arrow panels")
    p.add_argument("--vectors", required=True, nargs="+", help="vectors_k{K}.csv paths")
    p.add_argument("--out", required=True, help="output image path")

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "coverage":
            result = plot_coverage(FigureSpec("coverage", (args.csv,), args.out))
        else:
            result = plot_saturation(FigureSpec("saturation", tuple(args.vectors), args.out))
    except (MissingInputError, SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {result.output} ({result.panels} panels)")
    return 0


def entry_point() -> None:
    raise SystemExit(main())
