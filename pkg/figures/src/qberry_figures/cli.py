"""Command line interface: qberry-plot fig2|fig3 CSV OUT."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import FiguresError
from .plots import plot_fig2, plot_fig3

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qberry-plot",
        description="Render qberry sweep CSVs as SVG or PNG figures",
    )
    parser.add_argument("--version", action="version", version=f"qberry-plot {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("fig2", "fig3"):
        cmd = sub.add_parser(name, help=f"plot a {name} CSV")
        cmd.add_argument("csv", help="input CSV from the qberry sweep CLI")
        cmd.add_argument("out", help="output image path (.svg or .png)")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_VALIDATION
    plotters = {"fig2": plot_fig2, "fig3": plot_fig3}
    try:
        plotters[args.command](args.csv, args.out)
    except FiguresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
