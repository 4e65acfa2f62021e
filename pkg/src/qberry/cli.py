"""Command line interface: qberry fig2 | fig3 | sweep."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import QberryError
from .sweep import SweepSpec, parse_config, run_custom, run_fig2, run_fig3

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qberry",
        description="Detuning sweeps for charge qubits coupled to a cavity mode",
    )
    parser.add_argument("--version", action="version", version=f"qberry {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_config in (("fig2", False), ("fig3", False), ("sweep", True)):
        cmd = sub.add_parser(name, help=f"run the {name} sweep and write a CSV")
        cmd.add_argument("--config", required=needs_config, help="key=value config file")
        cmd.add_argument("--out", help="output CSV path (overrides the config)")
        cmd.add_argument("--threads", type=int, default=1, help="parallel grid workers")
    return parser


def _load_spec(config_path: str | None, default_mode: str) -> SweepSpec:
    if config_path is None:
        return parse_config(b"", default_mode=default_mode)
    with open(config_path, "rb") as handle:
        return parse_config(handle.read(), default_mode=default_mode)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; that slot is reserved for I/O
        return EXIT_OK if exc.code in (0, None) else EXIT_VALIDATION

    runners = {"fig2": run_fig2, "fig3": run_fig3, "sweep": run_custom}
    default_modes = {"fig2": "fig2", "fig3": "fig3", "sweep": "custom"}
    try:
        spec = _load_spec(args.config, default_modes[args.command])
        if spec.mode != default_modes[args.command]:
            print(
                f"error: config mode {spec.mode!r} does not match command {args.command!r}",
                file=sys.stderr,
            )
            return EXIT_VALIDATION
        if args.threads < 1:
            print("error: --threads must be >= 1", file=sys.stderr)
            return EXIT_VALIDATION
        records = runners[args.command](spec, out_path=args.out, threads=args.threads)
    except QberryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    out = args.out or spec.output_path
    print(f"wrote {len(records)} rows to {out}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
