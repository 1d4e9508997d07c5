"""
📁 File: src/interfaces/cli/main.py
Layer: Interfaces (CLI)
Purpose: `thercom` command-line entry point
Depends on: argparse, experiment, runner, figures, error_handler
Used by: console script `thercom` (pyproject)

Usage:
    thercom kljn-theory --config runs/ndi.conf --n 50:75:5
    thercom kljn-sim --config runs/ndi.conf --mode raw-samples --workers 4
    thercom figure fig7 --scale desk --format svg --out results/

Flags override keys of the --config file; written paths go to stdout.
"""

import argparse
import sys
from typing import Any, Optional, Sequence

from src.interfaces.cli.error_handler import ErrorHandler
from src.interfaces.cli.experiment import FigureId, OutputFormat, build_config, read_config_file
from src.interfaces.cli.figures import Scale, reproduce_figure
from src.interfaces.cli.runner import Command, run_experiment
from src.layer1_kljn.models import DetectorKind
from src.layer3_simulation.models import NdiPolicy, SampleMode
from src.shared.config import get_settings

settings = get_settings()


def _values(enum: Any) -> list[str]:
    return [member.value for member in enum]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thercom",
        description="Thermal-noise communication toolkit: KLJN and TherMod error analysis.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Master RNG seed")
    common.add_argument("--workers", type=int, help="Simulation worker processes")
    common.add_argument("--format", choices=_values(OutputFormat), help="csv, or csv plus an svg plot")

    for command in Command:
        p = sub.add_parser(command.value, parents=[common], help=f"Run {command.value}")
        p.add_argument("--config", help="Flat key = value experiment file")
        p.add_argument("--out", help="Result CSV path")
        p.add_argument("--mode", choices=_values(SampleMode), help="Sample-variance realization")
        p.add_argument("--n", help="Sample counts: '50,100' or inclusive 'start:stop:step'")
        if command.scheme.value == "kljn":
            p.add_argument("--detector", choices=_values(DetectorKind))
            p.add_argument("--ndi-policy", choices=_values(NdiPolicy), help="ND-I conflict handling")

    fig = sub.add_parser("figure", parents=[common], help="Write the data set of a reference figure")
    fig.add_argument("figure", choices=_values(FigureId))
    fig.add_argument("--scale", choices=_values(Scale), default=Scale.DESK.value)
    fig.add_argument("--out", help="Output directory")
    return parser


def _cli_layer(args: argparse.Namespace, command: Command) -> dict[str, Any]:
    return {
        "scheme": command.scheme.value,
        "seed": args.seed,
        "workers": args.workers,
        "format": args.format,
        "output": args.out,
        "mode": args.mode,
        "n_range": args.n,
        "detector": getattr(args, "detector", None),
        "ndi_policy": getattr(args, "ndi_policy", None),
    }


def _run(args: argparse.Namespace) -> None:
    if args.command == "figure":
        written = reproduce_figure(
            FigureId(args.figure),
            seed=args.seed,
            scale=Scale(args.scale),
            output_dir=args.out,
            fmt=OutputFormat(args.format or OutputFormat.CSV.value),
            workers=args.workers,
        )
    else:
        command = Command(args.command)
        file_layer = read_config_file(args.config) if args.config else {}
        cli_layer = _cli_layer(args, command)
        if "scheme" in file_layer:
            # a scheme mismatch between file and command is reported by run_experiment
            cli_layer.pop("scheme")
        config = build_config(file_layer, cli_layer)
        written = run_experiment(config, command)
    for path in written:
        print(path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the command, return the process exit status."""
    args = build_parser().parse_args(argv)
    return ErrorHandler().run(lambda: _run(args))


if __name__ == "__main__":
    sys.exit(main())
