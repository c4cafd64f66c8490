from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from collections.abc import Sequence
from pathlib import Path

from pysatl_sweep import __version__
from pysatl_sweep.core.errors import ConfigurationError

from .commands import ExitCode, RunResult, geometry_check, run, sweep
from .output import write_result
from .scenario import load_scenario
from .self_test import self_test

__all__ = ["OUT_DIR_ENV", "main", "parse_args"]

logger = logging.getLogger(__name__)

OUT_DIR_ENV = "PYSATL_SWEEP_OUT_DIR"
DEFAULT_OUT_DIR = "sweep-output"

COMMANDS = {"run": run, "geometry-check": geometry_check, "sweep": sweep}


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="Log warnings and errors only")

    scenario_flags = argparse.ArgumentParser(add_help=False)
    scenario_flags.add_argument("scenario", type=Path, help="Path to a JSON scenario file")
    scenario_flags.add_argument("--seed", type=int, default=None, help="Override the scenario seed")
    scenario_flags.add_argument("--paths", type=int, default=None, help="Override the Monte Carlo path count")
    scenario_flags.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a scenario entry by dotted key, e.g. grid.step=0.01. Repeatable.",
    )
    scenario_flags.add_argument(
        "--out-dir",
        type=Path,
        default=None,
        help=f"Output directory (default: ${OUT_DIR_ENV} or ./{DEFAULT_OUT_DIR})",
    )

    parser = argparse.ArgumentParser(
        prog="pysatl-sweep", description="Simulate sweeping processes, reflected SDEs and crowd motion."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("run", parents=[common, scenario_flags], help="Run a scenario")
    commands.add_parser(
        "geometry-check", parents=[common, scenario_flags], help="Certify a set at probe points and time pairs"
    )
    commands.add_parser(
        "sweep", parents=[common, scenario_flags], help="Refinement, pathwise convergence or stability tables"
    )
    commands.add_parser("self-test", parents=[common], help="Run the fast acceptance checks")
    return parser.parse_args(argv)


def _output_dir(args: argparse.Namespace) -> Path:
    if args.out_dir is not None:
        return Path(args.out_dir)
    return Path(os.environ.get(OUT_DIR_ENV, DEFAULT_OUT_DIR))


def _overrides(args: argparse.Namespace) -> list[str]:
    overrides = list(args.override)
    if args.seed is not None:
        overrides.append(f"seed={args.seed}")
    if args.paths is not None:
        overrides.append(f"paths={args.paths}")
    return overrides


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if args.command == "self-test":
        return int(self_test())

    start = time.perf_counter()
    try:
        scenario = load_scenario(args.scenario, _overrides(args))
        result: RunResult = COMMANDS[args.command](scenario)
    except ConfigurationError as error:
        logger.error("%s", error)
        return int(ExitCode.CONFIG)
    wall_time = time.perf_counter() - start

    out_dir = _output_dir(args)
    try:
        write_result(result, out_dir, __version__, wall_time)
    except OSError as error:
        logger.error("Cannot write outputs to %s: %s", out_dir, error)
        return int(ExitCode.IO)
    logger.info("%s %s in %.2fs -> %s", args.command, result.status, wall_time, out_dir)
    return int(result.exit_code)


if __name__ == "__main__":
    sys.exit(main())
