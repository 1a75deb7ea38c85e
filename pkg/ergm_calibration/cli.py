"""
Command line entry point.

    ergm-calibrate run --config run.toml [--seed S] [--out DIR] [--mode M] [-v | --quiet]
    ergm-calibrate summarize --chain chain.csv

Exit codes: 0 success, 2 config error, 3 data error, 4 numerical failure
(including a failed oracle test), 5 non-convergence or degeneracy.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from ergm_calibration.core.config import load_config
from ergm_calibration.core.logging import logger, set_verbosity
from ergm_calibration.exceptions import (ErgmCalibrationError,
                                         StageFailedError, exit_code_for)
from ergm_calibration.inference.diagnostics import summarize_chain
from ergm_calibration.io.artifacts import read_chain_csv
from ergm_calibration.services.pipeline import run_pipeline

MODES = ("pseudo", "calibrate", "aea", "degeneracy-check", "oracle-test")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergm-calibrate",
        description="Bayesian ERGM inference with a calibrated pseudo-posterior.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
    verbosity.add_argument("--quiet", action="store_true", help="Log warnings and errors only")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run the pipeline described by a TOML config")
    run.add_argument("--config", required=True, help="Path to the run configuration")
    run.add_argument("--seed", type=int, help="Override the configured seed")
    run.add_argument("--out", help="Override the output directory")
    run.add_argument("--mode", choices=MODES, help="Override the configured mode")

    summarize = commands.add_parser("summarize", help="Summary table of a chain CSV")
    summarize.add_argument("--chain", required=True, help="Chain CSV written by 'run'")
    return parser


def _run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, seed=args.seed, mode=args.mode, out=args.out)
    report = run_pipeline(cfg)
    for name, path in sorted(report.artifacts.items()):
        print(f"{name}: {path}")
    return 0


def _summarize(args: argparse.Namespace) -> int:
    chain = read_chain_csv(args.chain)
    print(summarize_chain(chain).to_text(f"Summary of {args.chain}"), end="")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_verbosity(logging.DEBUG)
    elif args.quiet:
        set_verbosity(logging.WARNING)
    else:
        set_verbosity(logging.INFO)

    try:
        return _run(args) if args.command == "run" else _summarize(args)
    except (ErgmCalibrationError, OSError) as exc:
        code = exit_code_for(exc)
        hint = exc.hint if isinstance(exc, ErgmCalibrationError) else None
        stage = f" in stage '{exc.stage}'" if isinstance(exc, StageFailedError) else ""
        logger.error(f"Failed{stage}: {exc}")
        print(f"error{stage}: {exc}", file=sys.stderr)
        if hint:
            print(f"hint: {hint}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
