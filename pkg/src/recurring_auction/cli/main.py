"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

recurring-auction command-line entry point.

Exit codes:
    0  success
    2  configuration, validation or file format problem
    3  numerical or estimation failure
    4  a reproduce target missed one of its reference values
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from typing import List, Optional, Sequence

from aws_lambda_powertools import Logger

from recurring_auction.cli.commands import COMMANDS
from recurring_auction.cli.run_config import TARGETS, RunConfig
from recurring_auction.config import get_config, set_config
from recurring_auction.environment_services.environment_loader import EnvironmentLoader
from recurring_auction.errors import (
    ConfigurationError,
    EstimationError,
    GoldenCheckFailedError,
    InvalidConfigurationError,
    NumericalError,
    RecurringAuctionError,
    SerializationError,
    ValidationError,
)
from recurring_auction.version import __version__

logger = Logger(__name__)

EXIT_OK = 0
EXIT_CONFIGURATION = 2
EXIT_NUMERICAL = 3
EXIT_GOLDEN = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recurring-auction",
        description="Recurring English auctions with costly entry: equilibrium, design, simulation and estimation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name, help=(COMMANDS[name].__doc__ or "").strip().splitlines()[0])
        sub.add_argument("--config", help="path to a JSON run config")
        sub.add_argument("--out", help="output directory (default: results)")
        sub.add_argument("--seed", type=int, help="master seed")
        sub.add_argument("--workers", type=int, help="worker processes for simulation and draw precomputation")
        if name == "simulate":
            sub.add_argument("--draws", type=int, help="number of simulated auctions")
        if name == "estimate":
            sub.add_argument("--draws", type=int, help="primitive draws per auction")
        if name == "reproduce":
            sub.add_argument("--target", choices=TARGETS, required=False)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file first, then command-line flags on top."""
    config = RunConfig.load(args.config) if args.config else RunConfig()
    if config.command is not None and config.command != args.command:
        logger.warning(
            {"message": "config command ignored", "config_command": config.command, "command": args.command}
        )
    config.command = args.command
    if args.out is not None:
        config.out = args.out
    if args.seed is not None:
        if args.seed < 0:
            raise InvalidConfigurationError("seed", "seed must be >= 0")
        config.seed = args.seed
    if args.workers is not None:
        if args.workers < 1:
            raise InvalidConfigurationError("workers", "workers must be >= 1")
        config.workers = args.workers
    draws = getattr(args, "draws", None)
    if draws is not None:
        if draws < 0:
            raise InvalidConfigurationError("draws", "draws must be >= 0")
        if args.command == "estimate":
            config.estimation.draws = draws
        else:
            config.n_draws = draws
    target = getattr(args, "target", None)
    if target is not None:
        config.target = target
    return config


def _apply_log_level(level: str) -> None:
    for name in list(logging.root.manager.loggerDict):
        if name.startswith("recurring_auction"):
            logging.getLogger(name).setLevel(level)


def _report(error: RecurringAuctionError) -> None:
    try:
        with_trace = get_config().logging.enable_stack_trace
    except ConfigurationError:
        with_trace = False
    if with_trace:
        logger.exception({"message": "run failed", "error": error.to_dict()})
    else:
        logger.error({"message": "run failed", "error": error.to_dict()})
    print(json.dumps(error.to_dict(), default=str), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    EnvironmentLoader().load_environment_file(raise_error_if_not_found=False)

    try:
        settings = get_config()
        _apply_log_level(settings.logging.log_level)
        config = resolve_config(args)
        if config.workers is not None:
            set_config(replace(settings, simulation=replace(settings.simulation, workers=config.workers)))
        written: List[str] = COMMANDS[config.command](config)  # type: ignore[index]
    except GoldenCheckFailedError as e:
        _report(e)
        return EXIT_GOLDEN
    except (ConfigurationError, ValidationError, SerializationError) as e:
        _report(e)
        return EXIT_CONFIGURATION
    except (NumericalError, EstimationError) as e:
        _report(e)
        return EXIT_NUMERICAL

    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
