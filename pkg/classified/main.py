"""
Command line entry point
"""
import argparse
import logging
import sys
from contextlib import contextmanager
from typing import Iterator, List, Optional

from classified.cli import COMMANDS
from classified.cli.options import build_config, parent_parser
from classified.core.config import settings
from classified.core.exceptions import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, ClassifiedError
from classified.schemas.config import CliConfig
from classified.utils.reports import emit_report, error_report

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parent = parent_parser()
    parser = argparse.ArgumentParser(
        prog="classified",
        description=f"{settings.APP_NAME} {settings.APP_VERSION}: classified sets and modal information-flow calculi",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers, parent)
    return parser


@contextmanager
def overridden_limits(config: CliConfig) -> Iterator[None]:
    """Apply the flag values to the global settings for one command"""
    saved = (settings.FUEL, settings.ENUMERATION_CAP, settings.POSET_PATH)
    settings.FUEL, settings.ENUMERATION_CAP, settings.POSET_PATH = config.fuel, config.cap, config.poset_path
    try:
        yield
    finally:
        settings.FUEL, settings.ENUMERATION_CAP, settings.POSET_PATH = saved


def dispatch(argv: Optional[List[str]] = None) -> int:
    """
    Run one command

    Args:
        argv: Arguments without the program name; sys.argv by default

    Returns:
        0 when every check passes, 1 when a check fails (the report is
        printed), 2 for usage, parse and configuration errors
    """
    logging.basicConfig(level=settings.LOG_LEVEL, stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        config = build_config(args)
    except ClassifiedError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code

    try:
        with overridden_limits(config):
            report = args.handler(args, config)
    except ClassifiedError as e:
        if e.exit_code == EXIT_CHECK_FAILED:
            logger.error(f"{args.suite} failed: {e.message}")
            print(emit_report(error_report(args.suite, e, config.seed), config.format))
        else:
            print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(emit_report(report, config.format))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
