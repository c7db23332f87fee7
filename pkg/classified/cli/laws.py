"""
Law suite commands
"""
import argparse

from classified.schemas.config import CliConfig
from classified.schemas.report import CheckReport
from classified.services.law_service import LawGroup, LawService


def run_laws(args: argparse.Namespace, config: CliConfig) -> CheckReport:
    """Run one law group with the configured seed and trial count"""
    return LawService.run_law_suite(LawGroup(args.group), config.seed, config.trials)


def register(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser("laws", parents=[parent], help="Check a group of categorical laws")
    parser.add_argument("group", choices=[group.value for group in LawGroup])
    parser.set_defaults(handler=run_laws, suite="laws")
