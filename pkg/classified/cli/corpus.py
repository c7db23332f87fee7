"""
Built-in corpus commands
"""
import argparse
import time
from typing import List

from classified.cli.options import load_poset
from classified.corpus import NONINTERFERENCE_CORPUS, soundness_groups
from classified.models.poset import Calculus
from classified.schemas.config import CliConfig
from classified.schemas.report import CheckReport
from classified.services.noninterference_service import NoninterferenceService


def merge_reports(suite: str, reports: List[CheckReport]) -> CheckReport:
    """One report holding every failure, with per-part outcomes in details"""
    return CheckReport(
        suite=suite,
        cases=sum(r.cases for r in reports),
        failures=[f for r in reports for f in r.failures],
        notes=[n for r in reports for n in r.notes],
        details={"parts": [{"suite": r.suite, "status": r.status.value, **r.details} for r in reports]},
    )


def run_corpus(args: argparse.Namespace, config: CliConfig) -> CheckReport:
    start = time.perf_counter()
    poset = load_poset(config)
    wanted = [Calculus(args.calculus)] if args.calculus else list(Calculus)
    reports: List[CheckReport] = []
    if args.kind == "nonint":
        for program in NONINTERFERENCE_CORPUS:
            if program.calculus in wanted:
                reports.append(NoninterferenceService.check_noninterference(
                    program.calculus,
                    poset,
                    program.hole_binding,
                    program.term,
                    program.result_type,
                    observers=program.observers,
                    fuel=config.fuel,
                ))
    else:
        for (calculus, observers), terms in soundness_groups().items():
            if calculus in wanted:
                reports.append(
                    NoninterferenceService.check_soundness(calculus, poset, terms, observers, config.fuel)
                )
    report = merge_reports(f"corpus:{args.kind}", reports)
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def register(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser("corpus", parents=[parent], help="Run a built-in corpus")
    parser.add_argument("kind", choices=["nonint", "soundness"])
    parser.add_argument("--calculus", choices=[calculus.value for calculus in Calculus])
    parser.set_defaults(handler=run_corpus, suite="corpus")
