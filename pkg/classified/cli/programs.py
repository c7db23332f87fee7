"""
Commands over single program files
"""
import argparse

from classified.cli.options import load_poset
from classified.core.exceptions import UsageError
from classified.models.poset import Calculus, DenEnv
from classified.schemas.config import CliConfig
from classified.schemas.report import CheckReport
from classified.services.denotation_service import DenotationService
from classified.services.noninterference_service import NoninterferenceService
from classified.services.program_service import load_program
from classified.services.syntax_service import normalize, print_term, print_type, term_size
from classified.services.typing_service import TypingService

CALCULI = [calculus.value for calculus in Calculus]


def run_typecheck(args: argparse.Namespace, config: CliConfig) -> CheckReport:
    """
    Typecheck a program against its header

    The hole, when declared, is an ordinary assumption here.
    """
    calculus = Calculus(args.calculus)
    program = load_program(args.file)
    ctx = program.context(calculus, include_hole=True)
    ty = TypingService.typecheck(ctx, program.term, load_poset(config), program.expected)
    return CheckReport(
        suite=f"typecheck:{calculus.value}",
        cases=1,
        details={"program": print_term(program.term), "type": print_type(ty)},
    )


def run_normalize(args: argparse.Namespace, config: CliConfig) -> CheckReport:
    program = load_program(args.file)
    nf = normalize(program.term, config.fuel)
    return CheckReport(
        suite="normalize",
        cases=1,
        details={"program": print_term(program.term), "normal_form": print_term(nf), "size": term_size(nf)},
    )


def run_denote(args: argparse.Namespace, config: CliConfig) -> CheckReport:
    """Interpret a program as a morphism out of its context object"""
    calculus = Calculus(args.calculus)
    program = load_program(args.file)
    env = DenEnv(load_poset(config), config.cap)
    ctx = program.context(calculus, include_hole=True)
    morphism = DenotationService.denote_term(env, ctx, program.term, program.expected)
    return CheckReport(
        suite=f"denote:{calculus.value}",
        cases=1,
        details={
            "program": print_term(program.term),
            "inputs": len(morphism.source.carrier),
            "table": morphism.table(),
        },
    )


def run_nonint(args: argparse.Namespace, config: CliConfig) -> CheckReport:
    calculus = Calculus(args.calculus)
    program = load_program(args.file)
    if program.hole is None or program.expected is None:
        raise UsageError(f"{args.file} needs '-- hole x : A' and '-- expect B' header lines")
    return NoninterferenceService.check_noninterference(
        calculus,
        load_poset(config),
        program.hole,
        program.term,
        program.expected,
        observers=program.observers,
        fuel=config.fuel,
    )


def register(subparsers, parent: argparse.ArgumentParser):
    typecheck = subparsers.add_parser("typecheck", parents=[parent], help="Typecheck a program file")
    typecheck.add_argument("calculus", choices=CALCULI)
    typecheck.add_argument("file")
    typecheck.set_defaults(handler=run_typecheck, suite="typecheck")

    norm = subparsers.add_parser("normalize", parents=[parent], help="Normalize a program file")
    norm.add_argument("file")
    norm.set_defaults(handler=run_normalize, suite="normalize")

    denote = subparsers.add_parser("denote", parents=[parent], help="Print the denotation of a program file")
    denote.add_argument("calculus", choices=CALCULI)
    denote.add_argument("file")
    denote.set_defaults(handler=run_denote, suite="denote")

    nonint = subparsers.add_parser("nonint", parents=[parent], help="Check noninterference for a program file")
    nonint.add_argument("calculus", choices=CALCULI)
    nonint.add_argument("file")
    nonint.set_defaults(handler=run_nonint, suite="nonint")
