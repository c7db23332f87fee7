"""
Noninterference Service - end-to-end noninterference and denotational soundness checks
"""
import logging
import time
from typing import Iterable, List, Optional, Tuple

from classified.core.config import settings
from classified.core.exceptions import ClassifiedError, FuelExhausted, SideConditionUnmet
from classified.models.cset import Label
from classified.models.poset import Calculus, DenEnv, SecurityPoset, TypingContext
from classified.models.syntax import (
    BoolCoT,
    BoolT,
    BoxI,
    BoxT,
    FalseTm,
    LevMonad,
    Monad,
    Ret,
    RetL,
    SealI,
    SealT,
    Term,
    TrueTm,
    TypeExpr,
    UnitTm,
)
from classified.schemas.report import CheckReport, FailureKind
from classified.services.category_service import CategoryService
from classified.services.denotation_service import DenotationService
from classified.services.inhabitant_service import InhabitantService
from classified.services.poset_service import PosetService
from classified.services.syntax_service import (
    alpha_equal,
    normalize,
    print_term,
    print_type,
    step,
    substitute,
)
from classified.services.typing_service import TypingService, is_ground_type
from classified.utils.reports import failure

logger = logging.getLogger(__name__)

MODAL_WRAPPERS = (Ret, BoxI, RetL, SealI)
MODAL_TYPES = (Monad, BoxT, LevMonad, SealT)
CONSTANTS = (TrueTm, FalseTm, UnitTm)


def validate_side_conditions(
    calculus: Calculus,
    poset: SecurityPoset,
    hole_type: TypeExpr,
    result_type: TypeExpr,
    observers: Iterable[Label] = (),
):
    """
    Reject judgements outside the shape of the noninterference theorems

    Raises:
        SideConditionUnmet: naming the violated hypothesis
    """
    hole, result = print_type(hole_type), print_type(result_type)
    if calculus == Calculus.MOGGI:
        if not isinstance(hole_type, Monad):
            raise SideConditionUnmet(f"hole must have a type T A, got {hole}")
        if not isinstance(result_type, BoolT):
            raise SideConditionUnmet(f"result must be Bool, got {result}")
    elif calculus == Calculus.DP:
        if not isinstance(hole_type, BoolCoT):
            raise SideConditionUnmet(f"hole must be BoolCo, got {hole}")
        if not (isinstance(result_type, BoxT) and is_ground_type(result_type.body)):
            raise SideConditionUnmet(f"result must be Box of a ground type, got {result}")
    elif calculus == Calculus.DCC:
        if not isinstance(hole_type, LevMonad):
            raise SideConditionUnmet(f"hole must have a type T[l] A, got {hole}")
        if not (isinstance(result_type, LevMonad) and isinstance(result_type.body, BoolT)):
            raise SideConditionUnmet(f"result must have a type T[l'] Bool, got {result}")
        if poset.below(hole_type.label, result_type.label):
            raise SideConditionUnmet(f"{hole_type.label} ⊑ {result_type.label}, so the result may depend on the hole")
    else:
        if not isinstance(hole_type, SealT):
            raise SideConditionUnmet(f"hole must have a type Seal[l] A, got {hole}")
        if not isinstance(result_type, BoolT):
            raise SideConditionUnmet(f"result must be Bool, got {result}")
        if PosetService.below_some(poset, hole_type.label, observers):
            raise SideConditionUnmet(f"{hole_type.label} is below an observer, so the hole may be unsealed")


def is_canonical(term: Term) -> bool:
    """A constant, possibly under one modal introduction"""
    if isinstance(term, MODAL_WRAPPERS):
        term = term.term
    return isinstance(term, CONSTANTS)


def has_canonical_forms(ty: TypeExpr) -> bool:
    if isinstance(ty, MODAL_TYPES):
        ty = ty.body
    return is_ground_type(ty)


class NoninterferenceService:
    """Service class for the end-to-end checks"""

    @staticmethod
    def check_noninterference(
        calculus: Calculus,
        poset: SecurityPoset,
        hole: Tuple[str, TypeExpr],
        term: Term,
        result_type: TypeExpr,
        size_bound: Optional[int] = None,
        observers: Iterable[Label] = (),
        fuel: Optional[int] = None,
    ) -> CheckReport:
        """
        Check that a program's output does not depend on the hole

        Args:
            calculus: Calculus of the program
            poset: Security poset
            hole: Hole variable and its type
            term: Program mentioning the hole
            result_type: Observable type of the program
            size_bound: Size bound for substituted inhabitants
            observers: Observer labels (sealing calculus)
            fuel: Normalization budget per instance

        Returns:
            Report with syntactic, semantic and disagreement failures
        """
        start = time.perf_counter()
        bound = size_bound or settings.INHABITANT_SIZE_BOUND
        name, hole_type = hole
        observers = frozenset(observers)
        validate_side_conditions(calculus, poset, hole_type, result_type, observers)
        closed = TypingContext.empty(calculus, observers)
        ctx = closed.extend(name, hole_type)
        TypingService.typecheck(ctx, term, poset, result_type)

        report = CheckReport(suite=f"nonint:{calculus.value}", details={"program": print_term(term)})
        instances = InhabitantService.enumerate_inhabitants(calculus, hole_type, bound, poset, closed)
        normal_forms = [
            (filler, normalize(substitute(term, name, filler), fuel)) for filler in instances
        ]
        syntactic_ok = True
        if normal_forms:
            first_filler, first_nf = normal_forms[0]
            for filler, nf in normal_forms:
                report.cases += 1
                if not alpha_equal(first_nf, nf):
                    syntactic_ok = False
                    report.failures.append(failure(
                        "normal_forms_agree",
                        {"fillers": [print_term(first_filler), print_term(filler)]},
                        [print_term(first_nf), print_term(nf)],
                        FailureKind.SYNTACTIC,
                    ))
            report.details["normal_form"] = print_term(first_nf)
        else:
            report.notes.append(f"no closed inhabitants of {print_type(hole_type)} up to size {bound}")
        report.details["instances"] = len(instances)

        env = DenEnv(poset)
        denotation = DenotationService.denote_term(env, ctx, term, result_type)
        report.cases += 1
        semantic_ok = CategoryService.is_constant(denotation)
        if not semantic_ok:
            report.failures.append(
                failure("denotation_constant", {"program": print_term(term)}, denotation.table(), FailureKind.SEMANTIC)
            )
        if normal_forms and syntactic_ok != semantic_ok:
            report.failures.append(failure(
                "checks_agree",
                {"program": print_term(term)},
                {"syntactic": syntactic_ok, "semantic": semantic_ok},
                FailureKind.DISAGREEMENT,
            ))
        report.elapsed_ms = (time.perf_counter() - start) * 1000
        logger.info(f"Noninterference for {print_term(term)}: {len(report.failures)} failures")
        return report

    @staticmethod
    def check_soundness(
        calculus: Calculus,
        poset: SecurityPoset,
        corpus: List[Term],
        observers: Iterable[Label] = (),
        fuel: Optional[int] = None,
    ) -> CheckReport:
        """
        Check that reduction preserves types and denotations on closed terms

        Args:
            calculus: Calculus of the corpus
            poset: Security poset
            corpus: Closed, well-typed terms
            observers: Observer labels (sealing calculus)
            fuel: Reduction budget per term

        Returns:
            Report over every corpus term plus the distinct-constants check
        """
        start = time.perf_counter()
        budget = fuel if fuel is not None else settings.FUEL
        env = DenEnv(poset)
        ctx = TypingContext.empty(calculus, observers)
        report = CheckReport(suite=f"soundness:{calculus.value}", details={"terms": len(corpus)})

        for term in corpus:
            text = print_term(term)
            ty = TypingService.typecheck(ctx, term, poset)
            current, steps = term, 0
            while True:
                reduct = step(current)
                if reduct is None:
                    break
                steps += 1
                if steps > budget:
                    raise FuelExhausted(steps)
                report.cases += 1
                try:
                    preserved = TypingService.typecheck(ctx, reduct, poset, ty) == ty
                except ClassifiedError as e:
                    logger.debug(f"Reduct of {text} fails to typecheck: {e}")
                    preserved = False
                if not preserved:
                    report.failures.append(failure("subject_reduction", {"term": text}, print_term(reduct)))
                    break
                current = reduct
            nf = current

            report.cases += 1
            before = DenotationService.denote_term(env, ctx, term, ty)
            after = DenotationService.denote_term(env, ctx, nf, ty)
            if before != after:
                report.failures.append(failure(
                    "denotation_preserved",
                    {"term": text, "normal_form": print_term(nf)},
                    {"term": before.table(), "normal_form": after.table()},
                    FailureKind.SEMANTIC,
                ))
            if has_canonical_forms(ty):
                report.cases += 1
                if not is_canonical(nf):
                    report.failures.append(failure("canonical_form", {"term": text}, print_term(nf)))

        for ty in (BoolT(),) + ((BoolCoT(),) if calculus == Calculus.DP else ()):
            report.cases += 1
            true = DenotationService.denote_term(env, ctx, TrueTm(), ty)
            false = DenotationService.denote_term(env, ctx, FalseTm(), ty)
            if true == false:
                report.failures.append(failure("constants_distinct", {"type": print_type(ty)}))
        report.elapsed_ms = (time.perf_counter() - start) * 1000
        logger.info(f"Soundness for {calculus.value}: {report.cases} cases, {len(report.failures)} failures")
        return report
