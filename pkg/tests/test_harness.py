"""
Tests for the law suites, the constancy check, inhabitants and reports
"""
import json

import pytest

from classified.core.exceptions import ClassifiedError, SideConditionUnmet, UnsealNotPermitted
from classified.models.cset import ClassifiedSet, LabelUniverse, LevelMask
from classified.models.element import Atom
from classified.models.poset import Calculus, TypingContext
from classified.models.syntax import BoolT, FalseTm, If, Lam, LetRet, TrueTm, Var
from classified.schemas.report import CheckReport, ReportStatus
from classified.services.category_service import CategoryService
from classified.services.cohesion_service import CohesionService
from classified.services.generator_service import GeneratorService
from classified.services.inhabitant_service import InhabitantService
from classified.services.law_service import THREE_LABELS, LawGroup, LawRecorder, LawService, _switch_laws
from classified.services.parser import parse_term, parse_type
from classified.services.syntax_service import alpha_equal, is_normal, print_term
from classified.services.typing_service import TypingService
from classified.utils.reports import emit_report, error_report


@pytest.mark.parametrize("group", list(LawGroup))
def test_law_suites_pass(group):
    report = LawService.run_law_suite(group, seed=7, trials=3)
    assert report.passed, emit_report(report)
    assert report.cases > 0
    assert report.status == ReportStatus.PASS


def test_law_suites_are_reproducible():
    """The same seed gives the same report apart from timing"""
    first = LawService.run_law_suite(LawGroup.LEVELLED, seed=42, trials=2)
    second = LawService.run_law_suite(LawGroup.LEVELLED, seed=42, trials=2)
    assert first.body() == second.body()
    assert "elapsed_ms" not in first.body()


def test_law_suite_rejects_zero_trials():
    with pytest.raises(ValueError):
        LawService.run_law_suite(LawGroup.BCC, seed=1, trials=0)


def test_generator_is_deterministic(universe):
    first = GeneratorService.random_classified_set(99, universe, 3)
    assert first == GeneratorService.random_classified_set(99, universe, 3)
    assert GeneratorService.case_seeds(5, 4) == GeneratorService.case_seeds(5, 4)
    assert all(0 <= s < 2 ** 64 for s in GeneratorService.case_seeds(5, 4))


def test_constancy_full_mask(universe, delta_bool):
    """Redacting every label leaves only constant maps, one per point of B"""
    mask = LevelMask.full(universe)
    B = CategoryService.delta_bool(mask.remaining)
    report = LawService.check_constancy(delta_bool, B, mask)
    assert report.passed
    assert report.cases == 4
    assert report.status == ReportStatus.PASS


def test_constancy_partial_mask(universe, delta_bool):
    mask = LevelMask.of(universe, ["H"])
    B = CategoryService.delta_bool(mask.remaining)
    report = LawService.check_constancy(delta_bool, B, mask)
    assert report.passed
    assert report.cases == 2


def test_constancy_with_target_mask(universe, delta_bool):
    """◆_π A -> ◆_π′ B is constant when B is visible at π - π′"""
    mask = LevelMask.full(universe)
    prime = LevelMask.of(universe, ["L"])
    report = LawService.check_constancy(delta_bool, delta_bool, mask, prime)
    assert report.passed
    nabla = CategoryService.nabla_bool(universe)
    with pytest.raises(SideConditionUnmet):
        LawService.check_constancy(delta_bool, nabla, mask, prime)


def test_constancy_empty_domain(universe, empty):
    mask = LevelMask.full(universe)
    report = LawService.check_constancy(empty, CategoryService.delta_bool(mask.remaining), mask)
    assert report.passed
    assert any("empty domain" in note for note in report.notes)


def test_constancy_is_vacuous_without_redaction(universe, delta_bool):
    report = LawService.check_constancy(delta_bool, delta_bool, LevelMask.of(universe))
    assert report.vacuous
    assert report.passed
    assert report.status == ReportStatus.VACUOUS


def test_redacted_set_is_protected(universe, delta_bool):
    mask = LevelMask.of(universe, ["H"])
    assert CohesionService.is_protected_at(CohesionService.diamond(mask, delta_bool), mask)


def test_inhabitants_of_ground_and_monadic_types(poset):
    """Inhabitants come out ordered by size and then printed form"""
    bools = InhabitantService.enumerate_inhabitants(Calculus.MOGGI, parse_type("Bool"), 1, poset)
    assert [print_term(t) for t in bools] == ["ff", "tt"]
    monadic = InhabitantService.enumerate_inhabitants(Calculus.MOGGI, parse_type("T Bool"), 3, poset)
    assert [print_term(t) for t in monadic] == ["ret ff", "ret tt"]
    sealed = InhabitantService.enumerate_inhabitants(Calculus.SEALING, parse_type("Seal[H] Bool"), 3, poset)
    assert [print_term(t) for t in sealed] == ["seal[H] ff", "seal[H] tt"]


def test_inhabitants_grow_with_the_bound(poset):
    small = InhabitantService.enumerate_inhabitants(Calculus.MOGGI, parse_type("Bool -> Bool"), 3, poset)
    large = InhabitantService.enumerate_inhabitants(Calculus.MOGGI, parse_type("Bool -> Bool"), 6, poset)
    assert len(small) == 3
    assert len(large) > len(small)
    assert [print_term(t) for t in large[:len(small)]] == [print_term(t) for t in small]


def test_inhabitants_reject_bad_bound(poset):
    with pytest.raises(ValueError):
        InhabitantService.enumerate_inhabitants(Calculus.DP, parse_type("Bool"), 0, poset)


def boolean_bodies(size, names):
    """Every term of exactly this size built from constants, variables and if"""
    if size == 1:
        return [TrueTm(), FalseTm()] + [Var(name) for name in names]
    result = []
    for i in range(1, size - 1):
        for j in range(1, size - 1 - i):
            k = size - 1 - i - j
            for cond in boolean_bodies(i, names):
                for then in boolean_bodies(j, names):
                    result += [If(cond, then, orelse) for orelse in boolean_bodies(k, names)]
    return result


def test_inhabitants_cover_brute_force_search(poset):
    """Every normal Bool -> Bool term over if and variables is enumerated, nested scrutinees included"""
    ty = parse_type("Bool -> Bool")
    enumerated = InhabitantService.enumerate_inhabitants(Calculus.MOGGI, ty, 8, poset)
    brute = []
    for size in range(1, 8):
        for body in boolean_bodies(size, ["x"]):
            term = Lam("x", BoolT(), body)
            try:
                TypingService.typecheck(TypingContext.empty(Calculus.MOGGI), term, poset, ty)
            except ClassifiedError:
                continue
            if is_normal(term):
                brute.append(term)
    assert len(brute) == 147
    missing = [print_term(t) for t in brute if not any(alpha_equal(t, e) for e in enumerated)]
    assert missing == []
    nested = parse_term("\\v0:Bool. if (if v0 then v0 else v0) then v0 else v0")
    assert any(alpha_equal(nested, e) for e in enumerated)


def test_inhabitants_eliminate_eliminations(poset):
    """A let or projection may scrutinize another elimination"""
    ctx = TypingContext.empty(Calculus.MOGGI).extend("v", parse_type("T Bool")).extend("b", parse_type("Bool"))
    found = InhabitantService.enumerate_inhabitants(Calculus.MOGGI, parse_type("T Bool"), 7, poset, ctx)
    assert any(isinstance(t, LetRet) and isinstance(t.bound, LetRet) for t in found)
    pairs = TypingContext.empty(Calculus.MOGGI).extend("b", parse_type("Bool"))
    found = InhabitantService.enumerate_inhabitants(Calculus.MOGGI, parse_type("Bool"), 7, poset, pairs)
    assert any(alpha_equal(parse_term("if (if b then b else tt) then ff else b"), t) for t in found)


def test_report_status():
    assert CheckReport(suite="s", cases=0).status == ReportStatus.VACUOUS
    assert CheckReport(suite="s", cases=3).status == ReportStatus.PASS
    report = error_report("typecheck:dp", UnsealNotPermitted("H", {"L"}), seed=3)
    assert report.status == ReportStatus.FAIL
    assert not report.passed
    assert report.failures[0].law == "UnsealNotPermitted"


def test_emit_report_formats():
    report = CheckReport(suite="laws", seed=42, cases=5, details={"trials": 2})
    text = emit_report(report, "text")
    assert "suite: laws" in text
    assert "status: pass" in text
    data = json.loads(emit_report(report, "json"))
    assert data["status"] == "pass"
    assert data["details"] == {"trials": 2}
    assert list(data) == sorted(data)


def test_universe_subsets_are_ordered():
    assert LabelUniverse.of(["L", "H"]).subsets()[0] == frozenset()


class NamingRecorder(LawRecorder):
    def __init__(self):
        super().__init__()
        self.laws = []

    def check(self, law, holds, inputs, witness=None):
        self.laws.append(law)
        super().check(law, holds, inputs, witness)


@pytest.mark.parametrize("p, q, expected", [
    ({"L"}, {"H"}, {"switch_1", "switch_2", "switch_7"}),
    ({"L", "M"}, {"M", "H"}, {"switch_3", "switch_4"}),
    ({"L"}, {"L", "H"}, {"switch_3", "switch_4", "switch_5", "switch_6"}),
])
def test_switch_laws_check_each_equation_once(p, q, expected):
    """Disjoint masks use the disjoint laws and overlapping masks the general ones"""
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    X = ClassifiedSet.make(THREE_LABELS, [a, b, c], {"L": {(a, b)}, "M": {(b, c)}})
    rec = NamingRecorder()
    _switch_laws(rec, X, frozenset(p), frozenset(q))
    assert rec.failures == []
    assert set(rec.laws) == expected | {"switch_8", "switch_9"}
    assert len(rec.laws) == len(set(rec.laws))
