"""
Tests for the end-to-end noninterference and soundness checks
"""
import pytest

from classified.core.exceptions import NotCodiscrete, SideConditionUnmet
from classified.corpus import NONINTERFERENCE_CORPUS, soundness_groups
from classified.models.poset import Calculus
from classified.schemas.report import ReportStatus
from classified.services.noninterference_service import NoninterferenceService, is_canonical
from classified.services.parser import parse_term, parse_type
from classified.utils.reports import emit_report


@pytest.mark.parametrize("program", NONINTERFERENCE_CORPUS, ids=lambda p: f"{p.calculus.value}:{p.text}")
def test_corpus_programs_are_noninterfering(poset, program):
    report = NoninterferenceService.check_noninterference(
        program.calculus, poset, program.hole_binding, program.term, program.result_type,
        observers=program.observers,
    )
    assert report.passed, emit_report(report)
    assert report.details["instances"] >= 2
    assert "normal_form" in report.details


def test_moggi_instances_share_a_normal_form(poset):
    report = NoninterferenceService.check_noninterference(
        Calculus.MOGGI, poset, ("x", parse_type("T Bool")), parse_term("(\\y:T Bool. tt) x"), parse_type("Bool"),
        size_bound=3,
    )
    assert report.details == {"program": "(\\y:T Bool. tt) x", "normal_form": "tt", "instances": 2}
    assert report.cases == 3
    assert report.status == ReportStatus.PASS


def test_dcc_rejects_upward_flow(poset):
    """A low hole may influence a high result, so the theorem does not apply"""
    with pytest.raises(SideConditionUnmet):
        NoninterferenceService.check_noninterference(
            Calculus.DCC, poset, ("x", parse_type("T[L] Bool")),
            parse_term("let y = x in ret[H] y"), parse_type("T[H] Bool"),
        )


def test_sealing_rejects_permitted_observer(poset):
    with pytest.raises(SideConditionUnmet):
        NoninterferenceService.check_noninterference(
            Calculus.SEALING, poset, ("x", parse_type("Seal[H] Bool")),
            parse_term("unseal[H] x"), parse_type("Bool"), observers=["H"],
        )


def test_hole_and_result_shapes_are_checked(poset):
    with pytest.raises(SideConditionUnmet):
        NoninterferenceService.check_noninterference(
            Calculus.MOGGI, poset, ("x", parse_type("Bool")), parse_term("x"), parse_type("Bool"),
        )
    with pytest.raises(SideConditionUnmet):
        NoninterferenceService.check_noninterference(
            Calculus.DP, poset, ("x", parse_type("BoolCo")), parse_term("x"), parse_type("BoolCo"),
        )


def test_dp_leak_is_untypable(poset):
    """Branching on a codiscrete secret into a boxed result never typechecks"""
    with pytest.raises(NotCodiscrete):
        NoninterferenceService.check_noninterference(
            Calculus.DP, poset, ("x", parse_type("BoolCo")),
            parse_term("if x then box tt else box ff"), parse_type("Box Bool"),
        )


@pytest.mark.parametrize("group", sorted(soundness_groups().items(), key=lambda kv: (kv[0][0].value, kv[0][1])),
                         ids=lambda kv: f"{kv[0][0].value}:{','.join(kv[0][1]) or '-'}")
def test_soundness_corpus(poset, group):
    (calculus, observers), terms = group
    report = NoninterferenceService.check_soundness(calculus, poset, terms, observers)
    assert report.passed, emit_report(report)
    assert report.cases > len(terms)
    assert report.details["terms"] == len(terms)


def test_canonical_forms():
    assert is_canonical(parse_term("tt"))
    assert is_canonical(parse_term("ret[H] ff"))
    assert is_canonical(parse_term("box unit"))
    assert not is_canonical(parse_term("fst (tt, ff)"))


@pytest.mark.parametrize("label", ["L", "H"])
def test_soundness_of_unsealing_lambdas(poset, label):
    """Reduction through a lambda that unseals its argument keeps the denotation"""
    terms = [
        parse_term(f"\\y:Seal[{label}] Bool. unseal[{label}] y"),
        parse_term(f"(\\y:Seal[{label}] Bool. unseal[{label}] y) (seal[{label}] ff)"),
        parse_term(
            f"(\\f:Seal[{label}] Bool -> Bool. f (seal[{label}] tt)) (\\y:Seal[{label}] Bool. unseal[{label}] y)"
        ),
    ]
    report = NoninterferenceService.check_soundness(Calculus.SEALING, poset, terms, (label,))
    assert report.passed, emit_report(report)
    assert report.details["terms"] == 3


def test_sealed_function_under_low_observer_is_noninterfering(poset):
    """A low observer may pass a high secret to a function that cannot open it"""
    report = NoninterferenceService.check_noninterference(
        Calculus.SEALING, poset, ("x", parse_type("Seal[H] Bool")),
        parse_term("(\\g:Seal[H] Bool -> Seal[H] Bool. fst (tt, g x)) (\\y:Seal[H] Bool. y)"),
        parse_type("Bool"), observers=["L"],
    )
    assert report.passed, emit_report(report)
