"""
Tests for poset loading and the four typecheckers
"""
import pytest

from classified.core.exceptions import (
    ConfigError,
    CycleViolatesAntisymmetry,
    ForeignConstruct,
    ModalViolation,
    NotCodiscrete,
    NotProtected,
    TypeMismatch,
    UnboundVariable,
    UnknownLabel,
    UnsealNotPermitted,
)
from classified.models.poset import Calculus, TypingContext
from classified.models.syntax import BoolT, BoxT, LevMonad, Monad, SealT
from classified.services.parser import parse_term, parse_type
from classified.services.poset_service import PosetService
from classified.services.typing_service import TypingService, is_codiscrete_type, is_protected_type


def typecheck(calculus, text, poset, expected=None, ctx=(), modal=(), observers=()):
    context = TypingContext.empty(calculus, observers)
    for name, ty in modal:
        context = context.extend_modal(name, parse_type(ty))
    for name, ty in ctx:
        context = context.extend(name, parse_type(ty))
    return TypingService.typecheck(
        context, parse_term(text), poset, parse_type(expected) if expected else None
    )


@pytest.fixture
def diamond():
    return PosetService.load_poset({
        "labels": ["Bot", "A", "B", "Top"],
        "order": [["Bot", "A"], ["Bot", "B"], ["A", "Top"], ["B", "Top"]],
    })


def test_poset_closure(diamond):
    """The order is closed under reflexivity and transitivity"""
    assert diamond.below("Bot", "Top")
    assert diamond.below("A", "A")
    assert not diamond.below("A", "B")
    assert PosetService.down_set(diamond, "Top") == frozenset({"Bot", "A", "B", "Top"})
    assert PosetService.down_set(diamond, "A") == frozenset({"Bot", "A"})
    assert PosetService.down_union(diamond, ["A", "B"]) == frozenset({"Bot", "A", "B"})
    assert PosetService.below_some(diamond, "Bot", ["B"])
    assert not PosetService.below_some(diamond, "Top", ["A", "B"])


def test_poset_rejects_cycles_and_unknown_labels():
    """Antisymmetry is enforced after closing the order"""
    with pytest.raises(CycleViolatesAntisymmetry):
        PosetService.load_poset({"labels": ["L", "M", "H"], "order": [["L", "M"], ["M", "H"], ["H", "L"]]})
    with pytest.raises(UnknownLabel):
        PosetService.load_poset({"labels": ["L"], "order": [["L", "X"]]})


@pytest.mark.parametrize("label", ["T", "Box", "1", "seal"])
def test_poset_rejects_labels_programs_cannot_name(label):
    """Poset labels must parse as identifiers that are not keywords"""
    with pytest.raises(ConfigError):
        PosetService.load_poset({"labels": [label]})


def test_poset_file_validation(tmp_path):
    source = tmp_path / "poset.json"
    source.write_text('{"labels": ["Lo", "Hi"], "order": [["Lo", "Hi"]]}')
    assert PosetService.load_poset_file(source).below("Lo", "Hi")
    for text in ["{not json", '{"labels": []}', '{"labels": ["A"], "order": [["A"]]}']:
        source.write_text(text)
        with pytest.raises(ConfigError):
            PosetService.load_poset_file(source)


def test_discrete_poset():
    """No generators leaves only the diagonal"""
    poset = PosetService.load_poset({"labels": ["A", "B"]})
    assert poset.generators() == []
    assert PosetService.down_set(poset, "A") == frozenset({"A"})


def test_default_poset(poset):
    assert poset.labels.labels == ("H", "L")
    assert poset.below("L", "H")
    assert not poset.below("H", "L")


def test_moggi_typing(poset):
    """Monadic bind synthesizes T A and demands a monadic result"""
    assert typecheck(Calculus.MOGGI, "let x = ret tt in ret x", poset) == Monad(BoolT())
    assert typecheck(Calculus.MOGGI, "\\x:Bool. x", poset) == parse_type("Bool -> Bool")
    with pytest.raises(TypeMismatch):
        typecheck(Calculus.MOGGI, "let y = ret tt in y", poset)
    with pytest.raises(TypeMismatch):
        typecheck(Calculus.MOGGI, "tt tt", poset)
    with pytest.raises(UnboundVariable):
        typecheck(Calculus.MOGGI, "y", poset)


def test_injections_need_an_expected_type(poset):
    with pytest.raises(TypeMismatch):
        typecheck(Calculus.MOGGI, "inl tt", poset)
    assert typecheck(Calculus.MOGGI, "inl tt", poset, "Bool + Unit") == parse_type("Bool + Unit")
    identity = "\\s:Bool + Unit. case s of inl b => inl b | inr u => inr u"
    ty = "Bool + Unit -> Bool + Unit"
    assert typecheck(Calculus.MOGGI, identity, poset, ty) == parse_type(ty)


def test_foreign_constructs_are_rejected(poset):
    with pytest.raises(ForeignConstruct):
        typecheck(Calculus.MOGGI, "box tt", poset)
    with pytest.raises(ForeignConstruct):
        typecheck(Calculus.DP, "ret tt", poset)
    with pytest.raises(ForeignConstruct):
        typecheck(Calculus.SEALING, "ret[L] tt", poset)
    with pytest.raises(ForeignConstruct):
        typecheck(Calculus.DCC, "tt", poset, "BoolCo")


def test_dp_conditional_under_box(poset):
    """An ordinary boolean may choose between two boxed constants"""
    result = typecheck(Calculus.DP, "if b then box tt else box ff", poset, ctx=[("b", "Bool")])
    assert result == BoxT(BoolT())


def test_dp_box_hides_ordinary_variables(poset):
    with pytest.raises(ModalViolation):
        typecheck(Calculus.DP, "box f", poset, ctx=[("f", "Bool -> Bool")])
    with pytest.raises(ModalViolation):
        typecheck(Calculus.DP, "box f", poset, "Box (Bool -> Bool)", ctx=[("f", "Bool -> Bool")])


def test_dp_modal_variables_survive_box(poset):
    assert typecheck(Calculus.DP, "box u", poset, modal=[("u", "Bool")]) == BoxT(BoolT())
    assert typecheck(Calculus.DP, "let box u = box tt in box u", poset) == BoxT(BoolT())


def test_dp_codiscrete_elimination(poset):
    """A BoolCo scrutinee only eliminates into codiscrete types"""
    ctx = [("x", "BoolCo")]
    assert typecheck(Calculus.DP, "if x then tt else ff", poset, "BoolCo", ctx=ctx) == parse_type("BoolCo")
    assert typecheck(Calculus.DP, "if x then unit else unit", poset, ctx=ctx) == parse_type("Unit")
    with pytest.raises(NotCodiscrete):
        typecheck(Calculus.DP, "if x then tt else ff", poset, ctx=ctx)
    with pytest.raises(NotCodiscrete):
        typecheck(Calculus.DP, "if x then box tt else box ff", poset, ctx=ctx)


def test_dcc_protected_bind(poset):
    """Low data may flow into a high computation but not back"""
    ctx = [("x", "T[L] Bool")]
    assert typecheck(Calculus.DCC, "let y = x in ret[H] y", poset, ctx=ctx) == LevMonad("H", BoolT())
    with pytest.raises(NotProtected):
        typecheck(Calculus.DCC, "let y = x in ret[L] y", poset, "T[L] Bool", ctx=[("x", "T[H] Bool")])
    with pytest.raises(UnknownLabel):
        typecheck(Calculus.DCC, "ret[Z] tt", poset)


def test_sealing_typing(poset):
    """Sealing is always allowed; unsealing needs an observer above the label"""
    assert typecheck(Calculus.SEALING, "seal[H] tt", poset) == SealT("H", BoolT())
    ctx = [("x", "Seal[H] Bool")]
    with pytest.raises(UnsealNotPermitted):
        typecheck(Calculus.SEALING, "unseal[H] x", poset, ctx=ctx, observers=["L"])
    assert typecheck(Calculus.SEALING, "unseal[H] x", poset, ctx=ctx, observers=["H"]) == BoolT()
    assert typecheck(Calculus.SEALING, "unseal[L] x'", poset, ctx=[("x'", "Seal[L] Bool")], observers=["H"]) == BoolT()
    with pytest.raises(TypeMismatch):
        typecheck(Calculus.SEALING, "unseal[L] x", poset, ctx=ctx, observers=["H"])


def test_redex_checks_against_expected_type(poset):
    """A beta redex is checked through its annotated lambda"""
    text = "(\\d:BoolCo. if d then ff else tt) tt"
    assert typecheck(Calculus.DP, text, poset, "BoolCo") == parse_type("BoolCo")


def test_protected_types(poset):
    assert is_protected_type(LevMonad("H", BoolT()), "L", poset)
    assert is_protected_type(LevMonad("H", BoolT()), "H", poset)
    assert not is_protected_type(LevMonad("L", BoolT()), "H", poset)
    assert is_protected_type(LevMonad("L", LevMonad("H", BoolT())), "H", poset)
    assert is_protected_type(parse_type("Bool -> T[H] Bool"), "H", poset)
    assert is_protected_type(parse_type("T[H] Bool * T[H] Unit"), "H", poset)
    assert not is_protected_type(parse_type("T[H] Bool * Bool"), "H", poset)
    assert not is_protected_type(parse_type("T[H] Bool + T[H] Bool"), "H", poset)
    assert not is_protected_type(BoolT(), "L", poset)


def test_codiscrete_types():
    assert is_codiscrete_type(parse_type("BoolCo"))
    assert is_codiscrete_type(parse_type("Unit"))
    assert is_codiscrete_type(parse_type("Bool -> BoolCo"))
    assert is_codiscrete_type(parse_type("BoolCo * Unit"))
    assert not is_codiscrete_type(parse_type("Box Bool"))
    assert not is_codiscrete_type(parse_type("BoolCo + Unit"))
    assert not is_codiscrete_type(parse_type("Bool"))
