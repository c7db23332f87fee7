"""
Tests for the parser, printer, substitution and normalizer
"""
import pytest

from classified.core.exceptions import FuelExhausted, ParseError
from classified.corpus import NONINTERFERENCE_CORPUS, SOUNDNESS_CORPUS
from classified.models.syntax import (
    App,
    Arrow,
    BoolT,
    BoxI,
    BoxT,
    FalseTm,
    If,
    Lam,
    LevMonad,
    Prod,
    SealT,
    Sum,
    TrueTm,
    UnitT,
    Var,
)
from classified.services.parser import parse_term, parse_type
from classified.services.syntax_service import (
    alpha_equal,
    free_vars,
    normalize,
    print_term,
    print_type,
    step,
    substitute,
    term_size,
)


def test_parse_terms():
    """Conditional over boxes and an annotated lambda"""
    assert parse_term("if b then box tt else box ff") == If(Var("b"), BoxI(TrueTm()), BoxI(FalseTm()))
    assert parse_term("\\x:Bool. x") == Lam("x", BoolT(), Var("x"))
    assert parse_term("f x y") == App(App(Var("f"), Var("x")), Var("y"))


def test_parse_rejects_malformed_input():
    """Errors carry the position of the offending token"""
    with pytest.raises(ParseError) as error:
        parse_term("let x = in")
    assert error.value.line == 1
    with pytest.raises(ParseError):
        parse_type("Bool ->")


def test_type_precedence():
    """Arrows associate right, products bind tighter than sums, prefixes tightest"""
    assert parse_type("Bool -> Bool -> Bool") == Arrow(BoolT(), Arrow(BoolT(), BoolT()))
    assert parse_type("Bool + Bool * Unit") == Sum(BoolT(), Prod(BoolT(), UnitT()))
    assert parse_type("T[H] Bool -> Box Bool") == Arrow(LevMonad("H", BoolT()), BoxT(BoolT()))
    assert parse_type("Seal[L] (Bool * Bool)") == SealT("L", Prod(BoolT(), BoolT()))


def test_print_round_trip_on_corpora():
    """Printing then parsing gives an alpha-equal term"""
    texts = [p.text for p in NONINTERFERENCE_CORPUS] + [s.text for s in SOUNDNESS_CORPUS]
    texts += [
        "let x = (let y = ret tt in ret y) in ret x",
        "case inl tt of inl a => \\z:Bool. z | inr b => \\z:Bool. b",
        "fst (snd (unit, (tt, ff)))",
    ]
    for text in texts:
        term = parse_term(text)
        assert alpha_equal(parse_term(print_term(term)), term), text
    assert print_term(TrueTm()) == "tt"
    for text in ["Bool -> (Bool -> Bool) -> Bool", "(Bool + Unit) * Bool", "T (T[L] Bool)"]:
        assert parse_type(print_type(parse_type(text))) == parse_type(text)


def test_substitute_avoids_capture():
    """(λy. x)[y/x] renames the binder"""
    result = substitute(parse_term("\\y:Bool. x"), "x", Var("y"))
    assert isinstance(result, Lam) and result.name != "y"
    assert result.body == Var("y")
    assert substitute(Var("x"), "x", TrueTm()) == TrueTm()
    untouched = parse_term("\\z:Bool. z")
    assert alpha_equal(substitute(untouched, "x", TrueTm()), untouched)


def test_normalize_examples():
    """Computation rules for conditionals, box and seal"""
    assert normalize(parse_term("if tt then ff else tt")) == FalseTm()
    assert normalize(parse_term("let box u = box tt in u")) == TrueTm()
    assert normalize(parse_term("unseal[H] (seal[H] tt)")) == TrueTm()
    assert normalize(parse_term("(\\p:Bool * Bool. snd p) (tt, ff)")) == FalseTm()


def test_normalize_is_idempotent_and_deterministic():
    """A normal form has no further step"""
    for entry in SOUNDNESS_CORPUS:
        nf = normalize(entry.term)
        assert step(nf) is None
        assert alpha_equal(normalize(nf), nf)
        assert alpha_equal(normalize(entry.term), nf)


def test_normalize_runs_out_of_fuel():
    """Self application of an untyped shape never terminates"""
    omega = "(\\x:Bool. x x) (\\x:Bool. x x)"
    with pytest.raises(FuelExhausted):
        normalize(parse_term(omega), fuel=50)


def test_alpha_equality():
    """Bound names do not matter, constants and labels do"""
    assert alpha_equal(parse_term("\\x:Bool. x"), parse_term("\\y:Bool. y"))
    assert not alpha_equal(TrueTm(), FalseTm())
    assert alpha_equal(parse_term("box tt"), parse_term("box tt"))
    assert not alpha_equal(parse_term("seal[L] tt"), parse_term("seal[H] tt"))
    assert not alpha_equal(parse_term("\\x:Bool. x"), parse_term("\\x:Unit. x"))


def test_free_vars_and_size():
    """Free variables skip binders; size counts nodes"""
    assert free_vars(parse_term("\\x:Bool. f x")) == {"f"}
    assert term_size(parse_term("ret tt")) == 2
    assert term_size(TrueTm()) == 1
