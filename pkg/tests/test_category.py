"""
Tests for classified sets and their categorical structure
"""
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from classified.core.exceptions import (
    EnumerationCapExceeded,
    NotAMorphism,
    NotTotal,
    RelationOutOfCarrier,
)
from classified.models.cset import ClassifiedSet, CSetMorphism, LabelUniverse
from classified.models.element import FF, STAR, TT, Atom, Inl, Inr, Pair, make_fun
from classified.services.category_service import CategoryService
from classified.services.generator_service import GeneratorService

cat = CategoryService


def swap(X: ClassifiedSet, Y: ClassifiedSet) -> CSetMorphism:
    return cat.construct_morphism(X, Y, [(TT, FF), (FF, TT)])


def constant_tt(X: ClassifiedSet, Y: ClassifiedSet) -> CSetMorphism:
    return cat.construct_morphism(X, Y, [(TT, TT), (FF, TT)])


def test_hom_count_oracle(delta_bool, nabla_bool, unit):
    """The four reference hom-set sizes over {L, H}"""
    assert len(cat.enumerate_hom(nabla_bool, delta_bool)) == 2
    assert len(cat.enumerate_hom(delta_bool, delta_bool)) == 4
    assert len(cat.enumerate_hom(delta_bool, nabla_bool)) == 4
    assert len(cat.enumerate_hom(unit, delta_bool)) == 2


def test_construct_set_adds_diagonal(universe, delta_bool, nabla_bool):
    """No extra pairs gives Δ𝔹; all pairs gives ∇𝔹"""
    assert cat.construct_set(universe, [TT, FF]) == delta_bool
    everything = {(x, y) for x in (TT, FF) for y in (TT, FF)}
    assert cat.construct_set(universe, [FF, TT], {"L": everything, "H": everything}) == nabla_bool
    for label in universe:
        assert (TT, TT) in delta_bool.relation(label)


def test_construct_set_rejects_pairs_outside_carrier(universe):
    """Relations may only mention carrier elements"""
    with pytest.raises(RelationOutOfCarrier):
        cat.construct_set(universe, [Atom("a")], {"L": {(Atom("a"), Atom("b"))}})


def test_construct_morphism(delta_bool, nabla_bool):
    """Swap is a morphism on Δ𝔹 but breaks the relation out of ∇𝔹"""
    swap(delta_bool, delta_bool)
    with pytest.raises(NotAMorphism) as error:
        swap(nabla_bool, delta_bool)
    assert error.value.label == "H"
    constant_tt(nabla_bool, delta_bool)
    with pytest.raises(NotTotal):
        cat.construct_morphism(delta_bool, delta_bool, [(TT, TT)])


def test_validate_morphism_reports_first_violation(delta_bool, nabla_bool):
    """Violations are found in label order, then pair order"""
    bad = CSetMorphism(nabla_bool, delta_bool, ((FF, TT), (TT, FF)))
    assert cat.validate_morphism(bad) == ("H", FF, TT)
    assert cat.validate_morphism(cat.identity(delta_bool)) is None


def test_compose_and_identity(delta_bool, nabla_bool):
    """Identity laws, involution of swap and constants absorbing composition"""
    s = swap(delta_bool, delta_bool)
    assert cat.compose(s, s) == cat.identity(delta_bool)
    assert cat.compose(cat.identity(delta_bool), s) == s
    c = constant_tt(nabla_bool, delta_bool)
    for e in cat.enumerate_hom(delta_bool, nabla_bool):
        assert cat.compose(c, e).images() == [TT, TT]


def test_terminal_and_initial(universe, delta_bool, nabla_bool, unit, empty):
    """Unique maps into 1 and out of 0"""
    assert len(cat.enumerate_hom(delta_bool, unit)) == 1
    assert cat.bang(nabla_bool).images() == [STAR, STAR]
    assert len(cat.enumerate_hom(empty, delta_bool)) == 1
    assert len(cat.enumerate_hom(delta_bool, empty)) == 0
    assert len(cat.enumerate_hom(empty, empty)) == 1
    assert cat.empty_morphism(delta_bool).mapping == ()
    bare = cat.terminal(LabelUniverse.of([]))
    assert bare.carrier == (STAR,)
    assert cat.identity(empty).mapping == ()


def test_product(delta_bool, nabla_bool, unit):
    """Componentwise relation and pairing"""
    L = LabelUniverse.of(["L"])
    mixed = cat.product(cat.delta_bool(L), cat.nabla_bool(L)).object
    assert mixed.related("L", Pair(TT, TT), Pair(TT, FF))
    assert not mixed.related("L", Pair(TT, TT), Pair(FF, TT))
    assert len(cat.product(delta_bool, delta_bool).object.carrier) == 4
    cone = cat.product(delta_bool, delta_bool)
    point_tt = cat.construct_morphism(unit, delta_bool, [(STAR, TT)])
    point_ff = cat.construct_morphism(unit, delta_bool, [(STAR, FF)])
    assert cone.tuple(point_tt, point_ff).images() == [Pair(TT, FF)]


def test_coproduct(universe, delta_bool, unit):
    """Tags never relate and 1 + 1 has the shape of Δ𝔹"""
    cocone = cat.coproduct(delta_bool, delta_bool)
    assert not cocone.object.related("L", Inl(TT), Inr(TT))
    fold = cocone.cotuple(cat.identity(delta_bool), cat.identity(delta_bool))
    assert fold(Inl(TT)) == TT and fold(Inr(FF)) == FF
    two = cat.coproduct(unit, unit).object
    renamed = {Inl(STAR): TT, Inr(STAR): FF}
    rebuilt = ClassifiedSet.make(
        universe,
        [renamed[x] for x in two.carrier],
        {label: {(renamed[x], renamed[y]) for x, y in two.relation(label)} for label in universe},
    )
    assert rebuilt == delta_bool


def test_equalizer(delta_bool):
    """Fixed points of the parallel pair"""
    identity = cat.identity(delta_bool)
    assert cat.equalizer(identity, swap(delta_bool, delta_bool)).object.carrier == ()
    assert cat.equalizer(identity, identity).object == delta_bool
    assert cat.equalizer(constant_tt(delta_bool, delta_bool), identity).object.carrier == (TT,)


def test_coequalizer(universe, delta_bool, unit):
    """Classes of the generated equivalence"""
    pick_tt = cat.construct_morphism(unit, delta_bool, [(STAR, TT)])
    pick_ff = cat.construct_morphism(unit, delta_bool, [(STAR, FF)])
    glued = cat.coequalizer(pick_tt, pick_ff).object
    assert len(glued.carrier) == 1
    assert all(glued.related(label, glued.carrier[0], glued.carrier[0]) for label in universe)
    identity = cat.identity(delta_bool)
    assert len(cat.coequalizer(identity, identity).object.carrier) == 2

    sum_object = cat.coproduct(delta_bool, delta_bool).object
    f = cat.construct_morphism(unit, sum_object, [(STAR, Inl(TT))])
    g = cat.construct_morphism(unit, sum_object, [(STAR, Inr(TT))])
    assert len(cat.coequalizer(f, g).object.carrier) == 3


def test_exponential(delta_bool, nabla_bool, unit):
    """Sizes of function spaces and currying a projection"""
    power = cat.exponential(delta_bool, delta_bool)
    assert len(power.object.carrier) == 4
    for label in power.object.universe:
        assert len(power.object.relation(label)) == 4
    assert len(cat.exponential(nabla_bool, delta_bool).object.carrier) == 2

    cone = cat.product(unit, delta_bool)
    curried = power.curry(cone.proj2)
    assert curried.images() == [make_fun([(FF, FF), (TT, TT)])]
    assert power.uncurry(curried) == cone.proj2


def test_enumeration_cap(delta_bool):
    """Hom enumeration refuses to exceed the cap"""
    with pytest.raises(EnumerationCapExceeded):
        cat.enumerate_hom(delta_bool, delta_bool, cap=3)


def test_points_and_constants(delta_bool, nabla_bool, empty):
    """Points biject with the carrier; constancy is about distinct images"""
    assert len(cat.enumerate_points(delta_bool)) == 2
    assert len(cat.enumerate_points(nabla_bool)) == 2
    assert cat.enumerate_points(empty) == []
    assert cat.is_constant(constant_tt(nabla_bool, delta_bool))
    assert not cat.is_constant(cat.identity(delta_bool))
    assert cat.is_constant(cat.empty_morphism(delta_bool))


def test_set_round_trips_through_dict(delta_bool, nabla_bool):
    """The serialized form used in reports re-parses to the same set"""
    for X in (delta_bool, nabla_bool, cat.product(delta_bool, nabla_bool).object):
        assert ClassifiedSet.from_dict(X.to_dict()) == X


@hypothesis_settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_generated_sets_are_reflexive_and_deterministic(seed):
    """Same seed, same set; every relation contains the diagonal"""
    universe = LabelUniverse.of(["L", "H"])
    first = GeneratorService.random_classified_set(seed, universe, 3)
    assert first == GeneratorService.random_classified_set(seed, universe, 3)
    assert len(first.carrier) <= 3
    for label in universe:
        assert all((x, x) in first.relation(label) for x in first.carrier)


def test_generated_set_with_no_room_is_empty(universe):
    """A carrier bound of zero gives the empty set"""
    assert GeneratorService.random_classified_set(7, universe, 0).carrier == ()
