"""
Tests for the levelled functors, modalities and predicates
"""
import pytest

from classified.core.exceptions import NotConstantOnClasses
from classified.models.cset import CSetMorphism, LabelUniverse, LevelMask, ModalityKind
from classified.models.element import FF, TT, Atom, Pair, make_class
from classified.services.category_service import CategoryService
from classified.services.cohesion_service import CohesionService, TransposeDirection

cat = CategoryService
coh = CohesionService


def test_forget(universe, delta_bool):
    """U_π drops exactly the selected labels"""
    L = LabelUniverse.of(["L"])
    assert coh.forget(LevelMask.of(universe, {"H"}), delta_bool) == cat.delta_bool(L)
    assert coh.forget(LevelMask.full(universe), delta_bool).universe == LabelUniverse.of([])
    assert coh.forget(LevelMask.of(universe), delta_bool) == delta_bool


def test_discretize_and_codiscretize(universe, delta_bool, nabla_bool):
    """Δ and ∇ on the bare booleans, and strictness of U after either"""
    bare = cat.delta_bool(LabelUniverse.of([]))
    full = LevelMask.full(universe)
    assert coh.discretize(full, bare) == delta_bool
    assert coh.codiscretize(full, bare) == nabla_bool
    mask = LevelMask.of(universe, {"H"})
    X = coh.forget(mask, nabla_bool)
    assert coh.forget(mask, coh.discretize(mask, X)) == X
    assert coh.forget(mask, coh.codiscretize(mask, X)) == X
    mixed = coh.codiscretize(mask, cat.delta_bool(LabelUniverse.of(["L"])))
    assert len(mixed.relation("L")) == 2
    assert len(mixed.relation("H")) == 4
    assert coh.discretize(LevelMask.of(LabelUniverse.of(["L"])), X) == X


def test_components(universe, nabla_bool, empty, chain_xyz):
    """Classes of the equivalence generated at π"""
    assert len(coh.components(LevelMask.full(universe), nabla_bool).object.carrier) == 1
    parts = coh.components(LevelMask.full(chain_xyz.universe), chain_xyz)
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert set(parts.object.carrier) == {make_class([a, b]), make_class([c])}
    assert parts.quotient(a) == parts.quotient(b)
    assert coh.components(LevelMask.full(universe), empty).object.carrier == ()


def test_components_factor(chain_xyz):
    """Maps constant on classes factor through the quotient, others are refused"""
    mask = LevelMask.full(chain_xyz.universe)
    parts = coh.components(mask, chain_xyz)
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    target = coh.discretize(mask, cat.delta_bool(LabelUniverse.of([])))
    good = cat.construct_morphism(chain_xyz, target, [(a, TT), (b, TT), (c, FF)])
    factored = parts.factor(good)
    assert factored(parts.quotient(c)) == FF
    assert parts.unfactor(factored) == good
    split = CSetMorphism.make(chain_xyz, target, {a: TT, b: FF, c: FF})
    with pytest.raises(NotConstantOnClasses):
        parts.factor(split)


def test_modality_objects(universe, delta_bool, nabla_bool, chain_xyz):
    """□ strips to the diagonal, ◆ to the complete relation, ∫ to components"""
    full = LevelMask.full(universe)
    assert coh.modality_object(ModalityKind.BOX, full, nabla_bool) == delta_bool
    assert coh.modality_object(ModalityKind.DIAMOND, full, delta_bool) == nabla_bool
    shaped = coh.modality_object(ModalityKind.SHAPE, LevelMask.full(chain_xyz.universe), chain_xyz)
    assert len(shaped.carrier) == 2
    assert len(shaped.relation("L")) == 2


def test_modality_morphisms(universe, nabla_bool, chain_xyz):
    """Functorial action keeps mappings for □ and ◆ and maps classes for ∫"""
    mask = LevelMask.of(universe, {"H"})
    identity = cat.identity(nabla_bool)
    assert coh.modality_morphism(ModalityKind.DIAMOND, mask, identity) == cat.identity(coh.diamond(mask, nabla_bool))
    s = cat.construct_morphism(nabla_bool, nabla_bool, [(TT, FF), (FF, TT)])
    boxed = coh.modality_morphism(ModalityKind.BOX, mask, s)
    assert boxed.mapping == s.mapping and boxed.source == coh.box(mask, nabla_bool)

    a, b, c = Atom("a"), Atom("b"), Atom("c")
    merge = cat.construct_morphism(chain_xyz, chain_xyz, [(a, c), (b, c), (c, c)])
    shaped = coh.modality_morphism(ModalityKind.SHAPE, LevelMask.full(chain_xyz.universe), merge)
    assert shaped(make_class([a, b])) == make_class([c])
    assert shaped(make_class([c])) == make_class([c])


def test_structural_maps(universe, nabla_bool, empty):
    """Counit of □ is injective, ∫ collapses a codiscrete set, ◆ on 0 is empty"""
    full = LevelMask.full(universe)
    counit = coh.structural_map(ModalityKind.BOX, full, nabla_bool)
    assert len(set(counit.images())) == len(nabla_bool.carrier)
    unit = coh.structural_map(ModalityKind.SHAPE, full, nabla_bool)
    assert len(set(unit.images())) == 1
    assert coh.structural_map(ModalityKind.DIAMOND, full, empty).mapping == ()


def test_adjoint_transpose(universe, delta_bool, nabla_bool):
    """□ ⊣ ◆ transposes keep the mapping and invert each other"""
    mask = LevelMask.of(universe, {"L"})
    counit = coh.structural_map(ModalityKind.BOX, mask, nabla_bool)
    forward = coh.adjoint_transpose(TransposeDirection.FORWARD, mask, counit, nabla_bool)
    assert forward == coh.structural_map(ModalityKind.DIAMOND, mask, nabla_bool)
    back = coh.adjoint_transpose(TransposeDirection.BACKWARD, mask, forward, nabla_bool)
    assert back == counit
    for A in (delta_bool, nabla_bool):
        for B in (delta_bool, nabla_bool):
            left = cat.enumerate_hom(coh.box(mask, A), B)
            right = cat.enumerate_hom(A, coh.diamond(mask, B))
            assert len(left) == len(right)


def test_strength(universe, delta_bool, nabla_bool):
    """The strength is the identity on the four pairs"""
    mask = LevelMask.full(universe)
    t = coh.strength(mask, delta_bool, nabla_bool)
    assert len(t.mapping) == 4
    assert all(x == y for x, y in t.mapping)
    assert cat.validate_morphism(t) is None
    assert Pair(TT, FF) in t.source


def test_shape_collapse_and_component_products(universe, chain_xyz, delta_bool):
    """∫∫ ≅ ∫ and C(X × Y) → CX × CY are bijections"""
    mask = LevelMask.full(chain_xyz.universe)
    iso = coh.shape_collapse_iso(mask, chain_xyz)
    assert len(set(iso.images())) == len(iso.source.carrier) == 2
    product_map = coh.components_product_map(mask, chain_xyz, chain_xyz)
    assert len(set(product_map.images())) == len(product_map.target.carrier) == 4


def test_protection_and_visibility(universe, delta_bool, nabla_bool, empty):
    """Shape tests of the relations at π"""
    full = LevelMask.full(universe)
    L = LevelMask.of(universe, {"L"})
    assert coh.is_protected_at(nabla_bool, full)
    assert not coh.is_visible_at(nabla_bool, L)
    assert coh.is_protected_at(coh.diamond(L, delta_bool), L)
    assert coh.is_visible_at(delta_bool, full)
    assert coh.is_protected_at(empty, full) and coh.is_visible_at(empty, full)


def test_nested_universe_functors(universe, delta_bool):
    """U_α, Δ_α and ∇_α between nested label sets"""
    L = LabelUniverse.of(["L"])
    small = coh.forget_to(delta_bool, L)
    assert small == cat.delta_bool(L)
    assert coh.discretize_to(small, universe) == delta_bool
    assert len(coh.codiscretize_to(small, universe).relation("H")) == 4
