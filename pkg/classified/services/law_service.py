"""
Law Service - seeded law suites over classified sets and the constancy check
"""
import logging
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from functools import lru_cache
from itertools import product as cartesian
from typing import Any, Callable, Dict, FrozenSet, List, Optional

from classified.core.config import settings
from classified.core.exceptions import (
    EnumerationCapExceeded,
    NotCoequalized,
    NotEqualized,
    ShapeMismatch,
    SideConditionUnmet,
)
from classified.models.cset import ClassifiedSet, CSetMorphism, LabelUniverse, LevelMask, ModalityKind
from classified.models.element import Element, Inl, Inr
from classified.schemas.report import CheckReport, Failure
from classified.services.category_service import CategoryService, first_violation
from classified.services.cohesion_service import CohesionService, TransposeDirection
from classified.services.generator_service import case_seeds, draw_set
from classified.utils.reports import failure

logger = logging.getLogger(__name__)

TWO_LABELS = LabelUniverse.of(["H", "L"])
THREE_LABELS = LabelUniverse.of(["H", "L", "M"])
EQUALIZER_PAIRS = 6

cat = CategoryService
coh = CohesionService


class LawGroup(str, Enum):
    """Law suites runnable from the command line"""
    BCC = "bcc"
    ADJUNCTION = "adjunction"
    COROLLARY = "corollary"
    LEVELLED = "levelled"
    STRENGTH = "strength"
    IDEAL = "ideal"
    CONTRACTIBILITY = "contractibility"
    CONSTANCY = "constancy"


class LawRecorder:
    """Cases, failures and notes of one trial"""

    def __init__(self, case_seed: Optional[int] = None):
        self.case_seed = case_seed
        self.cases = 0
        self.failures: List[Failure] = []
        self.notes: List[str] = []

    def check(
        self,
        law: str,
        holds: bool,
        inputs: Callable[[], Dict[str, Any]],
        witness: Optional[Callable[[], Any]] = None,
    ):
        self.cases += 1
        if holds:
            return
        data = inputs()
        if self.case_seed is not None:
            data = {"case_seed": self.case_seed, **data}
        self.failures.append(failure(law, data, witness() if witness else None))
        logger.debug(f"Law {law} failed on case {self.case_seed}")

    def skip(self, law: str, error: EnumerationCapExceeded):
        self.notes.append(f"{law} skipped on case {self.case_seed}: {error.message}")
        logger.warning(f"Skipped {law}: {error.message}")


def _dump(**sets: ClassifiedSet) -> Callable[[], Dict[str, Any]]:
    return lambda: {name: X.to_dict() for name, X in sets.items()}


def _dump_mask(mask: LevelMask, **sets: ClassifiedSet) -> Callable[[], Dict[str, Any]]:
    return lambda: {"mask": mask.sorted_selected(), **{name: X.to_dict() for name, X in sets.items()}}


def _pair(left: ClassifiedSet, right: ClassifiedSet) -> Callable[[], Any]:
    return lambda: {"left": left.to_dict(), "right": right.to_dict()}


def _masks(universe: LabelUniverse, nonempty: bool = False) -> List[LevelMask]:
    return [LevelMask.of(universe, s) for s in universe.subsets() if s or not nonempty]


@lru_cache(maxsize=8192)
def _modal(kind: ModalityKind, selected: FrozenSet[str], X: ClassifiedSet) -> ClassifiedSet:
    return coh.modality_object(kind, LevelMask.of(X.universe, selected), X)


def _box(selected, X: ClassifiedSet) -> ClassifiedSet:
    return _modal(ModalityKind.BOX, frozenset(selected), X)


def _diamond(selected, X: ClassifiedSet) -> ClassifiedSet:
    return _modal(ModalityKind.DIAMOND, frozenset(selected), X)


def _keep(X: ClassifiedSet, kept: FrozenSet[str]) -> FrozenSet[str]:
    """Selection that keeps exactly the given labels of X's universe"""
    return frozenset(X.universe.labels) - kept


def _is_iso(f: CSetMorphism) -> bool:
    """Bijective and the inverse also preserves every relation"""
    images = f.images()
    if len(set(images)) != len(f.source.carrier) or set(images) != set(f.target.carrier):
        return False
    if cat.validate_morphism(f) is not None:
        return False
    inverse = {y: x for x, y in f.mapping}
    return first_violation(f.target, f.source, inverse) is None


def _is_injective(f: CSetMorphism) -> bool:
    return len(set(f.images())) == len(f.mapping)


def _is_surjective(f: CSetMorphism) -> bool:
    return set(f.images()) == set(f.target.carrier)


def _mappings(homs: List[CSetMorphism]):
    return {f.mapping for f in homs}


# ---------------------------------------------------------------------------
# Bicartesian closed structure
# ---------------------------------------------------------------------------

def _bcc_trial(rng: random.Random, rec: LawRecorder):
    A = draw_set(rng, TWO_LABELS, prefix="a")
    B = draw_set(rng, TWO_LABELS, prefix="b")
    C = draw_set(rng, TWO_LABELS, prefix="c")
    inputs = _dump(A=A, B=B, C=C)

    homs = cat.enumerate_hom(A, cat.terminal(A.universe))
    rec.check("terminal_unique", homs == [cat.bang(A)], inputs)
    homs = cat.enumerate_hom(cat.initial(A.universe), A)
    rec.check("initial_unique", homs == [cat.empty_morphism(A)], inputs)

    for law, check in (
        ("product", _product_laws),
        ("coproduct", _coproduct_laws),
        ("equalizer", _equalizer_laws),
        ("coequalizer", _coequalizer_laws),
        ("exponential", _exponential_laws),
    ):
        try:
            check(rng, rec, A, B, C, inputs)
        except EnumerationCapExceeded as e:
            rec.skip(law, e)


def _product_laws(rng, rec: LawRecorder, A, B, C, inputs):
    cone = cat.product(A, B)
    hom_ca, hom_cb = cat.enumerate_hom(C, A), cat.enumerate_hom(C, B)
    hom_cp = cat.enumerate_hom(C, cone.object)
    rec.check("product_count", len(hom_cp) == len(hom_ca) * len(hom_cb), inputs)
    for f, g in cartesian(hom_ca, hom_cb):
        paired = cone.tuple(f, g)
        holds = (
            cat.validate_morphism(paired) is None
            and cat.compose(cone.proj1, paired) == f
            and cat.compose(cone.proj2, paired) == g
        )
        rec.check("product_factor", holds, inputs, lambda: {"f": f.table(), "g": g.table()})
    for h in hom_cp:
        again = cone.tuple(cat.compose(cone.proj1, h), cat.compose(cone.proj2, h))
        rec.check("product_unique", again == h, inputs, h.table)


def _coproduct_laws(rng, rec: LawRecorder, A, B, C, inputs):
    cocone = cat.coproduct(A, B)
    hom_ac, hom_bc = cat.enumerate_hom(A, C), cat.enumerate_hom(B, C)
    hom_sc = cat.enumerate_hom(cocone.object, C)
    rec.check("coproduct_count", len(hom_sc) == len(hom_ac) * len(hom_bc), inputs)
    for f, g in cartesian(hom_ac, hom_bc):
        copaired = cocone.cotuple(f, g)
        holds = (
            cat.validate_morphism(copaired) is None
            and cat.compose(copaired, cocone.inj1) == f
            and cat.compose(copaired, cocone.inj2) == g
        )
        rec.check("coproduct_factor", holds, inputs, lambda: {"f": f.table(), "g": g.table()})
    for h in hom_sc:
        again = cocone.cotuple(cat.compose(h, cocone.inj1), cat.compose(h, cocone.inj2))
        rec.check("coproduct_unique", again == h, inputs, h.table)


def _parallel_pairs(rng: random.Random, A: ClassifiedSet, B: ClassifiedSet):
    homs = cat.enumerate_hom(A, B)
    pairs = [(f, g) for f in homs for g in homs]
    if len(pairs) > EQUALIZER_PAIRS:
        pairs = [pairs[i] for i in sorted(rng.sample(range(len(pairs)), EQUALIZER_PAIRS))]
    return pairs


def _equalizer_laws(rng, rec: LawRecorder, A, B, C, inputs):
    hom_ca = cat.enumerate_hom(C, A)
    for f, g in _parallel_pairs(rng, A, B):
        cone = cat.equalizer(f, g)
        pair_witness = lambda: {"f": f.table(), "g": g.table()}  # noqa: E731
        rec.check(
            "equalizer_commutes",
            cat.compose(f, cone.include) == cat.compose(g, cone.include),
            inputs,
            pair_witness,
        )
        through = Counter(cat.compose(cone.include, k).mapping for k in cat.enumerate_hom(C, cone.object))
        for h in hom_ca:
            if cat.compose(f, h) == cat.compose(g, h):
                k = cone.factor(h)
                holds = cat.compose(cone.include, k) == h and through[h.mapping] == 1
                rec.check("equalizer_factor", holds, inputs, h.table)
            else:
                try:
                    cone.factor(h)
                    refused = False
                except NotEqualized:
                    refused = True
                rec.check("equalizer_refuses", refused, inputs, h.table)


def _coequalizer_laws(rng, rec: LawRecorder, A, B, C, inputs):
    hom_bc = cat.enumerate_hom(B, C)
    for f, g in _parallel_pairs(rng, A, B):
        cocone = cat.coequalizer(f, g)
        pair_witness = lambda: {"f": f.table(), "g": g.table()}  # noqa: E731
        rec.check(
            "coequalizer_commutes",
            cat.compose(cocone.quotient, f) == cat.compose(cocone.quotient, g),
            inputs,
            pair_witness,
        )
        through = Counter(
            cat.compose(k, cocone.quotient).mapping for k in cat.enumerate_hom(cocone.object, C)
        )
        for h in hom_bc:
            if cat.compose(h, f) == cat.compose(h, g):
                k = cocone.factor(h)
                holds = (
                    cat.validate_morphism(k) is None
                    and cat.compose(k, cocone.quotient) == h
                    and through[h.mapping] == 1
                )
                rec.check("coequalizer_factor", holds, inputs, h.table)
            else:
                try:
                    cocone.factor(h)
                    refused = False
                except NotCoequalized:
                    refused = True
                rec.check("coequalizer_refuses", refused, inputs, h.table)


def _exponential_laws(rng, rec: LawRecorder, A, B, C, inputs):
    exp = cat.exponential(A, B)
    P = cat.product(C, A).object
    hom_pb = cat.enumerate_hom(P, B)
    hom_ce = cat.enumerate_hom(C, exp.object)
    rec.check("exponential_count", len(hom_pb) == len(hom_ce), inputs)
    id_a = cat.identity(A)
    for f in hom_pb:
        g = exp.curry(f, C)
        holds = (
            exp.uncurry(g) == f
            and cat.compose(exp.eval, cat.product_map(g, id_a)) == f
        )
        rec.check("exponential_beta", holds, inputs, f.table)
    for g in hom_ce:
        rec.check("exponential_eta", exp.curry(exp.uncurry(g), C) == g, inputs, g.table)


# ---------------------------------------------------------------------------
# Adjunctions
# ---------------------------------------------------------------------------

def _adjunction_trial(rng: random.Random, rec: LawRecorder):
    X = draw_set(rng, TWO_LABELS, prefix="x")
    B = draw_set(rng, TWO_LABELS, prefix="b")
    for mask in _masks(TWO_LABELS):
        Y = draw_set(rng, mask.remaining, prefix="y")
        inputs = _dump_mask(mask, X=X, Y=Y, B=B)
        try:
            _adjunction_laws(rec, mask, X, Y, B, inputs)
        except EnumerationCapExceeded as e:
            rec.skip("adjunction", e)


def _adjunction_laws(rec: LawRecorder, mask: LevelMask, X, Y, B, inputs):
    parts = coh.components(mask, X)
    hom_cy = cat.enumerate_hom(parts.object, Y)
    hom_x_dy = cat.enumerate_hom(X, coh.discretize(mask, Y))
    rec.check("components_discrete_count", len(hom_cy) == len(hom_x_dy), inputs)
    for f in hom_x_dy:
        rec.check("components_discrete_roundtrip", parts.unfactor(parts.factor(f)) == f, inputs, f.table)
    for g in hom_cy:
        rec.check("components_discrete_inverse", parts.factor(parts.unfactor(g)) == g, inputs, g.table)

    left = _mappings(cat.enumerate_hom(coh.discretize(mask, Y), X))
    right = _mappings(cat.enumerate_hom(Y, coh.forget(mask, X)))
    rec.check("discrete_forget_bijection", left == right, inputs)

    left = _mappings(cat.enumerate_hom(coh.forget(mask, X), Y))
    right = _mappings(cat.enumerate_hom(X, coh.codiscretize(mask, Y)))
    rec.check("forget_codiscrete_bijection", left == right, inputs)

    hom_box = cat.enumerate_hom(coh.box(mask, X), B)
    hom_diamond = cat.enumerate_hom(X, coh.diamond(mask, B))
    rec.check("box_diamond_count", len(hom_box) == len(hom_diamond), inputs)
    targets = set(hom_diamond)
    for f in hom_box:
        forward = coh.adjoint_transpose(TransposeDirection.FORWARD, mask, f, X)
        back = coh.adjoint_transpose(TransposeDirection.BACKWARD, mask, forward, B)
        rec.check("box_diamond_transpose", forward in targets and back == f, inputs, f.table)


# ---------------------------------------------------------------------------
# Consequences of pre-cohesion
# ---------------------------------------------------------------------------

def _corollary_trial(rng: random.Random, rec: LawRecorder):
    X = draw_set(rng, TWO_LABELS, prefix="x")
    Y = draw_set(rng, TWO_LABELS, prefix="y")
    for mask in _masks(TWO_LABELS, nonempty=True):
        Z = draw_set(rng, mask.remaining, prefix="z")
        W = draw_set(rng, mask.remaining, prefix="w")
        inputs = _dump_mask(mask, X=X, Y=Y, Z=Z, W=W)
        try:
            _corollary_laws(rec, mask, X, Y, Z, W, inputs)
        except EnumerationCapExceeded as e:
            rec.skip("corollary", e)


def _corollary_laws(rec: LawRecorder, mask: LevelMask, X, Y, Z, W, inputs):
    XY = cat.product(X, Y).object
    X_Y = cat.coproduct(X, Y).object
    forget, disc, codisc = coh.forget, coh.discretize, coh.codiscretize

    left, right = forget(mask, XY), cat.product(forget(mask, X), forget(mask, Y)).object
    rec.check("forget_preserves_products", left == right, inputs, _pair(left, right))
    left, right = forget(mask, X_Y), cat.coproduct(forget(mask, X), forget(mask, Y)).object
    rec.check("forget_preserves_coproducts", left == right, inputs, _pair(left, right))

    left, right = disc(mask, cat.product(Z, W).object), cat.product(disc(mask, Z), disc(mask, W)).object
    rec.check("discrete_preserves_products", left == right, inputs, _pair(left, right))
    left, right = disc(mask, cat.coproduct(Z, W).object), cat.coproduct(disc(mask, Z), disc(mask, W)).object
    rec.check("discrete_preserves_coproducts", left == right, inputs, _pair(left, right))
    left, right = codisc(mask, cat.product(Z, W).object), cat.product(codisc(mask, Z), codisc(mask, W)).object
    rec.check("codiscrete_preserves_products", left == right, inputs, _pair(left, right))

    comparison = coh.components_product_map(mask, X, Y)
    rec.check("components_preserve_products", _is_iso(comparison), inputs, comparison.table)
    rec.check("components_preserve_coproducts", _components_sum_iso(mask, X, Y), inputs)

    rec.check("forget_discrete_identity", forget(mask, disc(mask, Z)) == Z, inputs)
    rec.check("forget_codiscrete_identity", forget(mask, codisc(mask, Z)) == Z, inputs)

    boxed, redacted = coh.box(mask, X), coh.diamond(mask, X)
    rec.check("box_idempotent", coh.box(mask, boxed) == boxed, inputs)
    rec.check("diamond_idempotent", coh.diamond(mask, redacted) == redacted, inputs)
    try:
        collapse_ok = _is_iso(coh.shape_collapse_iso(mask, X))
    except ShapeMismatch:
        collapse_ok = False
    rec.check("shape_idempotent", collapse_ok, inputs)

    left, right = coh.box(mask, XY), cat.product(boxed, coh.box(mask, Y)).object
    rec.check("box_preserves_products", left == right, inputs, _pair(left, right))
    left, right = coh.box(mask, X_Y), cat.coproduct(boxed, coh.box(mask, Y)).object
    rec.check("box_preserves_coproducts", left == right, inputs, _pair(left, right))
    left, right = coh.diamond(mask, XY), cat.product(redacted, coh.diamond(mask, Y)).object
    rec.check("diamond_preserves_products", left == right, inputs, _pair(left, right))

    parts = coh.components(mask, X)
    counts = (
        len(cat.enumerate_hom(parts.object, Z)) == len(cat.enumerate_hom(X, disc(mask, Z))),
        len(cat.enumerate_hom(disc(mask, Z), X)) == len(cat.enumerate_hom(Z, forget(mask, X))),
        len(cat.enumerate_hom(forget(mask, X), Z)) == len(cat.enumerate_hom(X, codisc(mask, Z))),
    )
    rec.check("adjunction_counts", all(counts), inputs, lambda: list(counts))

    counit = coh.structural_map(ModalityKind.BOX, mask, X)
    unit = coh.structural_map(ModalityKind.SHAPE, mask, X)
    points_to_pieces = CSetMorphism.make(
        forget(mask, X), parts.object, {x: parts.quotient(x) for x in X.carrier}
    )
    rec.check("nullstellensatz_counit_injective", _is_injective(counit), inputs, counit.table)
    rec.check("nullstellensatz_unit_surjective", _is_surjective(unit), inputs, unit.table)
    rec.check("points_to_pieces_surjective", _is_surjective(points_to_pieces), inputs, points_to_pieces.table)


def _components_sum_iso(mask: LevelMask, X: ClassifiedSet, Y: ClassifiedSet) -> bool:
    """C_π(X + Y) -> C_π X + C_π Y is well defined and an isomorphism"""
    whole = coh.components(mask, cat.coproduct(X, Y).object)
    left, right = coh.components(mask, X), coh.components(mask, Y)
    target = cat.coproduct(left.object, right.object).object
    mapping: Dict[Element, Element] = {}
    for tagged in whole.source.carrier:
        if isinstance(tagged, Inl):
            image: Element = Inl(left.quotient(tagged.value))
        else:
            image = Inr(right.quotient(tagged.value))
        cls = whole.quotient(tagged)
        if mapping.setdefault(cls, image) != image:
            return False
    return _is_iso(CSetMorphism.make(whole.object, target, mapping))


# ---------------------------------------------------------------------------
# Levelled modalities
# ---------------------------------------------------------------------------

def _levelled_trial(rng: random.Random, rec: LawRecorder):
    X = draw_set(rng, THREE_LABELS, prefix="x")
    subsets = THREE_LABELS.subsets()
    for p, q in cartesian(subsets, subsets):
        _switch_laws(rec, X, p, q)
    for top in subsets:
        for p1, p2 in cartesian(subsets, subsets):
            if p1 <= top and p2 <= top:
                _square_laws(rec, X, top, p1, p2)


def _switch_laws(rec: LawRecorder, X: ClassifiedSet, p: FrozenSet[str], q: FrozenSet[str]):
    inputs = lambda: {"X": X.to_dict(), "pi": sorted(p), "pi_prime": sorted(q)}  # noqa: E731
    disjoint = not (p & q)
    if disjoint:
        rec.check("switch_1", _box(p, _box(q, X)) == _box(p | q, X), inputs)
        rec.check("switch_2", _diamond(p, _diamond(q, X)) == _diamond(p | q, X), inputs)
    else:
        # overlapping masks split into disjoint parts around the shared labels
        shared, left, right = p & q, p - q, q - p
        boxed = _box(p, _box(q, X))
        rec.check(
            "switch_3",
            boxed == _box(p | q, X) and boxed == _box(left, _box(shared, _box(right, X))),
            inputs,
        )
        codiscrete = _diamond(p, _diamond(q, X))
        rec.check(
            "switch_4",
            codiscrete == _diamond(p | q, X) and codiscrete == _diamond(left, _diamond(shared, _diamond(right, X))),
            inputs,
        )
    if p <= q:
        rec.check("switch_5", _box(q, _diamond(p, X)) == _box(q, X), inputs)
        rec.check("switch_6", _diamond(q, _box(p, X)) == _diamond(q, X), inputs)
    if disjoint:
        rec.check("switch_7", _box(p, _diamond(q, X)) == _diamond(q, _box(p, X)), inputs)
    rec.check("switch_8", _box(p, _diamond(q, X)) == _diamond(q - p, _box(p, X)), inputs)
    rec.check("switch_9", _diamond(p, _box(q, X)) == _box(q - p, _diamond(p, X)), inputs)


def _universe(labels: FrozenSet[str]) -> LabelUniverse:
    return LabelUniverse.of(labels)


def _square_laws(rec: LawRecorder, X: ClassifiedSet, top, p1, p2):
    """The basic equations and the multimodal laws on one pullback square"""
    bottom = p1 & p2
    U_top, U1, U2, U0 = _universe(top), _universe(p1), _universe(p2), _universe(bottom)
    inputs = lambda: {  # noqa: E731
        "X": X.to_dict(), "top": sorted(top), "pi_1": sorted(p1), "pi_2": sorted(p2)
    }
    to = coh.forget_to
    Y, Z, T = to(X, U2), to(X, U0), to(X, U_top)

    rec.check(
        "pullback_forget_discrete",
        to(coh.discretize_to(Y, U_top), U1) == coh.discretize_to(to(Y, U0), U1),
        inputs,
    )
    rec.check(
        "pullback_forget_codiscrete",
        to(coh.codiscretize_to(Y, U_top), U1) == coh.codiscretize_to(to(Y, U0), U1),
        inputs,
    )
    if top == p1 | p2:
        rec.check(
            "pullback_discrete_codiscrete",
            coh.discretize_to(coh.codiscretize_to(Z, U1), U_top)
            == coh.codiscretize_to(coh.discretize_to(Z, U2), U_top),
            inputs,
        )

    T1 = to(T, U1)
    rec.check("multimodal_box_forget", _box(_keep(T1, bottom), T1) == to(_box(_keep(T, p2), T), U1), inputs)
    rec.check(
        "multimodal_diamond_forget",
        _diamond(_keep(T1, bottom), T1) == to(_diamond(_keep(T, p2), T), U1),
        inputs,
    )
    box_both = _box(_keep(T, p1), _box(_keep(T, p2), T))
    diamond_both = _diamond(_keep(T, p1), _diamond(_keep(T, p2), T))
    rec.check("multimodal_box_compose", _box(_keep(T, bottom), T) == box_both, inputs)
    rec.check("multimodal_diamond_compose", _diamond(_keep(T, bottom), T) == diamond_both, inputs)
    rec.check("multimodal_box_commute", box_both == _box(_keep(T, p2), _box(_keep(T, p1), T)), inputs)
    rec.check(
        "multimodal_diamond_commute",
        diamond_both == _diamond(_keep(T, p2), _diamond(_keep(T, p1), T)),
        inputs,
    )


# ---------------------------------------------------------------------------
# Strength, exponential ideal, contractibility
# ---------------------------------------------------------------------------

def _multiplication(mask: LevelMask, X: ClassifiedSet) -> CSetMorphism:
    """μ: ◆◆X -> ◆X, the identity on carriers"""
    once = coh.diamond(mask, X)
    return CSetMorphism(coh.diamond(mask, once), once, tuple((x, x) for x in X.carrier))


def _strength_trial(rng: random.Random, rec: LawRecorder):
    A = draw_set(rng, TWO_LABELS, prefix="a")
    B = draw_set(rng, TWO_LABELS, prefix="b")
    C = draw_set(rng, TWO_LABELS, prefix="c")
    compose, ident, pmap = cat.compose, cat.identity, cat.product_map
    for mask in _masks(TWO_LABELS):
        inputs = _dump_mask(mask, A=A, B=B, C=C)
        diamond_map = lambda f: coh.modality_morphism(ModalityKind.DIAMOND, mask, f)  # noqa: E731
        t = coh.strength(mask, A, B)
        rec.check("strength_is_morphism", cat.validate_morphism(t) is None, inputs, t.table)

        one = cat.terminal(A.universe)
        lhs = compose(diamond_map(cat.product(one, A).proj2), coh.strength(mask, one, A))
        rhs = cat.product(one, coh.diamond(mask, A)).proj2
        rec.check("strength_unit", lhs == rhs, inputs, lhs.table)

        lhs = compose(diamond_map(cat.associator(A, B, C)), coh.strength(mask, cat.product(A, B).object, C))
        rhs = compose(
            coh.strength(mask, A, cat.product(B, C).object),
            compose(pmap(ident(A), coh.strength(mask, B, C)), cat.associator(A, B, coh.diamond(mask, C))),
        )
        rec.check("strength_associativity", lhs == rhs, inputs, lhs.table)

        eta_b = coh.structural_map(ModalityKind.DIAMOND, mask, B)
        lhs = compose(t, pmap(ident(A), eta_b))
        rhs = coh.structural_map(ModalityKind.DIAMOND, mask, cat.product(A, B).object)
        rec.check("strength_unit_naturality", lhs == rhs, inputs, lhs.table)

        t_outer = coh.strength(mask, A, coh.diamond(mask, B))
        lhs = compose(_multiplication(mask, cat.product(A, B).object), compose(diamond_map(t), t_outer))
        rhs = compose(t, pmap(ident(A), _multiplication(mask, B)))
        rec.check("strength_multiplication", lhs == rhs, inputs, lhs.table)


def _ideal_trial(rng: random.Random, rec: LawRecorder):
    A = draw_set(rng, TWO_LABELS, prefix="a")
    B = draw_set(rng, TWO_LABELS, prefix="b")
    for mask in _masks(TWO_LABELS, nonempty=True):
        inputs = _dump_mask(mask, A=A, B=B)
        protected = coh.diamond(mask, B)
        rec.check("protected_fixed_by_diamond", coh.is_protected_at(B, mask) == (protected == B), inputs)
        try:
            for law, codomain in (("exponential_ideal", protected), ("exponential_ideal_drawn", B)):
                if coh.is_protected_at(codomain, mask):
                    exp = cat.exponential(A, codomain).object
                    rec.check(law, coh.is_protected_at(exp, mask), inputs, exp.to_dict)
        except EnumerationCapExceeded as e:
            rec.skip("exponential_ideal", e)


def _contractibility_trial(rng: random.Random, rec: LawRecorder):
    X = draw_set(rng, TWO_LABELS, prefix="x")
    for mask in _masks(TWO_LABELS, nonempty=True):
        pieces = coh.components(mask, coh.diamond(mask, X)).object
        expected = 1 if X.carrier else 0
        rec.check(
            "codiscrete_contractible",
            len(pieces.carrier) == expected,
            _dump_mask(mask, X=X),
            lambda: len(pieces.carrier),
        )


# ---------------------------------------------------------------------------
# Constancy
# ---------------------------------------------------------------------------

def _constancy_cases(
    rec: LawRecorder,
    A: ClassifiedSet,
    B: ClassifiedSet,
    mask: LevelMask,
    mask_prime: Optional[LevelMask] = None,
    cap: Optional[int] = None,
) -> bool:
    """Record the constancy checks; False when the preconditions make the check vacuous"""
    inputs = lambda: {  # noqa: E731
        "A": A.to_dict(),
        "B": B.to_dict(),
        "mask": mask.sorted_selected(),
        "mask_prime": mask_prime.sorted_selected() if mask_prime is not None else None,
    }
    if mask.is_empty:
        rec.notes.append("mask is empty; constancy needs at least one redacted label")
        return False
    source = coh.diamond(mask, A)
    if mask_prime is None:
        target = coh.discretize(mask, B)
    else:
        exposed = mask.selected - mask_prime.selected
        if not exposed:
            rec.notes.append("mask minus mask_prime is empty; nothing forces constancy")
            return False
        if not coh.is_visible_at(B, LevelMask.of(B.universe, exposed)):
            raise SideConditionUnmet(f"B is not visible at {{{','.join(sorted(exposed))}}}")
        target = coh.diamond(mask_prime, B)

    homs = cat.enumerate_hom(source, target, cap)
    moving = [h for h in homs if not cat.is_constant(h)]
    rec.check("constancy_constant", not moving, inputs, lambda: moving[0].table())
    if A.carrier:
        rec.check("constancy_point_count", len(homs) == len(B.carrier), inputs, lambda: len(homs))
    else:
        rec.notes.append("empty domain; point count skipped")

    if mask_prime is None and mask.remaining.labels == ():
        dual = cat.enumerate_hom(source, coh.box(mask, A), cap)
        moving = [h for h in dual if not cat.is_constant(h)]
        rec.check("constancy_dual_constant", not moving, inputs, lambda: moving[0].table())
        if A.carrier:
            rec.check("constancy_dual_point_count", len(dual) == len(A.carrier), inputs, lambda: len(dual))
    return True


def _constancy_trial(rng: random.Random, rec: LawRecorder):
    A = draw_set(rng, TWO_LABELS, min_carrier=1, prefix="a")
    for mask in _masks(TWO_LABELS, nonempty=True):
        B = draw_set(rng, mask.remaining, prefix="b")
        try:
            _constancy_cases(rec, A, B, mask)
            for prime in _masks(TWO_LABELS):
                exposed = mask.selected - prime.selected
                if not exposed:
                    continue
                raw = draw_set(rng, TWO_LABELS, prefix="c")
                visible = coh.box(LevelMask.of(TWO_LABELS, exposed), raw)
                _constancy_cases(rec, A, visible, mask, prime)
        except EnumerationCapExceeded as e:
            rec.skip("constancy", e)


TRIALS: Dict[LawGroup, Callable[[random.Random, LawRecorder], None]] = {
    LawGroup.BCC: _bcc_trial,
    LawGroup.ADJUNCTION: _adjunction_trial,
    LawGroup.COROLLARY: _corollary_trial,
    LawGroup.LEVELLED: _levelled_trial,
    LawGroup.STRENGTH: _strength_trial,
    LawGroup.IDEAL: _ideal_trial,
    LawGroup.CONTRACTIBILITY: _contractibility_trial,
    LawGroup.CONSTANCY: _constancy_trial,
}


class LawService:
    """Service class for the law suites"""

    @staticmethod
    def run_law_suite(group: LawGroup, seed: int, trials: int) -> CheckReport:
        """
        Run one law group on seeded random inputs

        Args:
            group: Law group
            seed: Master seed; each trial draws its own 64-bit case seed from it
            trials: Number of trials

        Returns:
            Report with failures in trial order
        """
        group = LawGroup(group)
        if trials < 1:
            raise ValueError("trials must be at least 1")
        logger.info(f"Running law suite {group.value} with seed {seed} and {trials} trials")
        start = time.perf_counter()
        trial = TRIALS[group]

        def run_one(case_seed: int) -> LawRecorder:
            rec = LawRecorder(case_seed)
            trial(random.Random(case_seed), rec)
            return rec

        seeds = case_seeds(seed, trials)
        if settings.WORKERS > 1:
            with ThreadPoolExecutor(max_workers=settings.WORKERS) as pool:
                records = list(pool.map(run_one, seeds))
        else:
            records = [run_one(s) for s in seeds]

        report = CheckReport(
            suite=group.value,
            seed=seed,
            cases=sum(r.cases for r in records),
            failures=[f for r in records for f in r.failures],
            notes=[n for r in records for n in r.notes],
            details={"trials": trials},
        )
        report.vacuous = report.cases == 0
        report.elapsed_ms = (time.perf_counter() - start) * 1000
        logger.info(f"Suite {group.value}: {report.cases} cases, {len(report.failures)} failures")
        return report

    @staticmethod
    def check_constancy(
        A: ClassifiedSet,
        B: ClassifiedSet,
        mask: LevelMask,
        mask_prime: Optional[LevelMask] = None,
        cap: Optional[int] = None,
    ) -> CheckReport:
        """
        Check that maps out of a redacted set are constant

        Args:
            A: Domain before redaction, over the full universe
            B: Over the remaining labels, or over the full universe and
                visible at mask - mask_prime when mask_prime is given
            mask: Redacted labels π
            mask_prime: Target redaction π′ for the ◆_π A -> ◆_π′ B variant
            cap: Enumeration cap

        Returns:
            Report; vacuous when π (or π - π′) is empty
        """
        start = time.perf_counter()
        rec = LawRecorder()
        applicable = _constancy_cases(rec, A, B, mask, mask_prime, cap)
        if not applicable:
            logger.warning("Constancy check is vacuous for the given masks")
        return CheckReport(
            suite="constancy",
            cases=rec.cases,
            failures=rec.failures,
            notes=rec.notes,
            vacuous=not applicable,
            elapsed_ms=(time.perf_counter() - start) * 1000,
        )
