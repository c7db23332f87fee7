"""
Category Service - the bicartesian closed structure of classified sets
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from classified.core.config import settings
from classified.core.exceptions import (
    DuplicateElement,
    EndpointMismatch,
    EnumerationCapExceeded,
    NotAMorphism,
    NotCoequalized,
    NotEqualized,
    NotInTarget,
    NotParallel,
    NotTotal,
    RelationOutOfCarrier,
    UniverseMismatch,
    UnknownLabel,
)
from classified.models.cset import (
    ClassifiedSet,
    CSetMorphism,
    Label,
    LabelUniverse,
    complete,
)
from classified.models.element import (
    FF,
    STAR,
    TT,
    Class,
    Element,
    Fun,
    Inl,
    Inr,
    Pair,
)
from classified.utils.disjoint_set import DisjointSet, class_assignment

logger = logging.getLogger(__name__)

Violation = Tuple[Label, Element, Element]


# ---------------------------------------------------------------------------
# Universal cones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductCone:
    object: ClassifiedSet
    proj1: CSetMorphism
    proj2: CSetMorphism

    def tuple(self, f: CSetMorphism, g: CSetMorphism) -> CSetMorphism:
        """The pairing <f, g>: C -> A x B"""
        if f.source != g.source:
            raise EndpointMismatch("Pairing needs a common source")
        if f.target != self.proj1.target or g.target != self.proj2.target:
            raise EndpointMismatch("Pairing legs do not land in the product factors")
        return CSetMorphism.make(
            f.source, self.object, {c: Pair(f(c), g(c)) for c in f.source.carrier}
        )


@dataclass(frozen=True)
class CoproductCocone:
    object: ClassifiedSet
    inj1: CSetMorphism
    inj2: CSetMorphism

    def cotuple(self, f: CSetMorphism, g: CSetMorphism) -> CSetMorphism:
        """The copairing [f, g]: A + B -> C"""
        if f.target != g.target:
            raise EndpointMismatch("Copairing needs a common target")
        if f.source != self.inj1.source or g.source != self.inj2.source:
            raise EndpointMismatch("Copairing legs do not start at the summands")
        mapping: Dict[Element, Element] = {}
        for tagged in self.object.carrier:
            mapping[tagged] = f(tagged.value) if isinstance(tagged, Inl) else g(tagged.value)
        return CSetMorphism.make(self.object, f.target, mapping)


@dataclass(frozen=True)
class EqualizerCone:
    object: ClassifiedSet
    include: CSetMorphism
    f: CSetMorphism
    g: CSetMorphism

    def factor(self, h: CSetMorphism) -> CSetMorphism:
        if h.target != self.f.source:
            raise EndpointMismatch("Factored morphism must land in the equalized source")
        if any(self.f(h(c)) != self.g(h(c)) for c in h.source.carrier):
            raise NotEqualized()
        return CSetMorphism(h.source, self.object, h.mapping)


@dataclass(frozen=True)
class CoequalizerCocone:
    object: ClassifiedSet
    quotient: CSetMorphism
    f: CSetMorphism
    g: CSetMorphism

    def factor(self, h: CSetMorphism) -> CSetMorphism:
        if h.source != self.f.target:
            raise EndpointMismatch("Factored morphism must start at the coequalized target")
        if any(h(self.f(a)) != h(self.g(a)) for a in self.f.source.carrier):
            raise NotCoequalized()
        mapping = {cls: h(cls.members[0]) for cls in self.object.carrier}
        return CSetMorphism.make(self.object, h.target, mapping)


@dataclass(frozen=True)
class ExponentialObject:
    """B^A together with evaluation and currying"""

    object: ClassifiedSet
    base: ClassifiedSet
    codomain: ClassifiedSet
    eval: CSetMorphism
    cap: int

    def curry(self, f: CSetMorphism, context: Optional[ClassifiedSet] = None) -> CSetMorphism:
        """
        (f: C x A -> B) to (C -> B^A)

        C is read back off the product when A is nonempty; pass it explicitly
        otherwise.
        """
        if f.target != self.codomain:
            raise EndpointMismatch("Curried morphism must land in the exponent codomain")
        if context is None:
            context = _left_factor(f.source, self.base)
        if CategoryService.product(context, self.base).object != f.source:
            raise EndpointMismatch("Curried morphism must start at C x A")
        mapping = {
            c: Fun(tuple((a, f(Pair(c, a))) for a in self.base.carrier))
            for c in context.carrier
        }
        return construct_morphism_from_dict(context, self.object, mapping)

    def uncurry(self, g: CSetMorphism) -> CSetMorphism:
        """(g: C -> B^A) to (C x A -> B)"""
        if g.target != self.object:
            raise EndpointMismatch("Uncurried morphism must land in the exponential")
        source = CategoryService.product(g.source, self.base).object
        mapping = {p: g(p.first).apply(p.second) for p in source.carrier}
        return CSetMorphism.make(source, self.codomain, mapping)


def _left_factor(P: ClassifiedSet, A: ClassifiedSet) -> ClassifiedSet:
    """Recover C from C x A, which is possible exactly when A is nonempty"""
    if not A.carrier:
        raise EndpointMismatch("Cannot recover C from C x 0; pass the context explicitly")
    if not all(isinstance(p, Pair) for p in P.carrier):
        raise EndpointMismatch("Source is not a product")
    firsts = {p.first for p in P.carrier}
    relations = {
        label: {(p.first, q.first) for p, q in P.relation(label) if p.second == q.second}
        for label in P.universe.labels
    }
    return ClassifiedSet.make(P.universe, firsts, relations)


# ---------------------------------------------------------------------------
# Validation helpers
# ---------------------------------------------------------------------------

def first_violation(
    source: ClassifiedSet, target: ClassifiedSet, mapping: Mapping[Element, Element]
) -> Optional[Violation]:
    """First related pair whose images are unrelated, in deterministic order"""
    for label in source.universe.labels:
        target_rel = target.relation(label)
        for x, y in source.sorted_pairs(label):
            if (mapping[x], mapping[y]) not in target_rel:
                return (label, x, y)
    return None


def construct_morphism_from_dict(
    source: ClassifiedSet, target: ClassifiedSet, mapping: Mapping[Element, Element]
) -> CSetMorphism:
    if source.universe != target.universe:
        raise UniverseMismatch(source.universe, target.universe)
    for x in source.carrier:
        if x not in mapping:
            raise NotTotal(x)
        if mapping[x] not in target:
            raise NotInTarget(x, mapping[x])
    violation = first_violation(source, target, mapping)
    if violation is not None:
        raise NotAMorphism(*violation)
    return CSetMorphism.make(source, target, mapping)


class CategoryService:
    """Service class for the categorical structure of classified sets"""

    @staticmethod
    def construct_set(
        universe: LabelUniverse,
        carrier: Sequence[Element],
        relations: Optional[Mapping[Label, Iterable[Tuple[Element, Element]]]] = None,
    ) -> ClassifiedSet:
        """
        Build a classified set from raw parts

        Args:
            universe: Label universe
            carrier: Carrier elements, in any order
            relations: Extra related pairs per label

        Returns:
            Canonical classified set with the diagonal added at every label
        """
        relations = relations or {}
        if len(set(carrier)) != len(carrier):
            seen = set()
            for x in carrier:
                if x in seen:
                    raise DuplicateElement(x)
                seen.add(x)
        members = set(carrier)
        for label, pairs in relations.items():
            if label not in universe:
                raise UnknownLabel(label)
            for x, y in pairs:
                if x not in members or y not in members:
                    raise RelationOutOfCarrier(label, (x, y))
        return ClassifiedSet.make(universe, carrier, relations)

    @staticmethod
    def construct_morphism(
        source: ClassifiedSet,
        target: ClassifiedSet,
        mapping: Iterable[Tuple[Element, Element]],
    ) -> CSetMorphism:
        """
        Build a morphism, checking totality and relation preservation

        Args:
            source: Source set
            target: Target set
            mapping: (argument, image) pairs

        Returns:
            The validated morphism
        """
        return construct_morphism_from_dict(source, target, dict(mapping))

    @staticmethod
    def validate_morphism(f: CSetMorphism) -> Optional[Violation]:
        return first_violation(f.source, f.target, f.as_dict())

    @staticmethod
    def compose(g: CSetMorphism, f: CSetMorphism) -> CSetMorphism:
        """g after f"""
        if f.target != g.source:
            raise EndpointMismatch(f"Cannot compose: target of f is not the source of g")
        composite = CSetMorphism(f.source, g.target, tuple((x, g(y)) for x, y in f.mapping))
        if settings.DEBUG:
            violation = CategoryService.validate_morphism(composite)
            if violation is not None:
                raise NotAMorphism(*violation)
        return composite

    @staticmethod
    def identity(X: ClassifiedSet) -> CSetMorphism:
        return CSetMorphism(X, X, tuple((x, x) for x in X.carrier))

    # -- named objects ----------------------------------------------------

    @staticmethod
    def terminal(universe: LabelUniverse) -> ClassifiedSet:
        return ClassifiedSet.make(universe, [STAR], {})

    @staticmethod
    def initial(universe: LabelUniverse) -> ClassifiedSet:
        return ClassifiedSet.make(universe, [], {})

    @staticmethod
    def bang(X: ClassifiedSet) -> CSetMorphism:
        """The unique map X -> 1"""
        one = CategoryService.terminal(X.universe)
        return CSetMorphism(X, one, tuple((x, STAR) for x in X.carrier))

    @staticmethod
    def empty_morphism(X: ClassifiedSet) -> CSetMorphism:
        """The unique map 0 -> X"""
        return CSetMorphism(CategoryService.initial(X.universe), X, ())

    @staticmethod
    def discrete_set(universe: LabelUniverse, elements: Iterable[Element]) -> ClassifiedSet:
        return ClassifiedSet.make(universe, elements, {})

    @staticmethod
    def codiscrete_set(universe: LabelUniverse, elements: Iterable[Element]) -> ClassifiedSet:
        items = list(elements)
        everything = complete(items)
        return ClassifiedSet.make(universe, items, {label: everything for label in universe.labels})

    @staticmethod
    def delta_bool(universe: LabelUniverse) -> ClassifiedSet:
        return CategoryService.discrete_set(universe, [TT, FF])

    @staticmethod
    def nabla_bool(universe: LabelUniverse) -> ClassifiedSet:
        return CategoryService.codiscrete_set(universe, [TT, FF])

    # -- limits and colimits ------------------------------------------------

    @staticmethod
    def product(A: ClassifiedSet, B: ClassifiedSet) -> ProductCone:
        """
        Categorical product with componentwise relations

        Args:
            A: Left factor
            B: Right factor

        Returns:
            The product object with its projections and pairing
        """
        if A.universe != B.universe:
            raise UniverseMismatch(A.universe, B.universe)
        carrier = [Pair(a, b) for a in A.carrier for b in B.carrier]
        relations = {
            label: {
                (Pair(a1, b1), Pair(a2, b2))
                for a1, a2 in A.relation(label)
                for b1, b2 in B.relation(label)
            }
            for label in A.universe.labels
        }
        obj = ClassifiedSet.make(A.universe, carrier, relations)
        proj1 = CSetMorphism(obj, A, tuple((p, p.first) for p in obj.carrier))
        proj2 = CSetMorphism(obj, B, tuple((p, p.second) for p in obj.carrier))
        return ProductCone(obj, proj1, proj2)

    @staticmethod
    def product_map(f: CSetMorphism, g: CSetMorphism) -> CSetMorphism:
        """f x g: A x B -> A' x B'"""
        source = CategoryService.product(f.source, g.source).object
        target = CategoryService.product(f.target, g.target).object
        return CSetMorphism.make(source, target, {p: Pair(f(p.first), g(p.second)) for p in source.carrier})

    @staticmethod
    def associator(A: ClassifiedSet, B: ClassifiedSet, C: ClassifiedSet) -> CSetMorphism:
        """(A x B) x C -> A x (B x C), built from projections and pairings"""
        ab = CategoryService.product(A, B)
        ab_c = CategoryService.product(ab.object, C)
        bc = CategoryService.product(B, C)
        a_bc = CategoryService.product(A, bc.object)
        compose = CategoryService.compose
        to_a = compose(ab.proj1, ab_c.proj1)
        to_bc = bc.tuple(compose(ab.proj2, ab_c.proj1), ab_c.proj2)
        return a_bc.tuple(to_a, to_bc)

    @staticmethod
    def coproduct(A: ClassifiedSet, B: ClassifiedSet) -> CoproductCocone:
        """Coproduct; elements under different tags are never related"""
        if A.universe != B.universe:
            raise UniverseMismatch(A.universe, B.universe)
        carrier = [Inl(a) for a in A.carrier] + [Inr(b) for b in B.carrier]
        relations = {
            label: {(Inl(x), Inl(y)) for x, y in A.relation(label)}
            | {(Inr(x), Inr(y)) for x, y in B.relation(label)}
            for label in A.universe.labels
        }
        obj = ClassifiedSet.make(A.universe, carrier, relations)
        inj1 = CSetMorphism(A, obj, tuple((a, Inl(a)) for a in A.carrier))
        inj2 = CSetMorphism(B, obj, tuple((b, Inr(b)) for b in B.carrier))
        return CoproductCocone(obj, inj1, inj2)

    @staticmethod
    def equalizer(f: CSetMorphism, g: CSetMorphism) -> EqualizerCone:
        if f.source != g.source or f.target != g.target:
            raise NotParallel()
        A = f.source
        kept = [a for a in A.carrier if f(a) == g(a)]
        keep = set(kept)
        relations = {
            label: {(x, y) for x, y in A.relation(label) if x in keep and y in keep}
            for label in A.universe.labels
        }
        obj = ClassifiedSet.make(A.universe, kept, relations)
        include = CSetMorphism(obj, A, tuple((e, e) for e in obj.carrier))
        return EqualizerCone(obj, include, f, g)

    @staticmethod
    def coequalizer(f: CSetMorphism, g: CSetMorphism) -> CoequalizerCocone:
        """
        Quotient of the target by the least equivalence identifying f(a) and g(a)

        Two classes are related at a label when some members are.
        """
        if f.source != g.source or f.target != g.target:
            raise NotParallel()
        B = f.target
        ds: DisjointSet[Element] = DisjointSet(B.carrier)
        for a in f.source.carrier:
            ds.union(f(a), g(a))
        classes = class_assignment(ds)
        obj = quotient_by(B, classes)
        quotient = CSetMorphism(B, obj, tuple((b, classes[b]) for b in B.carrier))
        return CoequalizerCocone(obj, quotient, f, g)

    # -- exponentials and enumeration ------------------------------------

    @staticmethod
    def enumerate_functions(
        A: ClassifiedSet, B: ClassifiedSet, cap: Optional[int] = None
    ) -> Iterator[Dict[Element, Element]]:
        """
        Every relation-preserving function A -> B as a dict, in lexicographic order

        Backtracks over the source carrier and prunes partial assignments that
        already break a relation.
        """
        limit = cap if cap is not None else settings.ENUMERATION_CAP
        candidates = len(B.carrier) ** len(A.carrier)
        if candidates > limit:
            raise EnumerationCapExceeded(limit, candidates)
        if A.universe != B.universe:
            raise UniverseMismatch(A.universe, B.universe)

        sources = A.carrier
        index = {x: i for i, x in enumerate(sources)}
        # constraints[i]: pairs (j, label) with j <= i that must be checked once i is assigned
        constraints: List[List[Tuple[int, bool, Label]]] = [[] for _ in sources]
        for label, rel in A.relations:
            for x, y in rel:
                if x == y:
                    continue
                i, j = index[x], index[y]
                if i >= j:
                    constraints[i].append((j, True, label))
                else:
                    constraints[j].append((i, False, label))
        target_rel = {label: B.relation(label) for label in B.universe.labels}
        assignment: List[Element] = []

        def extend(i: int) -> Iterator[Dict[Element, Element]]:
            if i == len(sources):
                yield dict(zip(sources, assignment))
                return
            for b in B.carrier:
                ok = True
                for j, forward, label in constraints[i]:
                    other = b if j == i else assignment[j]
                    pair = (b, other) if forward else (other, b)
                    if pair not in target_rel[label]:
                        ok = False
                        break
                if not ok:
                    continue
                assignment.append(b)
                yield from extend(i + 1)
                assignment.pop()

        yield from extend(0)

    @staticmethod
    def enumerate_hom(A: ClassifiedSet, B: ClassifiedSet, cap: Optional[int] = None) -> List[CSetMorphism]:
        """
        All morphisms A -> B

        Args:
            A: Source
            B: Target
            cap: Maximum number of candidate functions |B|^|A|

        Returns:
            Duplicate-free list in deterministic order
        """
        return [
            CSetMorphism.make(A, B, mapping)
            for mapping in CategoryService.enumerate_functions(A, B, cap)
        ]

    @staticmethod
    def enumerate_points(X: ClassifiedSet) -> List[CSetMorphism]:
        return CategoryService.enumerate_hom(CategoryService.terminal(X.universe), X)

    @staticmethod
    def is_constant(f: CSetMorphism) -> bool:
        return len(set(f.images())) <= 1

    @staticmethod
    def exponential(A: ClassifiedSet, B: ClassifiedSet, cap: Optional[int] = None) -> ExponentialObject:
        """
        Exponential B^A with the logical relation

        Args:
            A: Exponent (domain of the functions)
            B: Base codomain
            cap: Enumeration cap

        Returns:
            B^A together with eval, curry and uncurry
        """
        limit = cap if cap is not None else settings.ENUMERATION_CAP
        funs = [
            Fun(tuple((a, mapping[a]) for a in A.carrier))
            for mapping in CategoryService.enumerate_functions(A, B, limit)
        ]
        relations = {}
        for label in A.universe.labels:
            rel_a = A.relation(label)
            rel_b = B.relation(label)
            relations[label] = {
                (f, g)
                for f in funs
                for g in funs
                if all((f.apply(x), g.apply(y)) in rel_b for x, y in rel_a)
            }
        obj = ClassifiedSet.make(A.universe, funs, relations)
        ev_source = CategoryService.product(obj, A).object
        ev = CSetMorphism(ev_source, B, tuple((p, p.first.apply(p.second)) for p in ev_source.carrier))
        logger.debug(f"Exponential with {len(funs)} functions over {A.universe}")
        return ExponentialObject(obj, A, B, ev, limit)


def quotient_by(
    X: ClassifiedSet, classes: Mapping[Element, Class], labels: Optional[Iterable[Label]] = None
) -> ClassifiedSet:
    """
    Quotient object with the existential relation rule

    Args:
        X: Set being quotiented
        classes: Element to class assignment
        labels: Labels to keep (defaults to the whole universe)

    Returns:
        Classified set of Class elements
    """
    universe = X.universe if labels is None else X.universe.minus(set(X.universe.labels) - set(labels))
    carrier = set(classes.values())
    relations = {
        label: {(classes[x], classes[y]) for x, y in X.relation(label)}
        for label in universe.labels
    }
    return ClassifiedSet.make(universe, carrier, relations)
