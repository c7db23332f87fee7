"""
Cohesion Service - the levelled adjoint string C ⊣ Δ ⊣ U ⊣ ∇ and its modalities
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict

from classified.core.config import settings
from classified.core.exceptions import (
    NotAMorphism,
    NotConstantOnClasses,
    ShapeMismatch,
    UniverseMismatch,
)
from classified.models.cset import (
    ClassifiedSet,
    CSetMorphism,
    LabelUniverse,
    LevelMask,
    ModalityKind,
    complete,
)
from classified.models.element import Class, Element, Pair
from classified.services.category_service import CategoryService, quotient_by
from classified.utils.disjoint_set import DisjointSet, class_assignment

logger = logging.getLogger(__name__)


class TransposeDirection(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True, eq=False)
class Components:
    """C_π X together with its quotient map and the C ⊣ Δ transposes"""

    mask: LevelMask
    source: ClassifiedSet
    object: ClassifiedSet
    classes: Dict[Element, Class]

    def quotient(self, x: Element) -> Class:
        return self.classes[x]

    def factor(self, f: CSetMorphism) -> CSetMorphism:
        """
        Transpose f: X -> Δ_π Y to C_π X -> Y

        Args:
            f: Morphism out of the source into a set visible at π

        Returns:
            The factorization through the quotient
        """
        if f.source != self.source:
            raise ShapeMismatch("Factored morphism must start at the componentized set")
        Y = CohesionService.forget(self.mask, f.target)
        if CohesionService.discretize(self.mask, Y) != f.target:
            raise ShapeMismatch(f"Target is not discrete at {self.mask}")
        mapping: Dict[Element, Element] = {}
        for x in self.source.carrier:
            cls = self.classes[x]
            image = f(x)
            if cls in mapping and mapping[cls] != image:
                raise NotConstantOnClasses(cls.members[0], x)
            mapping[cls] = image
        return CSetMorphism.make(self.object, Y, mapping)

    def unfactor(self, g: CSetMorphism) -> CSetMorphism:
        """Transpose g: C_π X -> Y back to X -> Δ_π Y"""
        if g.source != self.object:
            raise ShapeMismatch("Morphism must start at the components object")
        target = CohesionService.discretize(self.mask, g.target)
        return CSetMorphism.make(self.source, target, {x: g(self.classes[x]) for x in self.source.carrier})


def _require_universe(expected: LabelUniverse, X: ClassifiedSet):
    if X.universe != expected:
        raise UniverseMismatch(expected, X.universe)


class CohesionService:
    """Service class for the levelled functors, modalities and predicates"""

    # -- the four functors ------------------------------------------------

    @staticmethod
    def forget(mask: LevelMask, X: ClassifiedSet) -> ClassifiedSet:
        """U_π: drop the relations at the selected labels"""
        _require_universe(mask.universe, X)
        remaining = mask.remaining
        return ClassifiedSet.make(
            remaining, X.carrier, {label: X.relation(label) for label in remaining.labels}
        )

    @staticmethod
    def forget_morphism(mask: LevelMask, f: CSetMorphism) -> CSetMorphism:
        return CSetMorphism(
            CohesionService.forget(mask, f.source), CohesionService.forget(mask, f.target), f.mapping
        )

    @staticmethod
    def discretize(mask: LevelMask, X: ClassifiedSet) -> ClassifiedSet:
        """Δ_π: the diagonal at every selected label"""
        _require_universe(mask.remaining, X)
        return ClassifiedSet.make(
            mask.universe, X.carrier, {label: X.relation(label) for label in X.universe.labels}
        )

    @staticmethod
    def codiscretize(mask: LevelMask, X: ClassifiedSet) -> ClassifiedSet:
        """∇_π: the complete relation at every selected label"""
        _require_universe(mask.remaining, X)
        everything = complete(X.carrier)
        relations = {label: X.relation(label) for label in X.universe.labels}
        relations.update({label: everything for label in mask.selected})
        return ClassifiedSet.make(mask.universe, X.carrier, relations)

    @staticmethod
    def components(mask: LevelMask, X: ClassifiedSet) -> Components:
        """
        C_π: quotient by the equivalence generated by the relations at π

        Args:
            mask: Selected labels
            X: Set over the full universe

        Returns:
            Components over the remaining labels, related by the existential rule
        """
        _require_universe(mask.universe, X)
        ds: DisjointSet[Element] = DisjointSet(X.carrier)
        for label in mask.sorted_selected():
            for x, y in X.relation(label):
                ds.union(x, y)
        classes = class_assignment(ds)
        obj = quotient_by(X, classes, mask.remaining.labels)
        logger.debug(f"C_{mask} splits {len(X.carrier)} elements into {len(obj.carrier)} classes")
        return Components(mask, X, obj, classes)

    # -- nested universes ---------------------------------------------------

    @staticmethod
    def forget_to(X: ClassifiedSet, universe: LabelUniverse) -> ClassifiedSet:
        """U_α for a smaller universe"""
        if not universe.issubset(X.universe):
            raise UniverseMismatch(X.universe, universe)
        return CohesionService.forget(LevelMask.of(X.universe, X.universe.minus(universe.labels)), X)

    @staticmethod
    def discretize_to(X: ClassifiedSet, universe: LabelUniverse) -> ClassifiedSet:
        """Δ_α into a larger universe"""
        if not X.universe.issubset(universe):
            raise UniverseMismatch(universe, X.universe)
        return CohesionService.discretize(LevelMask.of(universe, universe.minus(X.universe.labels)), X)

    @staticmethod
    def codiscretize_to(X: ClassifiedSet, universe: LabelUniverse) -> ClassifiedSet:
        """∇_α into a larger universe"""
        if not X.universe.issubset(universe):
            raise UniverseMismatch(universe, X.universe)
        return CohesionService.codiscretize(LevelMask.of(universe, universe.minus(X.universe.labels)), X)

    # -- modalities -----------------------------------------------------------

    @staticmethod
    def modality_object(kind: ModalityKind, mask: LevelMask, X: ClassifiedSet) -> ClassifiedSet:
        """
        Apply □_π = Δ_π U_π, ◆_π = ∇_π U_π or ∫_π = Δ_π C_π

        Args:
            kind: Which modality
            mask: Selected labels
            X: Set over the full universe

        Returns:
            The modal object over the full universe
        """
        if kind == ModalityKind.BOX:
            return CohesionService.discretize(mask, CohesionService.forget(mask, X))
        if kind == ModalityKind.DIAMOND:
            return CohesionService.codiscretize(mask, CohesionService.forget(mask, X))
        return CohesionService.discretize(mask, CohesionService.components(mask, X).object)

    @staticmethod
    def box(mask: LevelMask, X: ClassifiedSet) -> ClassifiedSet:
        return CohesionService.modality_object(ModalityKind.BOX, mask, X)

    @staticmethod
    def diamond(mask: LevelMask, X: ClassifiedSet) -> ClassifiedSet:
        return CohesionService.modality_object(ModalityKind.DIAMOND, mask, X)

    @staticmethod
    def shape(mask: LevelMask, X: ClassifiedSet) -> ClassifiedSet:
        return CohesionService.modality_object(ModalityKind.SHAPE, mask, X)

    @staticmethod
    def modality_morphism(kind: ModalityKind, mask: LevelMask, f: CSetMorphism) -> CSetMorphism:
        """Functorial action; □ and ◆ keep the mapping, ∫ maps classes to classes"""
        source = CohesionService.modality_object(kind, mask, f.source)
        target = CohesionService.modality_object(kind, mask, f.target)
        if kind != ModalityKind.SHAPE:
            return CSetMorphism(source, target, f.mapping)
        source_parts = CohesionService.components(mask, f.source)
        target_parts = CohesionService.components(mask, f.target)
        mapping = {
            source_parts.quotient(x): target_parts.quotient(f(x)) for x in f.source.carrier
        }
        return CSetMorphism.make(source, target, mapping)

    @staticmethod
    def structural_map(kind: ModalityKind, mask: LevelMask, X: ClassifiedSet) -> CSetMorphism:
        """
        Box: counit □_π X -> X. Diamond: unit X -> ◆_π X. Shape: unit X -> ∫_π X.
        """
        if kind == ModalityKind.BOX:
            return CSetMorphism(CohesionService.box(mask, X), X, tuple((x, x) for x in X.carrier))
        if kind == ModalityKind.DIAMOND:
            return CSetMorphism(X, CohesionService.diamond(mask, X), tuple((x, x) for x in X.carrier))
        parts = CohesionService.components(mask, X)
        target = CohesionService.discretize(mask, parts.object)
        return CSetMorphism(X, target, tuple((x, parts.quotient(x)) for x in X.carrier))

    @staticmethod
    def adjoint_transpose(
        direction: TransposeDirection,
        mask: LevelMask,
        f: CSetMorphism,
        original: ClassifiedSet,
    ) -> CSetMorphism:
        """
        The □_π ⊣ ◆_π transpose

        Args:
            direction: forward takes f: □_π A -> B to A -> ◆_π B;
                backward takes f: A -> ◆_π B to □_π A -> B
            mask: Selected labels
            f: Morphism to transpose
            original: A for forward, B for backward (the modal form forgets it)

        Returns:
            The transposed morphism with the same mapping
        """
        if direction == TransposeDirection.FORWARD:
            if CohesionService.box(mask, original) != f.source:
                raise ShapeMismatch(f"Source is not □_{mask} of the given set")
            result = CSetMorphism(original, CohesionService.diamond(mask, f.target), f.mapping)
        else:
            if CohesionService.diamond(mask, original) != f.target:
                raise ShapeMismatch(f"Target is not ◆_{mask} of the given set")
            result = CSetMorphism(CohesionService.box(mask, f.source), original, f.mapping)
        if settings.DEBUG:
            violation = CategoryService.validate_morphism(result)
            if violation is not None:
                raise NotAMorphism(*violation)
        return result

    @staticmethod
    def strength(mask: LevelMask, A: ClassifiedSet, B: ClassifiedSet) -> CSetMorphism:
        """t: A x ◆_π B -> ◆_π(A x B), the identity on pairs"""
        if A.universe != B.universe:
            raise UniverseMismatch(A.universe, B.universe)
        source = CategoryService.product(A, CohesionService.diamond(mask, B)).object
        target = CohesionService.diamond(mask, CategoryService.product(A, B).object)
        return CSetMorphism(source, target, tuple((p, p) for p in source.carrier))

    # -- canonical isomorphisms ------------------------------------------------

    @staticmethod
    def shape_collapse_iso(mask: LevelMask, X: ClassifiedSet) -> CSetMorphism:
        """∫_π ∫_π X -> ∫_π X, sending each singleton class to its member"""
        once = CohesionService.shape(mask, X)
        twice = CohesionService.shape(mask, once)
        mapping: Dict[Element, Element] = {}
        for cls in twice.carrier:
            if len(cls.members) != 1:
                raise ShapeMismatch(f"∫_{mask} of a shape has a non-singleton class")
            mapping[cls] = cls.members[0]
        return CSetMorphism.make(twice, once, mapping)

    @staticmethod
    def components_product_map(mask: LevelMask, X: ClassifiedSet, Y: ClassifiedSet) -> CSetMorphism:
        """C_π(X x Y) -> C_π X x C_π Y, [(x, y)] to ([x], [y])"""
        product = CategoryService.product(X, Y).object
        whole = CohesionService.components(mask, product)
        left = CohesionService.components(mask, X)
        right = CohesionService.components(mask, Y)
        target = CategoryService.product(left.object, right.object).object
        mapping: Dict[Element, Element] = {}
        for p in product.carrier:
            mapping[whole.quotient(p)] = Pair(left.quotient(p.first), right.quotient(p.second))
        return CSetMorphism.make(whole.object, target, mapping)

    # -- predicates --------------------------------------------------------------

    @staticmethod
    def is_protected_at(X: ClassifiedSet, mask: LevelMask) -> bool:
        """Every relation at π is complete"""
        if not set(mask.selected) <= set(X.universe.labels):
            raise UniverseMismatch(X.universe, mask.universe)
        size = len(X.carrier)
        return all(len(X.relation(label)) == size * size for label in mask.selected)

    @staticmethod
    def is_visible_at(X: ClassifiedSet, mask: LevelMask) -> bool:
        """Every relation at π is the diagonal"""
        if not set(mask.selected) <= set(X.universe.labels):
            raise UniverseMismatch(X.universe, mask.universe)
        size = len(X.carrier)
        return all(len(X.relation(label)) == size for label in mask.selected)
