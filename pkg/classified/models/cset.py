"""
Classified sets, their morphisms and label masks
"""
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Tuple

from classified.core.exceptions import UnknownLabel
from classified.models.element import Element, element_from_json, sort_elements

Label = str
Relation = FrozenSet[Tuple[Element, Element]]

LABEL_PATTERN = re.compile(r"^[A-Za-z0-9_]+$")


def validate_label(name: str) -> Label:
    if not isinstance(name, str) or not LABEL_PATTERN.match(name):
        raise UnknownLabel(str(name), where="label syntax")
    return name


@dataclass(frozen=True)
class LabelUniverse:
    """A finite set of labels in lexicographic order"""

    labels: Tuple[Label, ...] = ()

    @classmethod
    def of(cls, labels: Iterable[Label]) -> "LabelUniverse":
        return cls(tuple(sorted({validate_label(label) for label in labels})))

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def __iter__(self) -> Iterator[Label]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def minus(self, labels: Iterable[Label]) -> "LabelUniverse":
        removed = set(labels)
        return LabelUniverse(tuple(label for label in self.labels if label not in removed))

    def union(self, labels: Iterable[Label]) -> "LabelUniverse":
        return LabelUniverse.of(set(self.labels) | set(labels))

    def issubset(self, other: "LabelUniverse") -> bool:
        return set(self.labels) <= set(other.labels)

    def subsets(self) -> List[FrozenSet[Label]]:
        """All subsets, ordered by size then lexicographically"""
        result: List[FrozenSet[Label]] = []
        count = len(self.labels)
        for bits in range(1 << count):
            result.append(frozenset(self.labels[i] for i in range(count) if bits >> i & 1))
        return sorted(result, key=lambda s: (len(s), sorted(s)))

    def __str__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


def diagonal(carrier: Iterable[Element]) -> Relation:
    return frozenset((x, x) for x in carrier)


def complete(carrier: Iterable[Element]) -> Relation:
    items = list(carrier)
    return frozenset((x, y) for x in items for y in items)


@dataclass(frozen=True)
class ClassifiedSet:
    """
    A finite carrier with one reflexive relation per label.

    Instances are canonical: the carrier is sorted and the relations are keyed
    in universe order, so dataclass equality is structural equality.
    """

    universe: LabelUniverse
    carrier: Tuple[Element, ...]
    relations: Tuple[Tuple[Label, Relation], ...]

    @classmethod
    def make(
        cls,
        universe: LabelUniverse,
        carrier: Iterable[Element],
        relations: Mapping[Label, Iterable[Tuple[Element, Element]]],
    ) -> "ClassifiedSet":
        """Canonicalize without validation; the diagonal is always added"""
        items = tuple(sort_elements(carrier))
        diag = diagonal(items)
        rels = tuple(
            (label, frozenset(relations.get(label, ())) | diag) for label in universe.labels
        )
        return cls(universe, items, rels)

    @cached_property
    def _relation_map(self) -> Dict[Label, Relation]:
        return dict(self.relations)

    @cached_property
    def _index(self) -> Dict[Element, int]:
        return {x: i for i, x in enumerate(self.carrier)}

    def relation(self, label: Label) -> Relation:
        try:
            return self._relation_map[label]
        except KeyError:
            raise UnknownLabel(label)

    def related(self, label: Label, x: Element, y: Element) -> bool:
        return (x, y) in self.relation(label)

    def __contains__(self, element: object) -> bool:
        return element in self._index

    def __len__(self) -> int:
        return len(self.carrier)

    def index(self, element: Element) -> int:
        return self._index[element]

    def sorted_pairs(self, label: Label) -> List[Tuple[Element, Element]]:
        return sorted(self.relation(label), key=lambda p: (p[0].sort_key, p[1].sort_key))

    def to_dict(self) -> Dict[str, Any]:
        """Serialized form; diagonal pairs are left implicit"""
        return {
            "universe": list(self.universe.labels),
            "carrier": [x.to_json() for x in self.carrier],
            "relations": {
                label: [[x.to_json(), y.to_json()] for x, y in self.sorted_pairs(label) if x != y]
                for label in self.universe.labels
            },
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ClassifiedSet":
        universe = LabelUniverse.of(data.get("universe", []))
        carrier = [element_from_json(x) for x in data.get("carrier", [])]
        relations = {
            label: [(element_from_json(x), element_from_json(y)) for x, y in pairs]
            for label, pairs in data.get("relations", {}).items()
        }
        return cls.make(universe, carrier, relations)

    def __str__(self) -> str:
        parts = []
        for label in self.universe.labels:
            pairs = [f"{x}~{y}" for x, y in self.sorted_pairs(label) if x != y]
            parts.append(f"{label}: " + (" ".join(pairs) if pairs else "="))
        carrier = ", ".join(str(x) for x in self.carrier)
        return "{" + carrier + "} " + "; ".join(parts)


@dataclass(frozen=True)
class CSetMorphism:
    """A relation-preserving total map; the mapping follows source carrier order"""

    source: ClassifiedSet
    target: ClassifiedSet
    mapping: Tuple[Tuple[Element, Element], ...]

    @classmethod
    def make(
        cls, source: ClassifiedSet, target: ClassifiedSet, mapping: Mapping[Element, Element]
    ) -> "CSetMorphism":
        return cls(source, target, tuple((x, mapping[x]) for x in source.carrier))

    @cached_property
    def _lookup(self) -> Dict[Element, Element]:
        return dict(self.mapping)

    def __call__(self, element: Element) -> Element:
        return self._lookup[element]

    def as_dict(self) -> Dict[Element, Element]:
        return dict(self._lookup)

    def images(self) -> List[Element]:
        return [y for _, y in self.mapping]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "mapping": [[x.to_json(), y.to_json()] for x, y in self.mapping],
        }

    def table(self) -> List[List[Any]]:
        return [[x.to_json(), y.to_json()] for x, y in self.mapping]

    def __str__(self) -> str:
        return "{" + ", ".join(f"{x} |-> {y}" for x, y in self.mapping) + "}"


class ModalityKind(str, Enum):
    """The three modalities induced by the levelled adjoint string"""
    BOX = "box"
    DIAMOND = "diamond"
    SHAPE = "shape"


@dataclass(frozen=True)
class LevelMask:
    """A selection of labels (the pi) inside a universe"""

    universe: LabelUniverse
    selected: FrozenSet[Label] = field(default_factory=frozenset)

    def __post_init__(self):
        for label in self.selected:
            if label not in self.universe:
                raise UnknownLabel(label, where=f"universe {self.universe}")

    @classmethod
    def of(cls, universe: LabelUniverse, selected: Iterable[Label] = ()) -> "LevelMask":
        return cls(universe, frozenset(selected))

    @classmethod
    def full(cls, universe: LabelUniverse) -> "LevelMask":
        return cls(universe, frozenset(universe.labels))

    @property
    def remaining(self) -> LabelUniverse:
        """The universe with the selected labels removed"""
        return self.universe.minus(self.selected)

    @property
    def is_empty(self) -> bool:
        return not self.selected

    def sorted_selected(self) -> List[Label]:
        return sorted(self.selected)

    def with_selected(self, selected: Iterable[Label]) -> "LevelMask":
        return LevelMask(self.universe, frozenset(selected))

    def __str__(self) -> str:
        return "{" + ",".join(self.sorted_selected()) + "}"

