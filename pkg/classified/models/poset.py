"""
Security posets, typing contexts and the denotation environment
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Tuple

from classified.core.config import settings
from classified.models.cset import Label, LabelUniverse
from classified.models.syntax import TypeExpr


class Calculus(str, Enum):
    """The four modal calculi"""
    MOGGI = "moggi"
    DP = "dp"
    DCC = "dcc"
    SEALING = "sealing"


@dataclass(frozen=True)
class SecurityPoset:
    """Labels with ⊑ stored as its reflexive-transitive closure"""

    labels: LabelUniverse
    leq: FrozenSet[Tuple[Label, Label]]

    def below(self, lower: Label, higher: Label) -> bool:
        return (lower, higher) in self.leq

    def generators(self) -> List[Tuple[Label, Label]]:
        return sorted(pair for pair in self.leq if pair[0] != pair[1])

    def to_dict(self) -> dict:
        return {"labels": list(self.labels.labels), "order": [list(p) for p in self.generators()]}


@dataclass(frozen=True)
class TypingContext:
    """
    Ordinary and modal zones plus the observer set.

    The modal zone is only populated in the dual-context calculus; observers
    are only read by the sealing calculus.
    """

    calculus: Calculus
    ordinary: Tuple[Tuple[str, TypeExpr], ...] = ()
    modal: Tuple[Tuple[str, TypeExpr], ...] = ()
    observers: FrozenSet[Label] = field(default_factory=frozenset)

    @classmethod
    def empty(cls, calculus: Calculus, observers: Iterable[Label] = ()) -> "TypingContext":
        return cls(calculus, observers=frozenset(observers))

    def lookup_ordinary(self, name: str) -> Optional[TypeExpr]:
        for bound, ty in reversed(self.ordinary):
            if bound == name:
                return ty
        return None

    def lookup_modal(self, name: str) -> Optional[TypeExpr]:
        for bound, ty in reversed(self.modal):
            if bound == name:
                return ty
        return None

    def names(self) -> List[str]:
        return [name for name, _ in self.modal + self.ordinary]

    def extend(self, name: str, ty: TypeExpr) -> "TypingContext":
        return replace(self, ordinary=self.ordinary + ((name, ty),))

    def extend_modal(self, name: str, ty: TypeExpr) -> "TypingContext":
        return replace(self, modal=self.modal + ((name, ty),))

    def with_observers(self, observers: Iterable[Label]) -> "TypingContext":
        return replace(self, observers=frozenset(observers))


@dataclass(frozen=True)
class DenEnv:
    """Everything denotations are computed against"""

    poset: SecurityPoset
    cap: int = field(default_factory=lambda: settings.ENUMERATION_CAP)

    @property
    def universe(self) -> LabelUniverse:
        return self.poset.labels
