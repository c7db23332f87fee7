"""
Models module
"""
from .cset import ClassifiedSet, CSetMorphism, LabelUniverse, LevelMask, ModalityKind
from .element import Atom, Element, Fun, Pair
from .poset import Calculus, DenEnv, SecurityPoset, TypingContext

__all__ = [
    "ClassifiedSet",
    "CSetMorphism",
    "LabelUniverse",
    "LevelMask",
    "ModalityKind",
    "Atom",
    "Element",
    "Fun",
    "Pair",
    "Calculus",
    "DenEnv",
    "SecurityPoset",
    "TypingContext",
]
