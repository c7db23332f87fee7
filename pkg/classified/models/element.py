"""
Carrier elements of classified sets

Elements form a small variant tree. Every element has a canonical sort key so
that carriers, function tables and equivalence classes have one structural
representation: Atom < Star < Pair < Inl < Inr < Fun < Class.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Tuple


class Element:
    """Base class for carrier elements"""

    @property
    def sort_key(self) -> Tuple:
        raise NotImplementedError

    def __lt__(self, other: "Element") -> bool:
        return self.sort_key < other.sort_key

    def to_json(self) -> Any:
        raise NotImplementedError


@dataclass(frozen=True)
class Atom(Element):
    name: str

    @cached_property
    def sort_key(self) -> Tuple:
        return (0, self.name)

    def to_json(self) -> Any:
        return self.name

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Star(Element):
    @cached_property
    def sort_key(self) -> Tuple:
        return (1,)

    def to_json(self) -> Any:
        return "*"

    def __str__(self) -> str:
        return "*"


@dataclass(frozen=True)
class Pair(Element):
    first: Element
    second: Element

    @cached_property
    def sort_key(self) -> Tuple:
        return (2, self.first.sort_key, self.second.sort_key)

    def to_json(self) -> Any:
        return ["pair", self.first.to_json(), self.second.to_json()]

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"


@dataclass(frozen=True)
class Inl(Element):
    value: Element

    @cached_property
    def sort_key(self) -> Tuple:
        return (3, self.value.sort_key)

    def to_json(self) -> Any:
        return ["inl", self.value.to_json()]

    def __str__(self) -> str:
        return f"inl {self.value}"


@dataclass(frozen=True)
class Inr(Element):
    value: Element

    @cached_property
    def sort_key(self) -> Tuple:
        return (4, self.value.sort_key)

    def to_json(self) -> Any:
        return ["inr", self.value.to_json()]

    def __str__(self) -> str:
        return f"inr {self.value}"


@dataclass(frozen=True)
class Fun(Element):
    """A function table, sorted by argument and total over its domain carrier"""

    table: Tuple[Tuple[Element, Element], ...]

    @cached_property
    def sort_key(self) -> Tuple:
        return (5, tuple((a.sort_key, b.sort_key) for a, b in self.table))

    @cached_property
    def _lookup(self) -> Dict[Element, Element]:
        return dict(self.table)

    def apply(self, argument: Element) -> Element:
        return self._lookup[argument]

    def to_json(self) -> Any:
        return ["fun", [[a.to_json(), b.to_json()] for a, b in self.table]]

    def __str__(self) -> str:
        return "{" + ", ".join(f"{a} -> {b}" for a, b in self.table) + "}"


@dataclass(frozen=True)
class Class(Element):
    """An equivalence class, members sorted and deduplicated"""

    members: Tuple[Element, ...]

    @cached_property
    def sort_key(self) -> Tuple:
        return (6, tuple(m.sort_key for m in self.members))

    def to_json(self) -> Any:
        return ["class", [m.to_json() for m in self.members]]

    def __str__(self) -> str:
        return "[" + ", ".join(str(m) for m in self.members) + "]"


TT = Atom("tt")
FF = Atom("ff")
STAR = Star()


def make_fun(pairs: Iterable[Tuple[Element, Element]]) -> Fun:
    return Fun(tuple(sorted(pairs, key=lambda p: p[0].sort_key)))


def make_class(members: Iterable[Element]) -> Class:
    return Class(tuple(sorted(set(members))))


def sort_elements(elements: Iterable[Element]) -> List[Element]:
    return sorted(elements, key=lambda e: e.sort_key)


def element_from_json(data: Any) -> Element:
    """Inverse of ``Element.to_json``"""
    if isinstance(data, str):
        return STAR if data == "*" else Atom(data)
    tag: Optional[str] = data[0] if isinstance(data, list) and data else None
    if tag == "pair":
        return Pair(element_from_json(data[1]), element_from_json(data[2]))
    if tag == "inl":
        return Inl(element_from_json(data[1]))
    if tag == "inr":
        return Inr(element_from_json(data[1]))
    if tag == "fun":
        return make_fun((element_from_json(a), element_from_json(b)) for a, b in data[1])
    if tag == "class":
        return make_class(element_from_json(m) for m in data[1])
    raise ValueError(f"Not a serialized element: {data!r}")
