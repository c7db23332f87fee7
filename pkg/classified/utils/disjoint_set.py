"""
Union-find over carrier elements, used for quotients and components
"""
import collections
from typing import Dict, Generic, Iterable, List, TypeVar

from classified.models.element import Class, Element, make_class

T = TypeVar("T")


class DisjointSet(Generic[T]):
    def __init__(self, elements: Iterable[T] = ()):
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = {}
        for e in elements:
            self.make_set(e)

    def make_set(self, e: T):
        if e in self.parent:
            return
        self.parent[e] = e
        self.rank[e] = 0

    # find with path compression
    def find(self, e: T) -> T:
        self.make_set(e)
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    # union by rank
    def union(self, x: T, y: T):
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1

    def groups(self) -> List[List[T]]:
        """Members grouped by root, in first-seen order"""
        grouped: Dict[T, List[T]] = collections.defaultdict(list)
        for e in self.parent:
            grouped[self.find(e)].append(e)
        return list(grouped.values())


def class_assignment(ds: "DisjointSet[Element]") -> Dict[Element, Class]:
    """Map every element to its canonical Class element"""
    assignment: Dict[Element, Class] = {}
    for members in ds.groups():
        cls = make_class(members)
        for member in members:
            assignment[member] = cls
    return assignment
