"""
Disjoint-set forest used by the gluing engine and by equivalence searches.
"""

from typing import Dict, Generic, Hashable, Iterable, List, TypeVar

T = TypeVar("T", bound=Hashable)


class UnionFind(Generic[T]):
    """Union by rank with path compression; elements are added lazily."""

    def __init__(self, elements: Iterable[T] = ()):
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = {}
        self.size: Dict[T, int] = {}
        for x in elements:
            self.add(x)

    def add(self, x: T) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0
            self.size[x] = 1

    def __contains__(self, x: object) -> bool:
        return x in self.parent

    def find(self, x: T) -> T:
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: T, y: T) -> bool:
        """Merge the classes of x and y; returns False if already merged."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True

    def same(self, x: T, y: T) -> bool:
        return self.find(x) == self.find(y)

    def classes(self) -> Dict[T, List[T]]:
        """Map each root to the members of its class, in insertion order."""
        groups: Dict[T, List[T]] = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return groups

    def __len__(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)
