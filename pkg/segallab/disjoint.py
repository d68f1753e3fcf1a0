from __future__ import annotations

from collections import defaultdict
from typing import Generic, Hashable, Iterable, TypeVar

T = TypeVar("T", bound=Hashable)


class DisjointSet(Generic[T]):
    """Union-find with path compression and union by rank."""

    def __init__(self, elements: Iterable[T] = ()) -> None:
        self.parent: dict[T, T] = {}
        self.rank: dict[T, int] = {}
        for element in elements:
            self.make_set(element)

    def make_set(self, element: T) -> None:
        if element in self.parent:
            return
        self.parent[element] = element
        self.rank[element] = 0

    def find(self, element: T) -> T:
        self.make_set(element)
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def union(self, first: T, second: T) -> T:
        first_root = self.find(first)
        second_root = self.find(second)
        if first_root == second_root:
            return first_root
        if self.rank[first_root] < self.rank[second_root]:
            first_root, second_root = second_root, first_root
        self.parent[second_root] = first_root
        if self.rank[first_root] == self.rank[second_root]:
            self.rank[first_root] += 1
        return first_root

    def groups(self, order: Iterable[T] | None = None) -> list[list[T]]:
        """Classes in first-appearance order of ``order`` (insertion order by default)."""
        members: dict[T, list[T]] = defaultdict(list)
        roots: list[T] = []
        for element in order if order is not None else list(self.parent):
            root = self.find(element)
            if root not in members:
                roots.append(root)
            members[root].append(element)
        return [members[root] for root in roots]
