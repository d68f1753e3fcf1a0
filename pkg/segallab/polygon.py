"""Subdivisions of the cyclically labeled polygon with vertices ``0..n``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Literal

from .errors import InputError

Classification = Literal["left", "right", "both", "neither"]

Edge = tuple[int, int]


def _member_edges(member: tuple[int, ...]) -> list[Edge]:
    edges = [(member[k], member[k + 1]) for k in range(len(member) - 1)]
    edges.append((member[0], member[-1]))
    return edges


def chords_cross(first: Edge, second: Edge) -> bool:
    a, b = sorted(first)
    c, d = sorted(second)
    return a < c < b < d or c < a < d < b


@dataclass(frozen=True)
class PolygonalSubdivision:
    n: int
    members: tuple[tuple[int, ...], ...]

    @classmethod
    def from_members(cls, n: int, members: Iterable[Iterable[int]]) -> "PolygonalSubdivision":
        canonical = tuple(sorted(tuple(sorted(set(member))) for member in members))
        subdivision = cls(n, canonical)
        problem = subdivision_problem(subdivision)
        if problem is not None:
            raise InputError(problem)
        return subdivision

    @cached_property
    def edges(self) -> frozenset[Edge]:
        return frozenset(edge for member in self.members for edge in _member_edges(member))

    @cached_property
    def diagonals(self) -> tuple[Edge, ...]:
        return tuple(sorted(edge for edge in self.edges if not is_boundary_edge(self.n, edge)))

    @property
    def is_triangulation(self) -> bool:
        return all(len(member) == 3 for member in self.members)

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def to_list(self) -> list[list[int]]:
        return [list(member) for member in self.members]


def is_boundary_edge(n: int, edge: Edge) -> bool:
    a, b = sorted(edge)
    return b - a == 1 or (a == 0 and b == n)


def subdivision_problem(p: PolygonalSubdivision) -> str | None:
    """Why ``p`` is not a polygonal subdivision, or None."""
    if p.n < 2:
        return "polygon level must be at least 2"
    if not p.members:
        return "subdivision has no members"
    for member in p.members:
        if len(member) < 3:
            return f"member {list(member)} has fewer than three vertices"
        if member[0] < 0 or member[-1] > p.n:
            return f"member {list(member)} leaves the vertex range 0..{p.n}"
    if len(set(p.members)) != len(p.members):
        return "duplicate members"
    usage: dict[Edge, int] = {}
    for member in p.members:
        for edge in _member_edges(member):
            usage[edge] = usage.get(edge, 0) + 1
    for k in range(p.n):
        if usage.get((k, k + 1)) != 1:
            return f"boundary edge {(k, k + 1)} is not covered exactly once"
    if usage.get((0, p.n)) != 1:
        return f"boundary edge {(0, p.n)} is not covered exactly once"
    for edge, count in usage.items():
        if not is_boundary_edge(p.n, edge) and count != 2:
            return f"diagonal {edge} is not shared by exactly two members"
    for first, second in itertools.combinations(p.members, 2):
        shared = sorted(set(first) & set(second))
        if len(shared) > 2:
            return f"members {list(first)} and {list(second)} share more than an edge"
        if len(shared) == 2:
            edge = (shared[0], shared[1])
            if edge not in _member_edges(first) or edge not in _member_edges(second):
                return f"members {list(first)} and {list(second)} meet off an edge"
    diagonals = [edge for edge in usage if not is_boundary_edge(p.n, edge)]
    for first, second in itertools.combinations(diagonals, 2):
        if chords_cross(first, second):
            return f"diagonals {first} and {second} cross"
    return None


def _faces(vertices: tuple[int, ...], chords: list[Edge]) -> list[tuple[int, ...]]:
    if not chords:
        return [vertices]
    a, b = chords[0]
    inside = tuple(v for v in vertices if a <= v <= b)
    outside = tuple(v for v in vertices if v <= a or v >= b)
    inner_chords = [c for c in chords[1:] if a <= c[0] and c[1] <= b]
    outer_chords = [c for c in chords[1:] if not (a <= c[0] and c[1] <= b)]
    return _faces(inside, inner_chords) + _faces(outside, outer_chords)


def _require_level(n: int) -> None:
    if n < 2:
        raise InputError("polygon level must be at least 2")


@lru_cache(maxsize=None)
def _all_subdivisions(n: int) -> tuple[PolygonalSubdivision, ...]:
    diagonals = [(a, b) for a in range(n + 1) for b in range(a + 2, n + 1) if not (a == 0 and b == n)]
    found: list[PolygonalSubdivision] = []
    chosen: list[Edge] = []

    def extend(start: int) -> None:
        members = tuple(sorted(_faces(tuple(range(n + 1)), list(chosen))))
        found.append(PolygonalSubdivision(n, members))
        for index in range(start, len(diagonals)):
            candidate = diagonals[index]
            if any(chords_cross(candidate, other) for other in chosen):
                continue
            chosen.append(candidate)
            extend(index + 1)
            chosen.pop()

    extend(0)
    return tuple(sorted(found, key=lambda p: p.members))


def enumerate_subdivisions(n: int) -> list[PolygonalSubdivision]:
    """Every polygonal subdivision of ``P_n``, the trivial one included."""
    _require_level(n)
    return list(_all_subdivisions(n))


def enumerate_triangulations(n: int) -> list[PolygonalSubdivision]:
    _require_level(n)
    return [p for p in _all_subdivisions(n) if p.is_triangulation]


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def little_schroeder(k: int) -> int:
    values = [1, 1]
    for m in range(2, k + 1):
        values.append((3 * (2 * m - 1) * values[m - 1] - (m - 2) * values[m - 2]) // (m + 1))
    return values[k]


def fan_triangulation(n: int, apex: int) -> PolygonalSubdivision:
    """The triangulation in which every triangle contains ``apex``."""
    _require_level(n)
    if not 0 <= apex <= n:
        raise InputError(f"vertex {apex} is outside 0..{n}")
    ring = [(apex + k) % (n + 1) for k in range(1, n + 1)]
    members = [(apex, ring[k], ring[k + 1]) for k in range(n - 1)]
    return PolygonalSubdivision.from_members(n, members)


def find_consecutive_triangle(t: PolygonalSubdivision) -> int:
    """Smallest ``j`` with ``{j-1, j, j+1}`` a member."""
    if not t.is_triangulation:
        raise InputError("not a triangulation")
    members = set(t.members)
    for j in range(1, t.n):
        if (j - 1, j, j + 1) in members:
            return j
    raise InputError("triangulation has no consecutive triangle")


def vertex_valency(t: PolygonalSubdivision, v: int) -> int:
    if not 0 <= v <= t.n:
        raise InputError(f"vertex {v} is outside 0..{t.n}")
    return sum(1 for edge in t.edges if v in edge)


def modular_triangle(n: int, v: int) -> tuple[int, ...]:
    return tuple(sorted({(v - 1) % (n + 1), v, (v + 1) % (n + 1)}))


def classify_subdivision(t: PolygonalSubdivision) -> Classification:
    left = all(0 in member for member in t.members)
    right = all(t.n in member for member in t.members)
    if left and right:
        return "both"
    if left:
        return "left"
    if right:
        return "right"
    return "neither"


@dataclass(frozen=True)
class SubdivisionPoset:
    """Members of a subdivision and the edges two members share, ordered by inclusion."""

    subdivision: PolygonalSubdivision
    members: tuple[tuple[int, ...], ...]
    shared: tuple[tuple[tuple[int, int], int, int], ...]

    @property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        edges = sorted({edge for edge, _, _ in self.shared})
        return tuple(self.members) + tuple(edges)

    def leq(self, first: tuple[int, ...], second: tuple[int, ...]) -> bool:
        return set(first) <= set(second)


def subdivision_poset(p: PolygonalSubdivision) -> SubdivisionPoset:
    shared = []
    for i, j in itertools.combinations(range(len(p.members)), 2):
        common = tuple(sorted(set(p.members[i]) & set(p.members[j])))
        if len(common) == 2:
            shared.append(((common[0], common[1]), i, j))
    return SubdivisionPoset(p, p.members, tuple(shared))
