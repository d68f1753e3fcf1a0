"""2-Segal comparison maps of truncated simplicial sets.

Every limit here is a limit of finite sets; homotopy pullbacks of discrete
sets are ordinary pullbacks.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from pydantic import BaseModel, Field, field_validator

from .cofcat import CofStructure
from .constants import MAX_SEED
from .errors import InputError
from .fixtures import FIXTURE_NAMES, load_fixture, random_closure
from .polygon import (
    PolygonalSubdivision,
    classify_subdivision,
    enumerate_subdivisions,
    enumerate_triangulations,
    fan_triangulation,
    find_consecutive_triangle,
    subdivision_poset,
)
from .sconstr import TruncatedSimplicialSet, iso_s_dot

logger = logging.getLogger(__name__)

Part = tuple[int, ...]
Join = tuple[int, int, tuple[int, ...]]


@dataclass
class SegalMapResult:
    """Outcome of comparing ``X_n`` with a limit over a cover of ``[n]``.

    ``collision`` holds two elements with the same image; ``missing`` a limit
    tuple outside the image.
    """

    parts: tuple[Part, ...]
    n: int
    domain_size: int
    limit_size: int
    injective: bool
    surjective: bool
    collision: tuple[int, int] | None = None
    missing: tuple[int, ...] | None = None
    subdivision: PolygonalSubdivision | None = None

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def to_dict(self) -> dict[str, object]:
        return {
            "n": self.n,
            "parts": [list(part) for part in self.parts],
            "domain_size": self.domain_size,
            "limit_size": self.limit_size,
            "injective": self.injective,
            "surjective": self.surjective,
            "collision": list(self.collision) if self.collision else None,
            "missing": list(self.missing) if self.missing is not None else None,
        }


def _positions(part: Part, shared: Sequence[int]) -> tuple[int, ...]:
    return tuple(part.index(v) for v in shared)


def _require_levels(x: TruncatedSimplicialSet, n: int, parts: Iterable[Part]) -> None:
    if n > x.N:
        raise InputError(f"level {n} exceeds the truncation {x.N}")
    for part in parts:
        if len(part) - 1 > x.N:
            raise InputError(f"part {list(part)} exceeds the truncation {x.N}")


def cover_limit(
    x: TruncatedSimplicialSet, parts: Sequence[Part], joins: Sequence[Join]
) -> list[tuple[int, ...]]:
    """Tuples ``(z_P)`` with ``z_P`` in ``X_{|P|-1}`` agreeing on every join.

    Parts are placed in breadth-first order along the joins; each new part is
    indexed by its restrictions to the vertices it shares with placed parts.
    """
    order: list[int] = []
    links_of: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
    placed: set[int] = set()

    def place(index: int) -> None:
        links_of[index] = [
            (b if a == index else a, shared)
            for a, b, shared in joins
            if index in (a, b) and (b if a == index else a) in placed
        ]
        placed.add(index)
        order.append(index)

    for start in range(len(parts)):
        if start in placed:
            continue
        place(start)
        frontier = [start]
        while frontier:
            current = frontier.pop(0)
            for a, b, _ in joins:
                if current in (a, b):
                    other = b if a == current else a
                    if other not in placed:
                        place(other)
                        frontier.append(other)
    tuples: list[dict[int, int]] = [{}]
    for index in order:
        part = parts[index]
        level = len(part) - 1
        links = links_of[index]
        keyed: dict[tuple[int, ...], list[int]] = {}
        for z in x.level(level):
            key = tuple(x.restrict(z, level, _positions(part, shared)) for _, shared in links)
            keyed.setdefault(key, []).append(z)
        extended = []
        for t in tuples:
            key = tuple(
                x.restrict(t[other], len(parts[other]) - 1, _positions(parts[other], shared))
                for other, shared in links
            )
            for z in keyed.get(key, ()):
                extended.append({**t, index: z})
        tuples = extended
    return sorted(tuple(t[k] for k in range(len(parts))) for t in tuples)


def cover_map(
    x: TruncatedSimplicialSet, n: int, parts: Sequence[Part], joins: Sequence[Join]
) -> SegalMapResult:
    _require_levels(x, n, parts)
    limit = cover_limit(x, parts, joins)
    seen: dict[tuple[int, ...], int] = {}
    collision = None
    for z in x.level(n):
        image = tuple(x.restrict(z, n, part) for part in parts)
        if image in seen:
            if collision is None:
                collision = (seen[image], z)
        else:
            seen[image] = z
    missing = next((t for t in limit if t not in seen), None)
    return SegalMapResult(
        parts=tuple(parts),
        n=n,
        domain_size=x.sizes[n],
        limit_size=len(limit),
        injective=collision is None,
        surjective=missing is None,
        collision=collision,
        missing=missing,
    )


def _subdivision_joins(p: PolygonalSubdivision) -> list[Join]:
    return [(i, j, edge) for edge, i, j in subdivision_poset(p).shared]


def limit_over_subdivision(
    x: TruncatedSimplicialSet, p: PolygonalSubdivision
) -> list[tuple[int, ...]]:
    """The limit of ``X`` over the members of ``p`` and the edges they share."""
    _require_levels(x, p.n, p.members)
    return cover_limit(x, p.members, _subdivision_joins(p))


def two_segal_map(x: TruncatedSimplicialSet, p: PolygonalSubdivision) -> SegalMapResult:
    result = cover_map(x, p.n, p.members, _subdivision_joins(p))
    result.subdivision = p
    return result


def _pullback(x: TruncatedSimplicialSet, n: int, first: Part, second: Part) -> SegalMapResult:
    shared = tuple(sorted(set(first) & set(second)))
    return cover_map(x, n, (first, second), [(0, 1, shared)])


def left_map(x: TruncatedSimplicialSet, n: int, j: int) -> SegalMapResult:
    """``X_n -> X_{0,j..n} x_{X_{0,j}} X_{0..j}``."""
    return _pullback(x, n, (0, *range(j, n + 1)) if j else tuple(range(n + 1)), tuple(range(j + 1)))


def right_map(x: TruncatedSimplicialSet, n: int, j: int) -> SegalMapResult:
    """``X_n -> X_{0..j,n} x_{X_{j,n}} X_{j..n}``."""
    first = (*range(j + 1), n) if j != n else tuple(range(n + 1))
    return _pullback(x, n, first, tuple(range(j, n + 1)))


VerdictTable = dict[tuple[int, int], bool | None]


def check_left(x: TruncatedSimplicialSet) -> VerdictTable:
    return {(n, j): left_map(x, n, j).bijective for n in range(3, x.N + 1) for j in range(n + 1)}


def check_right(x: TruncatedSimplicialSet) -> VerdictTable:
    return {(n, j): right_map(x, n, j).bijective for n in range(3, x.N + 1) for j in range(n + 1)}


def _square_is_pullback(
    x: TruncatedSimplicialSet,
    n: int,
    first_face: int,
    second_face: int,
    first_check: int,
    second_check: int,
) -> bool:
    """Whether ``z -> (d_{first_face} z, d_{second_face} z)`` is a bijection onto
    ``{(a, b) : d_{first_check} a = d_{second_check} b}`` with ``z`` in ``X_{n+1}``."""
    images = set()
    for z in x.level(n + 1):
        image = (x.face(n + 1, first_face, z), x.face(n + 1, second_face, z))
        if image in images:
            return False
        images.add(image)
    by_value: dict[int, int] = {}
    for b in x.level(n):
        value = x.face(n, second_check, b)
        by_value[value] = by_value.get(value, 0) + 1
    expected = sum(by_value.get(x.face(n, first_check, a), 0) for a in x.level(n))
    return len(images) == expected


def check_upper(x: TruncatedSimplicialSet) -> VerdictTable:
    """Squares ``(d_{i+1}, d_0)`` over ``(d_0, d_i)`` for ``0 < i < n``; None past the truncation."""
    table: VerdictTable = {}
    for n in range(2, x.N + 1):
        for i in range(1, n):
            table[(n, i)] = _square_is_pullback(x, n, i + 1, 0, 0, i) if n + 1 <= x.N else None
    return table


def check_lower(x: TruncatedSimplicialSet) -> VerdictTable:
    """Squares ``(d_i, d_{n+1})`` over ``(d_n, d_i)`` for ``0 < i < n``; None past the truncation."""
    table: VerdictTable = {}
    for n in range(2, x.N + 1):
        for i in range(1, n):
            table[(n, i)] = _square_is_pullback(x, n, i, n + 1, n, i) if n + 1 <= x.N else None
    return table


def _all_defined(table: VerdictTable) -> bool:
    return all(value for value in table.values() if value is not None)


@dataclass
class AgreementReport:
    left: bool
    lower: bool
    right: bool
    upper: bool

    @property
    def agree(self) -> bool:
        return self.left == self.lower and self.right == self.upper


def square_agreement(x: TruncatedSimplicialSet) -> AgreementReport:
    """Compares the lower/left and upper/right conclusions within the truncation."""
    return AgreementReport(
        left=_all_defined(check_left(x)),
        lower=_all_defined(check_lower(x)),
        right=_all_defined(check_right(x)),
        upper=_all_defined(check_upper(x)),
    )


def check_projection_surjective(x: TruncatedSimplicialSet, t: PolygonalSubdivision) -> bool:
    """Whether forgetting the consecutive triangle ``{j-1, j, j+1}`` maps the limit onto the rest."""
    j = find_consecutive_triangle(t)
    dropped = (j - 1, j, j + 1)
    kept = [member for member in t.members if member != dropped]
    kept_index = {member: k for k, member in enumerate(kept)}
    joins = [
        (kept_index[t.members[a]], kept_index[t.members[b]], edge)
        for edge, a, b in subdivision_poset(t).shared
        if t.members[a] != dropped and t.members[b] != dropped
    ]
    full = limit_over_subdivision(x, t)
    position = t.members.index(dropped)
    projected = {tuple(z for k, z in enumerate(entry) if k != position) for entry in full}
    return all(entry in projected for entry in cover_limit(x, kept, joins))


def stepwise_fan_image(x: TruncatedSimplicialSet, n: int, z: int) -> tuple[int, ...]:
    """Fan image at vertex 0 obtained by splitting off ``{0, m-1, m}`` for ``m = n, n-1, ..., 2``."""
    pieces: list[int] = []
    current, level = z, n
    while level >= 2:
        pieces.append(x.restrict(current, level, (0, level - 1, level)))
        current = x.restrict(current, level, tuple(range(level)))
        level -= 1
    return tuple(reversed(pieces))


def check_one_segal(x: TruncatedSimplicialSet) -> dict[int, bool]:
    """Spine maps ``X_n -> X_1 x_{X_0} ... x_{X_0} X_1`` for ``2 <= n <= N``."""
    verdicts = {}
    for n in range(2, x.N + 1):
        parts = [(k, k + 1) for k in range(n)]
        joins = [(k, k + 1, (k + 1,)) for k in range(n - 1)]
        verdicts[n] = cover_map(x, n, parts, joins).bijective
    return verdicts


@dataclass
class VerdictSummary:
    passed: bool
    checked: int
    failures: list[SegalMapResult] = field(default_factory=list)


def reduced_verdict(x: TruncatedSimplicialSet) -> VerdictSummary:
    """The left and right families, which suffice for every subdivision."""
    failures = []
    checked = 0
    for n in range(3, x.N + 1):
        for j in range(n + 1):
            for result in (left_map(x, n, j), right_map(x, n, j)):
                checked += 1
                if not result.bijective:
                    failures.append(result)
    return VerdictSummary(not failures, checked, failures)


def exhaustive_verdict(x: TruncatedSimplicialSet, max_level: int | None = None) -> VerdictSummary:
    top = x.N if max_level is None else min(max_level, x.N)
    failures = []
    checked = 0
    for n in range(2, top + 1):
        for p in enumerate_subdivisions(n):
            checked += 1
            result = two_segal_map(x, p)
            if not result.bijective:
                failures.append(result)
    return VerdictSummary(not failures, checked, failures)


def left_fan_bijective(x: TruncatedSimplicialSet, n: int) -> bool:
    return two_segal_map(x, fan_triangulation(n, 0)).bijective


class SearchConfig(BaseModel):
    """Bounds of a counterexample search; ``fixtures`` name bundled structures."""

    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    trials: int = Field(default=0, ge=0)
    max_objects: int = Field(default=12, ge=1, le=64)
    max_level: int = Field(default=4, ge=3, le=6)
    ambient: str = "twin2"
    fixtures: list[str] = Field(default_factory=list)
    include_random: bool = True
    timeout_seconds: float | None = Field(default=None, gt=0)

    @field_validator("fixtures")
    @classmethod
    def known_fixtures(cls, value: list[str]) -> list[str]:
        for name in value:
            if name.lower() not in FIXTURE_NAMES:
                raise ValueError(f"unknown fixture {name!r}")
        return [name.lower() for name in value]

    @field_validator("ambient")
    @classmethod
    def known_ambient(cls, value: str) -> str:
        if value.lower() not in FIXTURE_NAMES:
            raise ValueError(f"unknown ambient fixture {value!r}")
        return value.lower()


@dataclass
class Counterexample:
    structure: str
    result: SegalMapResult

    def to_dict(self) -> dict[str, object]:
        return {"structure": self.structure, **self.result.to_dict()}


@dataclass
class SearchReport:
    seed: int
    structures: list[str] = field(default_factory=list)
    maps_checked: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    inconclusive: bool = False


def _neither_triangulations(max_level: int) -> list[PolygonalSubdivision]:
    found = []
    for n in range(3, max_level + 1):
        found.extend(t for t in enumerate_triangulations(n) if classify_subdivision(t) == "neither")
    return found


def counterexample_search(config: SearchConfig) -> SearchReport:
    """Runs every neither-classified triangulation on fixtures and random closures.

    Identical configs give identical reports unless a timeout interrupts.
    """
    if not config.fixtures and not (config.include_random and config.trials):
        raise InputError("search config names no fixtures and no random trials")
    report = SearchReport(seed=config.seed)
    started = time.monotonic()
    candidates: list[tuple[str, CofStructure]] = [(name, load_fixture(name)) for name in config.fixtures]
    if config.include_random:
        rng = random.Random(config.seed)
        ambient = load_fixture(config.ambient)
        for trial in range(config.trials):
            candidates.append((f"random-{trial}", random_closure(rng, ambient, config.max_objects)))
    triangulations = _neither_triangulations(config.max_level)
    for name, structure in candidates:
        if config.timeout_seconds is not None and time.monotonic() - started > config.timeout_seconds:
            report.inconclusive = True
            break
        x = iso_s_dot(structure, config.max_level, verify=False)
        report.structures.append(name)
        for t in triangulations:
            result = two_segal_map(x, t)
            report.maps_checked += 1
            if not result.bijective:
                report.counterexamples.append(Counterexample(name, result))
        logger.info("searched %s: %d counterexamples so far", name, len(report.counterexamples))
    return report
