"""The S•-construction of a finite category with cofibrations.

Objects of ``S_n`` are staircase diagrams ``Ar[n] -> C`` with zeros on the
diagonal whose rows are cofibration sequences. Each level is enumerated from
chains of cofibrations by filling the staircase with chosen cokernels.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .cofcat import CofStructure, WaldStructure
from .constants import ENUMERATION_POLICIES
from .disjoint import DisjointSet
from .errors import InputError, InvariantBreach
from .fincat import (
    DiagramCategory,
    FinCategory,
    FinFunctor,
    ValidationReport,
    diagram_isomorphic,
    functor_category,
    induced_functor,
    is_pushout_square,
    isomorphisms_between,
    poset_category,
    precompose,
    validate_functor,
)

logger = logging.getLogger(__name__)


def _pair_label(pair: tuple[int, int]) -> str:
    return f"{pair[0]},{pair[1]}"


def _parse_pair(label: str) -> tuple[int, int]:
    first, second = label.split(",")
    return int(first), int(second)


@lru_cache(maxsize=None)
def ar_shape(n: int) -> FinCategory:
    """Pairs ``(i, j)`` with ``0 <= i <= j <= n`` ordered componentwise."""
    if n < 0:
        raise InputError("level must be non-negative")
    pairs = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    return poset_category(
        pairs,
        lambda p, q: p[0] <= q[0] and p[1] <= q[1],
        label=_pair_label,
        name=f"Ar[{n}]",
    )


@lru_cache(maxsize=None)
def linear_shape(n: int) -> FinCategory:
    """The chain ``1 -> 2 -> ... -> n``."""
    return poset_category(list(range(1, n + 1)), lambda a, b: a <= b, name=f"chain[{n}]")


def _require_operator(alpha: Sequence[int], n: int) -> tuple[int, ...]:
    values = tuple(alpha)
    if not values:
        raise InputError("simplicial operator has an empty domain")
    if any(v < 0 or v > n for v in values):
        raise InputError(f"simplicial operator {list(values)} leaves [0, {n}]")
    if any(a > b for a, b in zip(values, values[1:])):
        raise InputError(f"simplicial operator {list(values)} is not order-preserving")
    return values


@lru_cache(maxsize=None)
def ar_map(alpha: tuple[int, ...], n: int) -> FinFunctor:
    """``Ar(alpha): Ar[m] -> Ar[n]``, ``(i, j) -> (alpha(i), alpha(j))``."""
    alpha = _require_operator(alpha, n)
    m = len(alpha) - 1
    source, target = ar_shape(m), ar_shape(n)
    object_map = {}
    for i in range(m + 1):
        for j in range(i, m + 1):
            object_map[f"{i},{j}"] = f"{alpha[i]},{alpha[j]}"
    morphism_map = {}
    for morphism in source.morphisms:
        morphism_map[morphism.id] = f"{object_map[morphism.source]}<={object_map[morphism.target]}"
    return FinFunctor(source, target, object_map, morphism_map)


def face_operator(n: int, i: int) -> tuple[int, ...]:
    """``delta_i: [n-1] -> [n]`` skipping ``i``."""
    return tuple(v for v in range(n + 1) if v != i)


def degeneracy_operator(n: int, i: int) -> tuple[int, ...]:
    """``sigma_i: [n+1] -> [n]`` hitting ``i`` twice."""
    return tuple(range(i + 1)) + tuple(range(i, n + 1))


@dataclass(frozen=True, eq=False)
class SObject:
    n: int
    diagram: FinFunctor

    def obj(self, i: int, j: int) -> str:
        return self.diagram.object_map[f"{i},{j}"]

    def arrow(self, source: tuple[int, int], target: tuple[int, int]) -> str:
        return self.diagram.morphism_map[f"{_pair_label(source)}<={_pair_label(target)}"]

    @property
    def top_row(self) -> tuple[str, ...]:
        return tuple(self.obj(0, j) for j in range(1, self.n + 1))


@dataclass(frozen=True)
class CofChain:
    """``A_{0,1} >-> ... >-> A_{0,n}``; ``maps[k]`` goes from ``objects[k]`` to ``objects[k + 1]``."""

    n: int
    objects: tuple[str, ...]
    maps: tuple[str, ...]


def enumerate_chains(s: CofStructure, n: int) -> list[CofChain]:
    if n < 0:
        raise InputError("level must be non-negative")
    if n == 0:
        return [CofChain(0, (), ())]
    chains: list[CofChain] = []
    base = s.base
    cofs_out = {
        obj: sorted(m for m in base.out_of[obj] if m in s.cofibrations) for obj in base.objects
    }

    def extend(objects: list[str], maps: list[str]) -> None:
        if len(objects) == n:
            chains.append(CofChain(n, tuple(objects), tuple(maps)))
            return
        for cofibration in cofs_out[objects[-1]]:
            objects.append(base.mor[cofibration].target)
            maps.append(cofibration)
            extend(objects, maps)
            objects.pop()
            maps.pop()

    for obj in base.objects:
        extend([obj], [])
    return chains


def _top_row_maps(s: CofStructure, chain: CofChain) -> tuple[list[str], dict[tuple[int, int], str]]:
    base = s.base
    top = [s.zero, *chain.objects]
    h: dict[tuple[int, int], str] = {}
    for k in range(chain.n + 1):
        h[(0, k)] = s.zero_map_from(top[k])
    for j in range(1, chain.n + 1):
        h[(j, j)] = base.identities[top[j]]
        for k in range(j, chain.n):
            h[(j, k + 1)] = base.compose(chain.maps[k - 1], h[(j, k)])
    return top, h


def _cokernel_choices(
    s: CofStructure, chain: CofChain, h: dict[tuple[int, int], str]
) -> dict[tuple[int, int], tuple[str, str]]:
    chosen: dict[tuple[int, int], tuple[str, str]] = {}
    for i in range(1, chain.n + 1):
        for j in range(i + 1, chain.n + 1):
            if h[(i, j)] not in s.cofibrations:
                raise InputError(f"chain map {h[(i, j)]!r} is not a cofibration")
            chosen[(i, j)] = s.require_cokernel(h[(i, j)])
    return chosen


def _fill(
    s: CofStructure,
    chain: CofChain,
    top: list[str],
    h: dict[tuple[int, int], str],
    lower: dict[tuple[int, int], tuple[str, str]],
) -> SObject:
    base = s.base
    comp = base.composition
    n = chain.n
    entry: dict[tuple[int, int], tuple[str, str]] = {}
    for j in range(n + 1):
        entry[(0, j)] = (top[j], base.identities[top[j]])
    for i in range(1, n + 1):
        entry[(i, i)] = (s.zero, s.zero_map_to(top[i]))
        for j in range(i + 1, n + 1):
            entry[(i, j)] = lower[(i, j)]
    shape = ar_shape(n)
    object_map = {f"{i},{j}": entry[(i, j)][0] for (i, j) in entry}
    morphism_map: dict[str, str] = {}
    for morphism in shape.morphisms:
        i, j = _parse_pair(morphism.source)
        k, l = _parse_pair(morphism.target)
        src_obj, src_quotient = entry[(i, j)]
        tgt_obj, tgt_quotient = entry[(k, l)]
        if (i, j) == (k, l):
            morphism_map[morphism.id] = base.identities[src_obj]
            continue
        if i == j:
            morphism_map[morphism.id] = s.zero_map_from(tgt_obj)
            continue
        if k == l:
            morphism_map[morphism.id] = s.zero_map_to(src_obj)
            continue
        wanted = comp[(tgt_quotient, h[(j, l)])]
        induced = next(
            (m for m in base.homset(src_obj, tgt_obj) if comp[(m, src_quotient)] == wanted),
            None,
        )
        if induced is None:
            raise InvariantBreach(f"no induced map for {morphism.id} in the staircase fill")
        morphism_map[morphism.id] = induced
    return SObject(n, FinFunctor(shape, base, object_map, morphism_map))


def chain_to_sobject(s: CofStructure, chain: CofChain) -> SObject:
    """The staircase with ``A_{i,j}`` the chosen cokernel of ``A_{0,i} -> A_{0,j}``."""
    top, h = _top_row_maps(s, chain)
    return _fill(s, chain, top, h, _cokernel_choices(s, chain, h))


def _all_fills(s: CofStructure, chain: CofChain) -> Iterator[SObject]:
    base = s.base
    comp = base.composition
    labels = base.iso_class
    top, h = _top_row_maps(s, chain)
    chosen = _cokernel_choices(s, chain, h)
    positions = sorted(chosen)
    alternatives: list[list[tuple[str, str]]] = []
    for position in positions:
        obj, quotient = chosen[position]
        options = []
        for other in base.objects:
            if labels[other] != labels[obj]:
                continue
            for iso in isomorphisms_between(base, obj, other):
                options.append((other, comp[(iso, quotient)]))
        alternatives.append(options)
    for combo in itertools.product(*alternatives):
        yield _fill(s, chain, top, h, dict(zip(positions, combo)))


def mu(s: CofStructure, a: SObject) -> CofChain:
    """The top row ``A_{0,1} >-> ... >-> A_{0,n}``."""
    maps = tuple(a.arrow((0, k), (0, k + 1)) for k in range(1, a.n))
    return CofChain(a.n, a.top_row, maps)


def validate_sobject(s: CofStructure, a: SObject) -> ValidationReport:
    """Checks that ``a`` is an object of ``S_n``.

    Zeros on the diagonal, every horizontal map ``A_{i,j} -> A_{i,k}`` with
    ``i <= j < k`` a cofibration, and every square
    ``(A_{i,j}, A_{i,k}; A_{j,j}, A_{j,k})`` with ``i < j < k`` a pushout.
    """
    report = validate_functor(a.diagram)
    if not report.ok:
        return report
    base = s.base
    for j in range(a.n + 1):
        if a.obj(j, j) != s.zero:
            report.add("sobject_diagonal_not_zero", position=f"{j},{j}", object=a.obj(j, j))
    for i in range(a.n + 1):
        for j in range(i, a.n + 1):
            for k in range(j + 1, a.n + 1):
                horizontal = a.arrow((i, j), (i, k))
                if horizontal not in s.cofibrations:
                    report.add(
                        "sobject_not_cofibration",
                        morphism=horizontal,
                        source=f"{i},{j}",
                        target=f"{i},{k}",
                    )
                if i == j:
                    continue
                if not is_pushout_square(
                    base,
                    horizontal,
                    a.arrow((i, j), (j, j)),
                    a.arrow((i, k), (j, k)),
                    a.arrow((j, j), (j, k)),
                ):
                    report.add(
                        "sobject_not_pushout", corner=f"{i},{j}", top_right=f"{i},{k}", apex=f"{j},{k}"
                    )
    return report


def enumerate_Sn(s: CofStructure, n: int, policy: str = "skeletal") -> list[SObject]:
    """Objects of ``S_n``: one fill per chain, or every fill under the exhaustive policy."""
    if policy not in ENUMERATION_POLICIES:
        raise InputError(f"unknown enumeration policy {policy!r}")
    chains = enumerate_chains(s, n)
    if policy == "skeletal":
        objects = [chain_to_sobject(s, chain) for chain in chains]
    else:
        objects = [a for chain in chains for a in _all_fills(s, chain)]
    logger.debug("S_%d of %r: %d chains, %d objects", n, s.name, len(chains), len(objects))
    return objects


def simplicial_map(s: CofStructure, alpha: Sequence[int], a: SObject) -> SObject:
    """Precomposition of ``a`` with ``Ar(alpha)``."""
    operator = _require_operator(alpha, a.n)
    return SObject(len(operator) - 1, precompose(a.diagram, ar_map(operator, a.n)))


class DiagramClassifier:
    """Sorts diagrams into isomorphism classes.

    Diagrams are bucketed by the iso classes of their objects and compared by
    :func:`diagram_isomorphic` with one representative per class.
    """

    def __init__(self, target: FinCategory) -> None:
        self.target = target
        self.representatives: list[FinFunctor] = []
        self._buckets: dict[tuple[str, ...], list[int]] = {}
        self._exact: dict[tuple[tuple[str, ...], tuple[str, ...]], int] = {}

    def _key(self, diagram: FinFunctor) -> tuple[str, ...]:
        labels = self.target.iso_class
        return tuple(labels[obj] for obj in diagram.signature[0])

    def find(self, diagram: FinFunctor) -> int | None:
        exact = self._exact.get(diagram.signature)
        if exact is not None:
            return exact
        for index in self._buckets.get(self._key(diagram), ()):
            if diagram_isomorphic(diagram, self.representatives[index]):
                self._exact[diagram.signature] = index
                return index
        return None

    def add(self, diagram: FinFunctor) -> int:
        found = self.find(diagram)
        if found is not None:
            return found
        index = len(self.representatives)
        self.representatives.append(diagram)
        self._buckets.setdefault(self._key(diagram), []).append(index)
        self._exact[diagram.signature] = index
        return index


def classify_diagrams(target: FinCategory, diagrams: Sequence[FinFunctor]) -> list[list[int]]:
    """Iso classes of ``diagrams`` as index lists, in order of first appearance."""
    classifier = DiagramClassifier(target)
    classes = DisjointSet(range(len(diagrams)))
    first_of: dict[int, int] = {}
    for index, diagram in enumerate(diagrams):
        label = classifier.add(diagram)
        if label in first_of:
            classes.union(first_of[label], index)
        else:
            first_of[label] = index
    return classes.groups(range(len(diagrams)))


@dataclass
class SLevel:
    n: int
    objects: list[SObject]
    classes: list[list[int]]
    classifier: DiagramClassifier

    def class_of(self, a: SObject) -> int:
        found = self.classifier.find(a.diagram)
        if found is None:
            raise InvariantBreach(f"S_{self.n} object is not isomorphic to any enumerated object")
        return found

    def representative(self, index: int) -> SObject:
        return self.objects[self.classes[index][0]]


def s_levels(s: CofStructure, max_level: int, policy: str = "skeletal") -> list[SLevel]:
    levels = []
    for n in range(max_level + 1):
        objects = enumerate_Sn(s, n, policy)
        classifier = DiagramClassifier(s.base)
        groups: dict[int, list[int]] = {}
        for index, a in enumerate(objects):
            groups.setdefault(classifier.add(a.diagram), []).append(index)
        classes = [groups[label] for label in range(len(classifier.representatives))]
        levels.append(SLevel(n, objects, classes, classifier))
        logger.info("level %d of %r: %d objects, %d classes", n, s.name, len(objects), len(classes))
    return levels


@dataclass(frozen=True)
class TruncatedSimplicialSet:
    """Finite sets ``X_0..X_N`` (elements ``0..size-1``) with face and degeneracy tables.

    ``faces[n][i][x]`` is ``d_i x`` for ``x`` in ``X_n`` (``faces[0]`` is
    empty); ``degeneracies[n][i][x]`` is ``s_i x`` for ``n < N``.
    """

    sizes: tuple[int, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    degeneracies: tuple[tuple[tuple[int, ...], ...], ...]
    labels: tuple[tuple[str, ...], ...] = ()

    @property
    def N(self) -> int:
        return len(self.sizes) - 1

    def level(self, n: int) -> range:
        return range(self.sizes[n])

    def face(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def degeneracy(self, n: int, i: int, x: int) -> int:
        return self.degeneracies[n][i][x]

    def restrict(self, z: int, n: int, vertices: Sequence[int]) -> int:
        """``z`` restricted to the face spanned by ``vertices``."""
        keep = set(vertices)
        level = n
        for vertex in range(n, -1, -1):
            if vertex not in keep:
                z = self.faces[level][vertex][z]
                level -= 1
        return z

    def act(self, alpha: Sequence[int], z: int, n: int) -> int:
        """``X(alpha)(z)`` for an order-preserving ``alpha: [m] -> [n]``."""
        operator = _require_operator(alpha, n)
        image = sorted(set(operator))
        z = self.restrict(z, n, image)
        rank = {v: k for k, v in enumerate(image)}
        surjection = [rank[v] for v in operator]
        return self._degenerate(surjection, z)

    def _degenerate(self, surjection: list[int], z: int) -> int:
        for p in range(len(surjection) - 1):
            if surjection[p] == surjection[p + 1]:
                inner = surjection[: p + 1] + surjection[p + 2 :]
                level = len(inner) - 1
                return self.degeneracies[level][p][self._degenerate(inner, z)]
        return z

    def opposite(self) -> "TruncatedSimplicialSet":
        faces = tuple(tuple(reversed(level)) for level in self.faces)
        degeneracies = tuple(tuple(reversed(level)) for level in self.degeneracies)
        return TruncatedSimplicialSet(self.sizes, faces, degeneracies, self.labels)

    def identity_violations(self) -> list[str]:
        problems: list[str] = []
        top = self.N
        for n in range(2, top + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    for x in self.level(n):
                        if self.faces[n - 1][i][self.faces[n][j][x]] != self.faces[n - 1][j - 1][self.faces[n][i][x]]:
                            problems.append(f"d{i}d{j} != d{j - 1}d{i} at level {n}, element {x}")
        for n in range(top):
            for j in range(n + 1):
                for x in self.level(n):
                    lifted = self.degeneracies[n][j][x]
                    for i in range(n + 2):
                        value = self.faces[n + 1][i][lifted]
                        if i in (j, j + 1):
                            expected = x
                        elif i < j:
                            expected = self.degeneracies[n - 1][j - 1][self.faces[n][i][x]]
                        else:
                            expected = self.degeneracies[n - 1][j][self.faces[n][i - 1][x]]
                        if value != expected:
                            problems.append(f"d{i}s{j} at level {n}, element {x}")
        for n in range(top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    for x in self.level(n):
                        left = self.degeneracies[n + 1][i][self.degeneracies[n][j][x]]
                        right = self.degeneracies[n + 1][j + 1][self.degeneracies[n][i][x]]
                        if left != right:
                            problems.append(f"s{i}s{j} != s{j + 1}s{i} at level {n}, element {x}")
        return problems


def iso_s_dot(
    s: CofStructure, N: int, policy: str = "skeletal", verify: bool = True
) -> TruncatedSimplicialSet:
    """Iso classes of ``S_0..S_N`` with the induced faces and degeneracies.

    With ``verify`` every member of a class is mapped, not only its
    representative, and disagreement raises :class:`InvariantBreach`.
    """
    return iso_s_dot_from_levels(s, s_levels(s, N, policy), verify)


def iso_s_dot_from_levels(
    s: CofStructure, levels: Sequence[SLevel], verify: bool = True
) -> TruncatedSimplicialSet:
    def induced(level: SLevel, target: SLevel, operator: tuple[int, ...], what: str) -> tuple[int, ...]:
        table = []
        for index, members in enumerate(level.classes):
            images = {
                target.class_of(simplicial_map(s, operator, level.objects[member]))
                for member in (members if verify else members[:1])
            }
            if len(images) != 1:
                raise InvariantBreach(f"{what} is not well defined on class {index} of level {level.n}")
            table.append(images.pop())
        return tuple(table)

    top = len(levels) - 1
    faces: list[tuple[tuple[int, ...], ...]] = [()]
    for n in range(1, top + 1):
        faces.append(
            tuple(induced(levels[n], levels[n - 1], face_operator(n, i), f"d{i}") for i in range(n + 1))
        )
    degeneracies = []
    for n in range(top):
        degeneracies.append(
            tuple(
                induced(levels[n], levels[n + 1], degeneracy_operator(n, i), f"s{i}")
                for i in range(n + 1)
            )
        )
    labels = tuple(
        tuple("|".join(level.representative(index).top_row) for index in range(len(level.classes)))
        for level in levels
    )
    return TruncatedSimplicialSet(
        tuple(len(level.classes) for level in levels), tuple(faces), tuple(degeneracies), labels
    )


def chain_diagram(s: CofStructure, chain: CofChain) -> FinFunctor:
    shape = linear_shape(chain.n)
    object_map = {str(k + 1): obj for k, obj in enumerate(chain.objects)}
    morphism_map: dict[str, str] = {}
    for morphism in shape.morphisms:
        a, b = int(morphism.source), int(morphism.target)
        composite = s.base.identities[chain.objects[a - 1]]
        for k in range(a, b):
            composite = s.base.compose(chain.maps[k - 1], composite)
        morphism_map[morphism.id] = composite
    return FinFunctor(shape, s.base, object_map, morphism_map)


def chain_iso_classes(s: CofStructure, n: int) -> list[list[int]]:
    chains = enumerate_chains(s, n)
    return classify_diagrams(s.base, [chain_diagram(s, chain) for chain in chains])


def build_wSn_category(
    w: WaldStructure, n: int, objects: Sequence[SObject] | None = None
) -> DiagramCategory:
    """``wS_n`` on the given objects (all chain fills by default); morphisms have weq components."""
    if objects is None:
        objects = enumerate_Sn(w.cof, n)
    return functor_category(
        ar_shape(n), w.base, [a.diagram for a in objects], w.is_weq, name=f"wS_{n}"
    )


def build_Sn_category(
    s: CofStructure, n: int, objects: Sequence[SObject] | None = None
) -> DiagramCategory:
    if objects is None:
        objects = enumerate_Sn(s, n)
    return functor_category(ar_shape(n), s.base, [a.diagram for a in objects], name=f"S_{n}")


def chain_category(
    s: CofStructure, n: int, component_ok: Callable[[str], bool] | None = None
) -> DiagramCategory:
    """Chains of ``n - 1`` cofibrations; with ``component_ok`` the isomorphisms this is ``M_n``."""
    diagrams = [chain_diagram(s, chain) for chain in enumerate_chains(s, n)]
    return functor_category(linear_shape(n), s.base, diagrams, component_ok, name=f"M_{n}")


def _component_positions(alpha: tuple[int, ...], n: int) -> list[int]:
    index = {obj: k for k, obj in enumerate(ar_shape(n).objects)}
    functor = ar_map(alpha, n)
    return [index[functor.object_map[obj]] for obj in functor.source.objects]


def restriction_functor(
    source: DiagramCategory, target: DiagramCategory, alpha: Sequence[int], n: int
) -> FinFunctor:
    """``S(alpha)`` between materialized S-categories."""
    operator = _require_operator(alpha, n)
    shape_map = ar_map(operator, n)
    positions = _component_positions(operator, n)
    return induced_functor(
        source,
        target,
        lambda diagram: precompose(diagram, shape_map),
        lambda _src, _tgt, components: tuple(components[k] for k in positions),
    )


def mu_functor(source: DiagramCategory, target: DiagramCategory, n: int) -> FinFunctor:
    """``mu_n``: read off the top row of every diagram and transformation."""
    shape = linear_shape(n)
    object_map = {str(k): f"0,{k}" for k in range(1, n + 1)}
    morphism_map = {
        m.id: f"{object_map[m.source]}<={object_map[m.target]}" for m in shape.morphisms
    }
    top_row = FinFunctor(shape, ar_shape(n), object_map, morphism_map)
    index = {obj: k for k, obj in enumerate(ar_shape(n).objects)}
    positions = [index[object_map[obj]] for obj in shape.objects]
    return induced_functor(
        source,
        target,
        lambda diagram: precompose(diagram, top_row),
        lambda _src, _tgt, components: tuple(components[k] for k in positions),
    )


def nerve(c: FinCategory, N: int) -> TruncatedSimplicialSet:
    """Strings of ``n`` composable morphisms, ``0 <= n <= N``."""
    levels: list[list[tuple[str, ...]]] = [[(obj,) for obj in c.objects]]
    for n in range(1, N + 1):
        if n == 1:
            levels.append([(m.id,) for m in c.morphisms])
            continue
        extended = []
        for string in levels[n - 1]:
            for second in c.out_of[c.mor[string[-1]].target]:
                extended.append(string + (second,))
        levels.append(extended)
    index = [{string: k for k, string in enumerate(level)} for level in levels]

    def face(n: int, i: int, string: tuple[str, ...]) -> tuple[str, ...]:
        if n == 1:
            morphism = c.mor[string[0]]
            return (morphism.target,) if i == 0 else (morphism.source,)
        if i == 0:
            return string[1:]
        if i == n:
            return string[:-1]
        return string[: i - 1] + (c.composition[(string[i], string[i - 1])],) + string[i + 1 :]

    def degeneracy(n: int, i: int, string: tuple[str, ...]) -> tuple[str, ...]:
        if n == 0:
            return (c.identities[string[0]],)
        if i == n:
            ident = c.identities[c.mor[string[-1]].target]
        else:
            ident = c.identities[c.mor[string[i]].source]
        return string[:i] + (ident,) + string[i:]

    faces: list[tuple[tuple[int, ...], ...]] = [()]
    for n in range(1, N + 1):
        faces.append(
            tuple(
                tuple(index[n - 1][face(n, i, string)] for string in levels[n])
                for i in range(n + 1)
            )
        )
    degeneracies = []
    for n in range(N):
        degeneracies.append(
            tuple(
                tuple(index[n + 1][degeneracy(n, i, string)] for string in levels[n])
                for i in range(n + 1)
            )
        )
    labels = tuple(tuple(".".join(string) for string in level) for level in levels)
    return TruncatedSimplicialSet(
        tuple(len(level) for level in levels), tuple(faces), tuple(degeneracies), labels
    )
