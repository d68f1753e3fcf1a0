"""Explicit finite categories and functors.

Categories are given by tables: object ids, morphism records, the identity
assignment and the composition table ``(g, f) -> g∘f``. Universal properties
are decided by exhaustive search inside the category itself.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .constants import DEFAULT_MAX_MORPHISMS, DEFAULT_MAX_OBJECTS
from .disjoint import DisjointSet
from .errors import CapExceededError, InputError, InvariantBreach
from .messages import translate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Morphism:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Violation:
    key: str
    args: tuple[tuple[str, str], ...] = ()

    def describe(self, language: str = "en") -> str:
        return translate(language, self.key, **dict(self.args))

    def to_dict(self) -> dict[str, object]:
        return {"key": self.key, "args": dict(self.args)}


@dataclass
class ValidationReport:
    """Violations found by a validator; an empty list means the input is valid."""

    violations: list[Violation] = field(default_factory=list)
    mode: str = "strict"
    bound: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, key: str, **args: object) -> None:
        self.violations.append(
            Violation(key, tuple((name, str(value)) for name, value in args.items()))
        )

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)
        self.notes.extend(note for note in other.notes if note not in self.notes)

    def keys(self) -> list[str]:
        return [violation.key for violation in self.violations]

    def to_dict(self) -> dict[str, object]:
        return {
            "ok": self.ok,
            "mode": self.mode,
            "bound": self.bound,
            "notes": list(self.notes),
            "violations": [violation.to_dict() for violation in self.violations],
        }


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identities: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]
    name: str = ""

    def __post_init__(self) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise InputError(f"duplicate object ids in category {self.name!r}")
        known = set(self.objects)
        seen: set[str] = set()
        for morphism in self.morphisms:
            if morphism.id in seen:
                raise InputError(f"duplicate morphism id {morphism.id!r}")
            seen.add(morphism.id)
            if morphism.source not in known or morphism.target not in known:
                raise InputError(f"morphism {morphism.id!r} has an unknown endpoint")
        for obj in self.objects:
            ident = self.identities.get(obj)
            if ident is None:
                raise InputError(f"object {obj!r} has no identity morphism")
            if ident not in seen:
                raise InputError(f"identity {ident!r} of {obj!r} is not a declared morphism")

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        morphisms: Iterable[tuple[str, str, str]],
        identities: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
        name: str = "",
    ) -> "FinCategory":
        return cls(
            objects=tuple(objects),
            morphisms=tuple(Morphism(*record) for record in morphisms),
            identities=dict(identities),
            composition=dict(composition),
            name=name,
        )

    @cached_property
    def mor(self) -> dict[str, Morphism]:
        return {morphism.id: morphism for morphism in self.morphisms}

    @cached_property
    def hom(self) -> dict[tuple[str, str], tuple[str, ...]]:
        table: dict[tuple[str, str], list[str]] = defaultdict(list)
        for morphism in self.morphisms:
            table[(morphism.source, morphism.target)].append(morphism.id)
        return {key: tuple(sorted(ids)) for key, ids in table.items()}

    @cached_property
    def out_of(self) -> dict[str, tuple[str, ...]]:
        table: dict[str, list[str]] = {obj: [] for obj in self.objects}
        for morphism in self.morphisms:
            table[morphism.source].append(morphism.id)
        return {obj: tuple(ids) for obj, ids in table.items()}

    @cached_property
    def identity_set(self) -> frozenset[str]:
        return frozenset(self.identities.values())

    @cached_property
    def op(self) -> "FinCategory":
        return opposite(self)

    @cached_property
    def inverses(self) -> dict[str, str]:
        found: dict[str, str] = {}
        comp = self.composition
        for morphism in self.morphisms:
            src, tgt = morphism.source, morphism.target
            for candidate in self.homset(tgt, src):
                if (
                    comp.get((candidate, morphism.id)) == self.identities[src]
                    and comp.get((morphism.id, candidate)) == self.identities[tgt]
                ):
                    found[morphism.id] = candidate
                    break
        return found

    @cached_property
    def iso_class(self) -> dict[str, str]:
        """Maps each object to the smallest object id isomorphic to it."""
        classes = DisjointSet(self.objects)
        for morphism_id in self.inverses:
            morphism = self.mor[morphism_id]
            classes.union(morphism.source, morphism.target)
        labels: dict[str, str] = {}
        for group in classes.groups(self.objects):
            label = min(group)
            for obj in group:
                labels[obj] = label
        return labels

    @cached_property
    def generating_morphisms(self) -> tuple[str, ...]:
        """Indecomposable morphisms when they generate, otherwise all non-identities."""
        non_identities = [m.id for m in self.morphisms if m.id not in self.identity_set]
        directed = all(
            m.source != m.target for m in self.morphisms if m.id not in self.identity_set
        ) and not any(
            self.hom.get((m.target, m.source)) for m in self.morphisms if m.source != m.target
        )
        if not directed:
            return tuple(non_identities)
        decomposable: set[str] = set()
        for (second, first), composite in self.composition.items():
            if first not in self.identity_set and second not in self.identity_set:
                decomposable.add(composite)
        return tuple(m for m in non_identities if m not in decomposable)

    @cached_property
    def pushout_cache(self) -> dict[tuple[str, str, bool], "CommutativeSquare | None"]:
        return {}

    def require_object(self, obj: str) -> str:
        if obj not in self.identities:
            raise InputError(f"unknown object id {obj!r}")
        return obj

    def require_morphism(self, morphism_id: str) -> Morphism:
        try:
            return self.mor[morphism_id]
        except KeyError:
            raise InputError(f"unknown morphism id {morphism_id!r}") from None

    def source(self, morphism_id: str) -> str:
        return self.require_morphism(morphism_id).source

    def target(self, morphism_id: str) -> str:
        return self.require_morphism(morphism_id).target

    def identity(self, obj: str) -> str:
        return self.identities[self.require_object(obj)]

    def homset(self, source: str, target: str) -> tuple[str, ...]:
        return self.hom.get((source, target), ())

    def compose(self, *morphism_ids: str) -> str:
        """Composite of a path written right to left: ``compose(h, g, f) = h∘g∘f``."""
        if not morphism_ids:
            raise InputError("cannot compose an empty path")
        result = morphism_ids[-1]
        for second in reversed(morphism_ids[:-1]):
            try:
                result = self.composition[(second, result)]
            except KeyError:
                raise InputError(f"{second!r} and {result!r} are not composable") from None
        return result

    def same_structure(self, other: "FinCategory") -> bool:
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and dict(self.identities) == dict(other.identities)
            and dict(self.composition) == dict(other.composition)
        )


def opposite(c: FinCategory) -> FinCategory:
    return FinCategory(
        objects=c.objects,
        morphisms=tuple(Morphism(m.id, m.target, m.source) for m in c.morphisms),
        identities=dict(c.identities),
        composition={(f, g): h for (g, f), h in c.composition.items()},
        name=f"{c.name}^op" if c.name else "",
    )


def ensure_within_caps(
    c: FinCategory,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_morphisms: int = DEFAULT_MAX_MORPHISMS,
) -> FinCategory:
    if len(c.objects) > max_objects:
        raise CapExceededError(
            f"category {c.name!r} has {len(c.objects)} objects, cap is {max_objects}"
        )
    if len(c.morphisms) > max_morphisms:
        raise CapExceededError(
            f"category {c.name!r} has {len(c.morphisms)} morphisms, cap is {max_morphisms}"
        )
    return c


def subcategory(
    c: FinCategory, objects: Iterable[str], morphisms: Iterable[str], name: str = ""
) -> FinCategory:
    keep_objects = set(objects)
    keep = set(morphisms) | {c.identities[obj] for obj in keep_objects}
    ordered_objects = tuple(obj for obj in c.objects if obj in keep_objects)
    kept = tuple(
        m for m in c.morphisms
        if m.id in keep and m.source in keep_objects and m.target in keep_objects
    )
    kept_ids = {m.id for m in kept}
    composition = {
        pair: result
        for pair, result in c.composition.items()
        if pair[0] in kept_ids and pair[1] in kept_ids
    }
    missing = [result for result in composition.values() if result not in kept_ids]
    if missing:
        raise InputError(f"morphism set is not closed under composition (missing {missing[0]!r})")
    return FinCategory(
        objects=ordered_objects,
        morphisms=kept,
        identities={obj: c.identities[obj] for obj in ordered_objects},
        composition=composition,
        name=name or c.name,
    )


def poset_category(
    elements: Sequence[object],
    leq: Callable[[object, object], bool],
    label: Callable[[object], str] = str,
    name: str = "",
) -> FinCategory:
    """The category with one morphism ``a -> b`` whenever ``a <= b``."""
    names = [label(element) for element in elements]
    morphisms: list[tuple[str, str, str]] = []
    arrow: dict[tuple[str, str], str] = {}
    for a, a_name in zip(elements, names):
        for b, b_name in zip(elements, names):
            if leq(a, b):
                morphism_id = f"{a_name}<={b_name}"
                arrow[(a_name, b_name)] = morphism_id
                morphisms.append((morphism_id, a_name, b_name))
    composition = {}
    for (a, b), first in arrow.items():
        for c_name in names:
            second = arrow.get((b, c_name))
            if second is not None:
                composition[(second, first)] = arrow[(a, c_name)]
    identities = {n: arrow[(n, n)] for n in names}
    return FinCategory.build(names, morphisms, identities, composition, name=name)


def validate_category(c: FinCategory) -> ValidationReport:
    report = ValidationReport()
    comp = c.composition
    mor = c.mor
    for (second, first), result in comp.items():
        if second not in mor or first not in mor or result not in mor:
            report.add("composite_unknown_id", first=first, second=second)
            continue
        if mor[first].target != mor[second].source:
            report.add("composite_not_composable", first=first, second=second)
            continue
        if mor[result].source != mor[first].source or mor[result].target != mor[second].target:
            report.add("composite_endpoints", first=first, second=second, result=result)
    for morphism in c.morphisms:
        for second in c.out_of[morphism.target]:
            if (second, morphism.id) not in comp:
                report.add("composition_missing", first=morphism.id, second=second)
    for obj, ident in c.identities.items():
        record = mor[ident]
        if record.source != obj or record.target != obj:
            report.add("identity_endpoints", object=obj, morphism=ident)
    for morphism in c.morphisms:
        left = comp.get((c.identities[morphism.target], morphism.id))
        if left != morphism.id:
            report.add("left_identity", morphism=morphism.id)
        right = comp.get((morphism.id, c.identities[morphism.source]))
        if right != morphism.id:
            report.add("right_identity", morphism=morphism.id)
    for f in c.morphisms:
        for g in c.out_of[f.target]:
            gf = comp.get((g, f.id))
            if gf is None:
                continue
            for h in c.out_of[mor[g].target]:
                hg = comp.get((h, g))
                if hg is None:
                    continue
                if comp.get((h, gf)) != comp.get((hg, f.id)):
                    report.add("associativity", first=f.id, second=g, third=h)
    logger.debug("validated category %r: %d violations", c.name, len(report.violations))
    return report


def is_isomorphism(c: FinCategory, morphism_id: str) -> bool:
    c.require_morphism(morphism_id)
    return morphism_id in c.inverses


def isomorphisms_between(c: FinCategory, source: str, target: str) -> list[str]:
    return [m for m in c.homset(source, target) if m in c.inverses]


@dataclass(frozen=True)
class CommutativeSquare:
    """A square ``right∘top = bottom∘left``.

    ::

        corner ----top----> top_right
          |                    |
         left                right
          v                    v
        bottom_left --bottom--> apex
    """

    corner: str
    top_right: str
    bottom_left: str
    apex: str
    top: str
    left: str
    right: str
    bottom: str

    def to_dict(self) -> dict[str, str]:
        return {
            "corner": self.corner,
            "top_right": self.top_right,
            "bottom_left": self.bottom_left,
            "apex": self.apex,
            "top": self.top,
            "left": self.left,
            "right": self.right,
            "bottom": self.bottom,
        }


def square_commutes(c: FinCategory, top: str, left: str, right: str, bottom: str) -> bool:
    return c.composition.get((right, top)) == c.composition.get((bottom, left)) is not None


def _cocone_counts(c: FinCategory, top: str, left: str) -> dict[str, int]:
    b = c.mor[top].target
    d = c.mor[left].target
    comp = c.composition
    counts: dict[str, int] = {}
    for q in c.objects:
        via_top = Counter(comp[(x, top)] for x in c.homset(b, q))
        counts[q] = sum(via_top[comp[(y, left)]] for y in c.homset(d, q))
    return counts


def _hom_profile_matches(c: FinCategory, apex: str, counts: Mapping[str, int]) -> bool:
    return all(len(c.homset(apex, q)) == counts[q] for q in c.objects)


def _mediators_unique(c: FinCategory, apex: str, right: str, bottom: str) -> bool:
    comp = c.composition
    for q in c.objects:
        seen: set[tuple[str, str]] = set()
        for m in c.homset(apex, q):
            key = (comp[(m, right)], comp[(m, bottom)])
            if key in seen:
                return False
            seen.add(key)
    return True


def find_pushout(
    c: FinCategory, top: str, left: str, reverse: bool = False
) -> CommutativeSquare | None:
    """Pushout of the span ``top: A -> B``, ``left: A -> C``.

    A candidate apex ``P`` with legs ``(u, v)`` is universal exactly when for
    every object ``Q`` the assignment ``m -> (m∘u, m∘v)`` is a bijection from
    ``Hom(P, Q)`` onto the commuting cocones at ``Q``. Candidates are tried by
    object id, then by leg ids; ``reverse`` flips both orders.
    """
    f = c.require_morphism(top)
    g = c.require_morphism(left)
    if f.source != g.source:
        raise InputError(f"{top!r} and {left!r} do not share a source")
    key = (top, left, reverse)
    cache = c.pushout_cache
    if key in cache:
        return cache[key]
    counts = _cocone_counts(c, top, left)
    comp = c.composition
    result: CommutativeSquare | None = None
    for apex in sorted(c.objects, reverse=reverse):
        if not _hom_profile_matches(c, apex, counts):
            continue
        by_value: dict[str, list[str]] = defaultdict(list)
        for v in c.homset(g.target, apex):
            by_value[comp[(v, left)]].append(v)
        for u in sorted(c.homset(f.target, apex), reverse=reverse):
            for v in sorted(by_value.get(comp[(u, top)], ()), reverse=reverse):
                if _mediators_unique(c, apex, u, v):
                    result = CommutativeSquare(
                        f.source, f.target, g.target, apex, top, left, u, v
                    )
                    break
            if result is not None:
                break
        if result is not None:
            break
    cache[key] = result
    return result


def is_pushout_square(c: FinCategory, top: str, left: str, right: str, bottom: str) -> bool:
    if not square_commutes(c, top, left, right, bottom):
        return False
    apex = c.mor[right].target
    counts = _cocone_counts(c, top, left)
    return _hom_profile_matches(c, apex, counts) and _mediators_unique(c, apex, right, bottom)


def find_pullback(c: FinCategory, right: str, bottom: str) -> CommutativeSquare | None:
    """Pullback of the cospan ``right: B -> D``, ``bottom: C -> D``."""
    dual = find_pushout(c.op, right, bottom)
    if dual is None:
        return None
    return CommutativeSquare(
        corner=dual.apex,
        top_right=dual.top_right,
        bottom_left=dual.bottom_left,
        apex=dual.corner,
        top=dual.right,
        left=dual.bottom,
        right=right,
        bottom=bottom,
    )


def is_pullback_square(c: FinCategory, top: str, left: str, right: str, bottom: str) -> bool:
    return is_pushout_square(c.op, right, bottom, top, left)


@dataclass(frozen=True, eq=False)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]

    @cached_property
    def signature(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return (
            tuple(self.object_map[obj] for obj in self.source.objects),
            tuple(self.morphism_map[m.id] for m in self.source.morphisms),
        )

    def __call__(self, item: str) -> str:
        if item in self.object_map and item in self.source.identities:
            return self.object_map[item]
        return self.morphism_map[item]


def validate_functor(functor: FinFunctor) -> ValidationReport:
    report = ValidationReport()
    src, tgt = functor.source, functor.target
    for obj in src.objects:
        image = functor.object_map.get(obj)
        if image is None or image not in tgt.identities:
            report.add("functor_object_unmapped", object=obj)
            return report
    for m in src.morphisms:
        image = functor.morphism_map.get(m.id)
        if image is None or image not in tgt.mor:
            report.add("functor_morphism_unmapped", morphism=m.id)
            return report
        record = tgt.mor[image]
        if record.source != functor.object_map[m.source] or record.target != functor.object_map[m.target]:
            report.add("functor_endpoints", morphism=m.id)
    for obj in src.objects:
        if functor.morphism_map[src.identities[obj]] != tgt.identities[functor.object_map[obj]]:
            report.add("functor_identity", object=obj)
    for (second, first), result in src.composition.items():
        image = tgt.composition.get((functor.morphism_map[second], functor.morphism_map[first]))
        if image != functor.morphism_map[result]:
            report.add("functor_composition", first=first, second=second)
    return report


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(
        c, c, {obj: obj for obj in c.objects}, {m.id: m.id for m in c.morphisms}
    )


def natural_transformations(
    first: FinFunctor,
    second: FinFunctor,
    component_ok: Callable[[str], bool] | None = None,
) -> Iterator[tuple[str, ...]]:
    """Natural transformations ``first => second`` as component tuples.

    Components are listed in the order of ``first.source.objects``; naturality
    is checked on the generating morphisms of the shape as soon as both ends
    have been assigned.
    """
    if first.source is not second.source and not first.source.same_structure(second.source):
        raise InputError("diagrams have different shapes")
    if first.target is not second.target:
        raise InputError("diagrams land in different categories")
    shape, target = first.source, first.target
    comp = target.composition
    position = {obj: index for index, obj in enumerate(shape.objects)}
    candidates: list[list[str]] = []
    for obj in shape.objects:
        homs = target.homset(first.object_map[obj], second.object_map[obj])
        candidates.append([m for m in homs if component_ok is None or component_ok(m)])
    checks: list[list[tuple[int, int, str, str]]] = [[] for _ in shape.objects]
    for morphism_id in shape.generating_morphisms:
        arrow = shape.mor[morphism_id]
        src_index, tgt_index = position[arrow.source], position[arrow.target]
        checks[max(src_index, tgt_index)].append(
            (src_index, tgt_index, first.morphism_map[morphism_id], second.morphism_map[morphism_id])
        )
    chosen: list[str] = [""] * len(shape.objects)

    def natural_at(index: int) -> bool:
        for src_index, tgt_index, image_first, image_second in checks[index]:
            if comp[(chosen[tgt_index], image_first)] != comp[(image_second, chosen[src_index])]:
                return False
        return True

    def search(index: int) -> Iterator[tuple[str, ...]]:
        if index == len(chosen):
            yield tuple(chosen)
            return
        for candidate in candidates[index]:
            chosen[index] = candidate
            if natural_at(index):
                yield from search(index + 1)

    yield from search(0)


def diagram_isomorphic(first: FinFunctor, second: FinFunctor) -> bool:
    """Whether a natural isomorphism ``first => second`` exists."""
    target = first.target
    if first.target is not second.target:
        raise InputError("diagrams land in different categories")
    labels = target.iso_class
    for obj in first.source.objects:
        if labels[first.object_map[obj]] != labels[second.object_map[obj]]:
            return False
    inverses = target.inverses
    for _ in natural_transformations(first, second, lambda m: m in inverses):
        return True
    return False


def precompose(diagram: FinFunctor, shape_map: FinFunctor) -> FinFunctor:
    """The restriction ``diagram ∘ shape_map``."""
    if shape_map.target is not diagram.source and not shape_map.target.same_structure(diagram.source):
        raise InputError("shape map does not land in the diagram's shape")
    return FinFunctor(
        shape_map.source,
        diagram.target,
        {obj: diagram.object_map[image] for obj, image in shape_map.object_map.items()},
        {m: diagram.morphism_map[image] for m, image in shape_map.morphism_map.items()},
    )


@dataclass(frozen=True, eq=False)
class DiagramCategory:
    """A category whose objects are diagrams and whose morphisms are natural transformations.

    Object ``d<i>`` stands for ``diagrams[i]``; ``components`` gives the
    natural transformation behind each morphism id.
    """

    category: FinCategory
    diagrams: tuple[FinFunctor, ...]
    components: Mapping[str, tuple[str, ...]]

    @cached_property
    def by_signature(self) -> dict[tuple[tuple[str, ...], tuple[str, ...]], str]:
        return {
            diagram.signature: obj
            for obj, diagram in zip(self.category.objects, self.diagrams)
        }

    @cached_property
    def by_components(self) -> dict[tuple[str, str, tuple[str, ...]], str]:
        table = {}
        for morphism in self.category.morphisms:
            table[(morphism.source, morphism.target, self.components[morphism.id])] = morphism.id
        return table

    def diagram(self, obj: str) -> FinFunctor:
        return self.diagrams[self.category.objects.index(obj)]

    def object_of(self, diagram: FinFunctor) -> str | None:
        return self.by_signature.get(diagram.signature)

    def morphism_of(self, source: str, target: str, components: tuple[str, ...]) -> str | None:
        return self.by_components.get((source, target, components))


Components = tuple[str, ...]


class ComponentComposition(Mapping[tuple[str, str], str]):
    """Composition table of a category whose morphisms are component tuples, evaluated on demand.

    ``combine(second, first)`` composes component tuples; the result is looked
    up among the declared morphisms.
    """

    def __init__(
        self,
        morphisms: Sequence[tuple[str, str, str]],
        components: Mapping[str, Components],
        lookup: Mapping[tuple[str, str, Components], str],
        combine: Callable[[Components, Components], Components],
    ) -> None:
        self._combine = combine
        self._components = components
        self._lookup = lookup
        self._endpoints = {morphism_id: (src, tgt) for morphism_id, src, tgt in morphisms}
        self._outgoing: dict[str, list[str]] = defaultdict(list)
        for morphism_id, src, _ in morphisms:
            self._outgoing[src].append(morphism_id)
        self._cache: dict[tuple[str, str], str] = {}

    def __getitem__(self, key: tuple[str, str]) -> str:
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        second, first = key
        if first not in self._endpoints or second not in self._endpoints:
            raise KeyError(key)
        src, middle = self._endpoints[first]
        middle2, tgt = self._endpoints[second]
        if middle != middle2:
            raise KeyError(key)
        composite = self._combine(self._components[second], self._components[first])
        result = self._lookup.get((src, tgt, composite))
        if result is None:
            raise InvariantBreach(f"morphisms are not closed under composition at {second}∘{first}")
        self._cache[key] = result
        return result

    def __iter__(self) -> Iterator[tuple[str, str]]:
        for first, (_, middle) in self._endpoints.items():
            for second in self._outgoing[middle]:
                yield (second, first)

    def __len__(self) -> int:
        return sum(len(self._outgoing[middle]) for _, middle in self._endpoints.values())


def functor_category(
    shape: FinCategory,
    target: FinCategory,
    diagrams: Sequence[FinFunctor],
    component_ok: Callable[[str], bool] | None = None,
    name: str = "",
) -> DiagramCategory:
    """The category on an explicit list of diagrams ``shape -> target``.

    Morphisms are the natural transformations all of whose components pass
    ``component_ok``; the predicate must be closed under composition.
    """
    comp = target.composition

    def combine(second: Components, first: Components) -> Components:
        return tuple(comp[(b, a)] for a, b in zip(first, second))

    category, components = component_category(
        len(diagrams),
        lambda i, j: natural_transformations(diagrams[i], diagrams[j], component_ok),
        lambda i: tuple(target.identities[diagrams[i].object_map[obj]] for obj in shape.objects),
        combine,
        prefix="d",
        name=name,
    )
    return DiagramCategory(category, tuple(diagrams), components)


def component_category(
    count: int,
    homs: Callable[[int, int], Iterable[Components]],
    identity: Callable[[int], Components],
    combine: Callable[[Components, Components], Components],
    prefix: str = "x",
    name: str = "",
) -> tuple[FinCategory, dict[str, Components]]:
    """A category on objects ``<prefix><i>`` whose morphisms are the component tuples ``homs(i, j)``.

    Morphism ids read ``<prefix><i>><prefix><j>#<k>``. ``identity(i)`` must be
    among ``homs(i, i)`` and ``combine`` must stay inside the listed tuples.
    """
    objects = tuple(f"{prefix}{index}" for index in range(count))
    morphisms: list[tuple[str, str, str]] = []
    components: dict[str, Components] = {}
    identities: dict[str, str] = {}
    lookup: dict[tuple[str, str, Components], str] = {}
    for i in range(count):
        for j in range(count):
            for k, entry in enumerate(homs(i, j)):
                morphism_id = f"{objects[i]}>{objects[j]}#{k}"
                morphisms.append((morphism_id, objects[i], objects[j]))
                components[morphism_id] = entry
                lookup[(objects[i], objects[j], entry)] = morphism_id
        ident = lookup.get((objects[i], objects[i], identity(i)))
        if ident is None:
            raise InvariantBreach(f"identity of {objects[i]} was filtered out")
        identities[objects[i]] = ident
    category = FinCategory(
        objects=objects,
        morphisms=tuple(Morphism(*record) for record in morphisms),
        identities=identities,
        composition=ComponentComposition(morphisms, components, lookup, combine),
        name=name,
    )
    logger.debug("category %r: %d objects, %d morphisms", name, len(objects), len(morphisms))
    return category, components


def induced_functor(
    source: DiagramCategory,
    target: DiagramCategory,
    on_diagram: Callable[[FinFunctor], FinFunctor],
    on_components: Callable[[str, str, tuple[str, ...]], tuple[str, ...]],
) -> FinFunctor:
    """A functor between diagram categories given by its action on diagrams and transformations.

    Images must be objects and morphisms of ``target``; a miss is an
    :class:`InvariantBreach`.
    """
    object_map: dict[str, str] = {}
    for obj, diagram in zip(source.category.objects, source.diagrams):
        image = target.object_of(on_diagram(diagram))
        if image is None:
            raise InvariantBreach(f"image of diagram {obj} is not an object of {target.category.name!r}")
        object_map[obj] = image
    morphism_map: dict[str, str] = {}
    for morphism in source.category.morphisms:
        components = on_components(morphism.source, morphism.target, source.components[morphism.id])
        image = target.morphism_of(object_map[morphism.source], object_map[morphism.target], components)
        if image is None:
            raise InvariantBreach(f"image of {morphism.id} is not a morphism of {target.category.name!r}")
        morphism_map[morphism.id] = image
    return FinFunctor(source.category, target.category, object_map, morphism_map)
