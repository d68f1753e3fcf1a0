"""Finite groupoids, 2-limits of categories and the category-level 2-Segal checks.

A 2-limit object carries, besides one object per vertex of the index
category, a coherence isomorphism per arrow. Every construction here is
tabulated with :func:`segallab.fincat.component_category`, so objects are
tuples of labels and morphisms are tuples of component morphisms.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Mapping, Sequence

from .cofcat import CofStructure, WaldStructure
from .errors import InputError, InvariantBreach
from .fincat import (
    Components,
    DiagramCategory,
    FinCategory,
    FinFunctor,
    ValidationReport,
    component_category,
    isomorphisms_between,
    poset_category,
    validate_functor,
)
from .sconstr import (
    build_Sn_category,
    build_wSn_category,
    chain_category,
    mu_functor,
    restriction_functor,
)

logger = logging.getLogger(__name__)

VARIANTS = ("iso-groupoid", "S-category", "wS-category")


def groupoid_violations(c: FinCategory) -> ValidationReport:
    report = ValidationReport()
    inverses = c.inverses
    for morphism in c.morphisms:
        if morphism.id not in inverses:
            report.add("not_a_groupoid", morphism=morphism.id)
    return report


def is_groupoid(c: FinCategory) -> bool:
    return all(morphism.id in c.inverses for morphism in c.morphisms)


def require_groupoid(c: FinCategory) -> FinCategory:
    report = groupoid_violations(c)
    if not report.ok:
        raise InputError(f"{c.name or 'category'} is not a groupoid: {report.violations[0].describe()}")
    return c


@dataclass(frozen=True, eq=False)
class LimitCategory:
    """A tabulated category together with the label tuple behind each object
    and the component tuple behind each morphism."""

    category: FinCategory
    labels: tuple[tuple[str, ...], ...]
    components: Mapping[str, Components]

    @cached_property
    def by_label(self) -> dict[tuple[str, ...], str]:
        return dict(zip(self.labels, self.category.objects))

    @cached_property
    def by_components(self) -> dict[tuple[str, str, Components], str]:
        return {
            (m.source, m.target, self.components[m.id]): m.id for m in self.category.morphisms
        }

    def label(self, obj: str) -> tuple[str, ...]:
        return self.labels[self.category.objects.index(obj)]

    def object_of(self, label: tuple[str, ...]) -> str | None:
        return self.by_label.get(tuple(label))

    def morphism_of(self, source: str, target: str, components: Components) -> str | None:
        return self.by_components.get((source, target, tuple(components)))


def _tabulate(
    labels: Sequence[tuple[str, ...]],
    homs: Callable[[int, int], Iterator[Components]],
    identity: Callable[[int], Components],
    categories: Sequence[FinCategory],
    prefix: str,
    name: str,
) -> LimitCategory:
    """Componentwise composition in ``categories``; one category per component slot."""

    def combine(second: Components, first: Components) -> Components:
        return tuple(
            c.composition[(g, f)] for c, g, f in zip(categories, second, first)
        )

    category, components = component_category(
        len(labels), homs, identity, combine, prefix=prefix, name=name
    )
    return LimitCategory(category, tuple(tuple(label) for label in labels), components)


@dataclass(frozen=True, eq=False)
class CategoryDiagram:
    """A strict functor from a finite index category to finite categories.

    ``functors`` is keyed by the non-identity morphisms of ``index``.
    """

    index: FinCategory
    categories: Mapping[str, FinCategory]
    functors: Mapping[str, FinFunctor]

    @cached_property
    def arrows(self) -> tuple[str, ...]:
        idents = self.index.identity_set
        return tuple(m.id for m in self.index.morphisms if m.id not in idents)

    def transport(self, arrow: str, item: str) -> str:
        """``u_*`` applied to an object or morphism; identity arrows act trivially."""
        if arrow in self.index.identity_set:
            return item
        return self.functors[arrow](item)


def validate_diagram(d: CategoryDiagram) -> None:
    index = d.index
    for obj in index.objects:
        if obj not in d.categories:
            raise InputError(f"index object {obj!r} has no category")
    for arrow in d.arrows:
        functor = d.functors.get(arrow)
        if functor is None:
            raise InputError(f"index arrow {arrow!r} has no functor")
        src, tgt = index.source(arrow), index.target(arrow)
        if functor.source is not d.categories[src] or functor.target is not d.categories[tgt]:
            raise InputError(f"functor of {arrow!r} does not match the categories at its ends")
        if not validate_functor(functor).ok:
            raise InputError(f"functor of {arrow!r} is not a functor")
    for (second, first), composite in index.composition.items():
        if composite in index.identity_set:
            continue
        if first in index.identity_set or second in index.identity_set:
            continue
        expected = d.functors[composite]
        for obj in expected.source.objects:
            if d.transport(second, d.transport(first, obj)) != expected(obj):
                raise InputError(f"diagram is not strict at {second}∘{first}")
        for m in expected.source.morphisms:
            if d.transport(second, d.transport(first, m.id)) != expected(m.id):
                raise InputError(f"diagram is not strict at {second}∘{first}")


def projective_2_limit(d: CategoryDiagram, name: str = "2lim") -> LimitCategory:
    """Objects ``(y_a ..., y_u ...)`` with the cocycle condition; morphisms are
    families ``f_a`` with ``f_b ∘ y_u = y'_u ∘ u_*(f_a)``.

    Labels list the vertex objects in index order followed by the coherence
    isomorphisms in the order of :attr:`CategoryDiagram.arrows`.
    """
    validate_diagram(d)
    index = d.index
    vertices = index.objects
    arrows = d.arrows
    position = {obj: k for k, obj in enumerate(vertices)}
    arrow_position = {arrow: k for k, arrow in enumerate(arrows)}
    ends = [(position[index.source(u)], position[index.target(u)]) for u in arrows]
    cocycles = [
        (second, first, composite)
        for (second, first), composite in index.composition.items()
        if first in arrow_position and second in arrow_position
    ]

    def coherence(ys: tuple[str, ...], yus: tuple[str, ...], arrow: str) -> str:
        if arrow in arrow_position:
            return yus[arrow_position[arrow]]
        return d.categories[index.target(arrow)].identities[ys[position[index.target(arrow)]]]

    labels: list[tuple[str, ...]] = []
    for ys in itertools.product(*(d.categories[a].objects for a in vertices)):
        options = []
        for u, (a, b) in zip(arrows, ends):
            options.append(isomorphisms_between(d.categories[vertices[b]], d.transport(u, ys[a]), ys[b]))
        for yus in itertools.product(*options):
            ok = True
            for second, first, composite in cocycles:
                target = d.categories[index.target(second)]
                lhs = coherence(ys, yus, composite)
                rhs = target.composition[(yus[arrow_position[second]], d.transport(second, yus[arrow_position[first]]))]
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                labels.append(tuple(ys) + tuple(yus))
    count = len(vertices)

    def homs(i: int, j: int) -> Iterator[Components]:
        source, target = labels[i], labels[j]
        homsets = [
            d.categories[a].homset(source[k], target[k]) for k, a in enumerate(vertices)
        ]
        for family in itertools.product(*homsets):
            if all(
                d.categories[vertices[b]].composition[(family[b], source[count + k])]
                == d.categories[vertices[b]].composition[(target[count + k], d.transport(arrows[k], family[a]))]
                for k, (a, b) in enumerate(ends)
            ):
                yield tuple(family)

    def identity(i: int) -> Components:
        return tuple(d.categories[a].identities[labels[i][k]] for k, a in enumerate(vertices))

    result = _tabulate(labels, homs, identity, [d.categories[a] for a in vertices], "y", name)
    logger.debug("2-limit %r: %d objects", name, len(labels))
    return result


def limit_projection(limit: LimitCategory, d: CategoryDiagram, vertex: str) -> FinFunctor:
    """The projection ``2lim -> C_vertex``."""
    k = d.index.objects.index(vertex)
    category = limit.category
    return FinFunctor(
        category,
        d.categories[vertex],
        {obj: label[k] for obj, label in zip(category.objects, limit.labels)},
        {m.id: limit.components[m.id][k] for m in category.morphisms},
    )


def single_vertex_diagram(c: FinCategory) -> CategoryDiagram:
    index = poset_category(["0"], lambda a, b: True, name="[0]")
    return CategoryDiagram(index, {"0": c}, {})


def cospan_diagram(first: FinFunctor, second: FinFunctor) -> CategoryDiagram:
    """The index ``a -> b <- c`` carrying ``first`` and ``second``."""
    if first.target is not second.target:
        raise InputError("functors of a cospan must share their target")
    index = poset_category(["a", "b", "c"], lambda x, y: x == y or y == "b", name="cospan")
    return CategoryDiagram(
        index,
        {"a": first.source, "b": first.target, "c": second.source},
        {"a<=b": first, "c<=b": second},
    )


def two_fiber_product(first: FinFunctor, second: FinFunctor, name: str = "2FP") -> LimitCategory:
    """Objects ``(a, b, c, phi: F(a) ≅ b, psi: G(c) ≅ b)``; morphisms ``(f, g, h)``
    with ``g∘phi = phi'∘F(f)`` and ``g∘psi = psi'∘G(h)``."""
    if first.target is not second.target:
        raise InputError("2-fiber product needs functors with a common target")
    left, middle, right = first.source, first.target, second.source
    comp = middle.composition
    labels: list[tuple[str, ...]] = []
    for a in left.objects:
        for c in right.objects:
            for b in middle.objects:
                for phi in isomorphisms_between(middle, first(a), b):
                    for psi in isomorphisms_between(middle, second(c), b):
                        labels.append((a, b, c, phi, psi))

    def homs(i: int, j: int) -> Iterator[Components]:
        a, b, c, phi, psi = labels[i]
        a2, b2, c2, phi2, psi2 = labels[j]
        for g in middle.homset(b, b2):
            left_side = [f for f in left.homset(a, a2) if comp[(g, phi)] == comp[(phi2, first(f))]]
            if not left_side:
                continue
            for h in right.homset(c, c2):
                if comp[(g, psi)] != comp[(psi2, second(h))]:
                    continue
                for f in left_side:
                    yield (f, g, h)

    def identity(i: int) -> Components:
        a, b, c, _, _ = labels[i]
        return (left.identities[a], middle.identities[b], right.identities[c])

    result = _tabulate(labels, homs, identity, [left, middle, right], "t", name)
    logger.debug("2-fiber product %r: %d objects", name, len(labels))
    return result


def pullback_category(first: FinFunctor, second: FinFunctor, name: str = "pullback") -> LimitCategory:
    """The ordinary pullback: pairs with ``F(a) = G(c)`` and ``F(f) = G(h)``."""
    if first.target is not second.target:
        raise InputError("pullback needs functors with a common target")
    left, right = first.source, second.source
    labels = [(a, c) for a in left.objects for c in right.objects if first(a) == second(c)]

    def homs(i: int, j: int) -> Iterator[Components]:
        (a, c), (a2, c2) = labels[i], labels[j]
        by_image: dict[str, list[str]] = {}
        for h in right.homset(c, c2):
            by_image.setdefault(second(h), []).append(h)
        for f in left.homset(a, a2):
            for h in by_image.get(first(f), ()):
                yield (f, h)

    def identity(i: int) -> Components:
        a, c = labels[i]
        return (left.identities[a], right.identities[c])

    return _tabulate(labels, homs, identity, [left, right], "p", name)


def homotopy_pullback_category(first: FinFunctor, second: FinFunctor, name: str = "hpb") -> LimitCategory:
    """Pullback of the factorizations ``C -> L(C) -> D <- L(E) <- E``, restricted to ``F(c) = K(e)``.

    Objects are ``(c, d, e, phi, phi)`` where ``phi: F(c) = K(e) ≅ d`` serves as
    both coherence isomorphisms, so labels have the shape of
    :func:`two_fiber_product` labels. Morphisms carry all three components
    ``(c -> c', d -> d', e -> e')`` with ``F(c -> c') = K(e -> e')`` and
    ``g∘phi = phi'∘F(f)``.
    """
    if first.target is not second.target:
        raise InputError("homotopy pullback needs functors with a common target")
    left, middle, right = first.source, first.target, second.source
    comp = middle.composition
    labels: list[tuple[str, ...]] = []
    for a in left.objects:
        for c in right.objects:
            if first(a) != second(c):
                continue
            for b in middle.objects:
                for phi in isomorphisms_between(middle, first(a), b):
                    labels.append((a, b, c, phi, phi))

    def homs(i: int, j: int) -> Iterator[Components]:
        a, b, c, phi, _ = labels[i]
        a2, b2, c2, phi2, _ = labels[j]
        by_image: dict[str, list[str]] = {}
        for h in right.homset(c, c2):
            by_image.setdefault(second(h), []).append(h)
        for f in left.homset(a, a2):
            for h in by_image.get(first(f), ()):
                for g in middle.homset(b, b2):
                    if comp[(g, phi)] == comp[(phi2, first(f))]:
                        yield (f, g, h)

    def identity(i: int) -> Components:
        a, b, c, _, _ = labels[i]
        return (left.identities[a], middle.identities[b], right.identities[c])

    return _tabulate(labels, homs, identity, [left, middle, right], "h", name)


def comparison_functor(model: LimitCategory, target: LimitCategory) -> FinFunctor:
    """``H``: the homotopy-pullback model into the 2-fiber product on the same cospan."""
    return _label_functor(model, target, lambda label: label, lambda components: components)


def _label_functor(
    source: LimitCategory,
    target: LimitCategory,
    on_label: Callable[[tuple[str, ...]], tuple[str, ...]],
    on_components: Callable[[Components], Components],
) -> FinFunctor:
    object_map: dict[str, str] = {}
    for obj, label in zip(source.category.objects, source.labels):
        image = target.object_of(on_label(label))
        if image is None:
            raise InvariantBreach(f"object {obj} has no image in {target.category.name!r}")
        object_map[obj] = image
    morphism_map: dict[str, str] = {}
    for m in source.category.morphisms:
        image = target.morphism_of(
            object_map[m.source], object_map[m.target], on_components(source.components[m.id])
        )
        if image is None:
            raise InvariantBreach(f"morphism {m.id} has no image in {target.category.name!r}")
        morphism_map[m.id] = image
    return FinFunctor(source.category, target.category, object_map, morphism_map)


def check_slice_initial(functor: FinFunctor, x: str) -> bool:
    """Whether the slice ``H/x`` (objects ``H(a) -> x``) has an initial object."""
    source, target = functor.source, functor.target
    target.require_object(x)
    comp = target.composition
    slice_objects = [
        (a, m) for a in source.objects for m in target.homset(functor(a), x)
    ]
    for a, m in slice_objects:
        initial = True
        for a2, m2 in slice_objects:
            maps = [u for u in source.homset(a, a2) if comp[(m2, functor(u))] == m]
            if len(maps) != 1:
                initial = False
                break
        if initial:
            return True
    return False


def full_on_morphisms(functor: FinFunctor) -> bool:
    return _fullness(functor)[0]


def surjective_on_objects(functor: FinFunctor) -> bool:
    return set(functor.object_map.values()) == set(functor.target.objects)


def isofibration_failure(functor: FinFunctor) -> tuple[str, str] | None:
    """An object ``x`` and an isomorphism out of ``F(x)`` with no lift, or None."""
    source, target = functor.source, functor.target
    target_isos: dict[str, list[str]] = {}
    for iso in target.inverses:
        target_isos.setdefault(target.source(iso), []).append(iso)
    lifted: dict[str, set[str]] = {}
    for iso in source.inverses:
        lifted.setdefault(source.source(iso), set()).add(functor(iso))
    for x in source.objects:
        images = lifted.get(x, set())
        for iso in sorted(target_isos.get(functor(x), ())):
            if iso not in images:
                return x, iso
    return None


def check_isofibration(functor: FinFunctor) -> bool:
    return isofibration_failure(functor) is None


@dataclass(frozen=True)
class EquivalenceVerdict:
    essentially_surjective: bool
    full: bool
    faithful: bool

    @property
    def equivalence(self) -> bool:
        return self.essentially_surjective and self.full and self.faithful

    def to_dict(self) -> dict[str, bool]:
        return {
            "essentially_surjective": self.essentially_surjective,
            "full": self.full,
            "faithful": self.faithful,
            "equivalence": self.equivalence,
        }


def _fullness(functor: FinFunctor) -> tuple[bool, bool]:
    source, target = functor.source, functor.target
    full = faithful = True
    for x in source.objects:
        for y in source.objects:
            images = [functor(m) for m in source.homset(x, y)]
            distinct = set(images)
            if len(distinct) != len(images):
                faithful = False
            if distinct != set(target.homset(functor(x), functor(y))):
                full = False
            if not (full or faithful):
                return full, faithful
    return full, faithful


def check_equivalence(functor: FinFunctor) -> EquivalenceVerdict:
    labels = functor.target.iso_class
    reached = {labels[image] for image in functor.object_map.values()}
    essentially_surjective = all(labels[obj] in reached for obj in functor.target.objects)
    full, faithful = _fullness(functor)
    return EquivalenceVerdict(essentially_surjective, full, faithful)


def is_category_isomorphism(functor: FinFunctor) -> bool:
    """A functor bijective on objects and on morphisms."""
    objects = functor.object_map
    morphisms = functor.morphism_map
    return (
        len(set(objects.values())) == len(objects) == len(functor.target.objects)
        and len(set(morphisms.values())) == len(morphisms) == len(functor.target.morphisms)
    )


def _wald(s: CofStructure | WaldStructure) -> tuple[CofStructure, WaldStructure]:
    if isinstance(s, WaldStructure):
        return s.cof, s
    return s, WaldStructure(s)


def level_category(s: CofStructure | WaldStructure, m: int, variant: str) -> DiagramCategory:
    """``iS_m``, ``S_m`` or ``wS_m`` on one filled staircase per cofibration chain."""
    cof, wald = _wald(s)
    if variant == "iso-groupoid":
        return build_wSn_category(WaldStructure(cof), m)
    if variant == "S-category":
        return build_Sn_category(cof, m)
    if variant == "wS-category":
        return build_wSn_category(wald, m)
    raise InputError(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")


def check_mu_equivalence(s: CofStructure, n: int) -> EquivalenceVerdict:
    """``mu_n: iS_n -> M_n`` checked exhaustively."""
    if n < 1:
        raise InputError("level must be at least 1")
    source = build_wSn_category(WaldStructure(s), n)
    target = chain_category(s, n, lambda m: m in s.base.inverses)
    return check_equivalence(mu_functor(source, target, n))


def restriction_isofibrations(
    s: CofStructure | WaldStructure, n: int, variant: str = "S-category"
) -> dict[tuple[int, tuple[int, int]], bool]:
    """Isofibrancy of ``S_m -> S_{0,j}`` for both ends of every left-family split up to level ``n``.

    Keys are ``(m, alpha)`` with ``alpha`` either ``(0, m)`` or ``(0, 1)``.
    """
    target = level_category(s, 1, variant)
    verdicts: dict[tuple[int, tuple[int, int]], bool] = {}
    for m in range(1, n + 1):
        source = level_category(s, m, variant)
        for alpha in sorted({(0, m), (0, 1)}):
            verdicts[(m, alpha)] = check_isofibration(restriction_functor(source, target, alpha, m))
    return verdicts


@dataclass
class CategoricalVerdict:
    n: int
    j: int
    variant: str
    verdict: EquivalenceVerdict
    source_size: int
    target_size: int
    isofibrations: bool | None = None
    notes: list[str] = field(default_factory=lambda: ["left_family_only"])

    @property
    def passed(self) -> bool:
        return self.verdict.equivalence

    def to_dict(self) -> dict[str, object]:
        return {
            "n": self.n,
            "j": self.j,
            "variant": self.variant,
            "verdict": self.verdict.to_dict(),
            "source_size": self.source_size,
            "target_size": self.target_size,
            "isofibrations": self.isofibrations,
            "notes": list(self.notes),
        }


def check_categorical_2segal(
    s: CofStructure | WaldStructure, n: int, j: int, variant: str = "iso-groupoid"
) -> CategoricalVerdict:
    """Compare ``S_n`` with ``S_{0..j}`` glued to ``S_{0,j..n}`` over ``S_{0,j}``.

    The iso-groupoid variant glues with a 2-fiber product; the other variants
    use the ordinary pullback after re-verifying that both restrictions to
    ``S_{0,j}`` are isofibrations.
    """
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")
    if n < 2 or not 0 < j < n:
        raise InputError(f"left-family check needs n >= 2 and 0 < j < n, got n={n}, j={j}")
    levels = {m: level_category(s, m, variant) for m in sorted({1, j, n - j + 1, n})}
    whole, front, back, edge = levels[n], levels[j], levels[n - j + 1], levels[1]
    to_front = restriction_functor(whole, front, tuple(range(j + 1)), n)
    to_back = restriction_functor(whole, back, (0, *range(j, n + 1)), n)
    front_edge = restriction_functor(front, edge, (0, j), j)
    back_edge = restriction_functor(back, edge, (0, 1), n - j + 1)
    isofibrations: bool | None = None
    if variant == "iso-groupoid":
        glued = two_fiber_product(front_edge, back_edge, name=f"iS_{n} split at {j}")

        def on_label(x: str) -> tuple[str, ...]:
            a = to_front(x)
            b = front_edge(a)
            return (a, b, to_back(x), edge.category.identities[b], edge.category.identities[b])

        def on_morphism(m: str) -> Components:
            f = to_front(m)
            return (f, front_edge(f), to_back(m))

    else:
        isofibrations = check_isofibration(front_edge) and check_isofibration(back_edge)
        if not isofibrations:
            raise InvariantBreach(f"restriction to S_{{0,{j}}} is not an isofibration ({variant})")
        glued = pullback_category(front_edge, back_edge, name=f"{variant} {n} split at {j}")

        def on_label(x: str) -> tuple[str, ...]:
            return (to_front(x), to_back(x))

        def on_morphism(m: str) -> Components:
            return (to_front(m), to_back(m))

    category = whole.category
    object_map: dict[str, str] = {}
    for obj in category.objects:
        image = glued.object_of(on_label(obj))
        if image is None:
            raise InvariantBreach(f"object {obj} has no image in the glued category")
        object_map[obj] = image
    morphism_map: dict[str, str] = {}
    for m in category.morphisms:
        image = glued.morphism_of(object_map[m.source], object_map[m.target], on_morphism(m.id))
        if image is None:
            raise InvariantBreach(f"morphism {m.id} has no image in the glued category")
        morphism_map[m.id] = image
    comparison = FinFunctor(category, glued.category, object_map, morphism_map)
    verdict = check_equivalence(comparison)
    logger.info(
        "categorical 2-Segal %s n=%d j=%d: %s", variant, n, j, "equivalence" if verdict.equivalence else "not an equivalence"
    )
    return CategoricalVerdict(
        n,
        j,
        variant,
        verdict,
        len(category.objects),
        len(glued.category.objects),
        isofibrations,
    )


def trivial_groupoid(name: str = "pt") -> FinCategory:
    return poset_category(["*"], lambda a, b: True, name=name)
