"""Categories with cofibrations, fibrations and weak equivalences."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import BoundError, InputError
from .fincat import (
    CommutativeSquare,
    FinCategory,
    ValidationReport,
    find_pushout,
    is_pullback_square,
    is_pushout_square,
    subcategory,
    validate_category,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CofStructure:
    """A pointed finite category with a distinguished class of cofibrations.

    With ``ranks`` set the structure is in bounded mode: a pushout of
    ``i: A -> B`` along ``f: A -> C`` is only required when
    ``rank(C) + rank(B) - rank(A) <= rank_bound``. Cokernels are always
    required. A structure with an ``ambient`` takes its pushouts from it.
    """

    base: FinCategory
    zero: str
    cofibrations: frozenset[str]
    ranks: Mapping[str, int] | None = None
    rank_bound: int | None = None
    ambient: "CofStructure | None" = None
    name: str = ""

    def __post_init__(self) -> None:
        self.base.require_object(self.zero)
        if self.ranks is not None:
            missing = [obj for obj in self.base.objects if obj not in self.ranks]
            if missing:
                raise InputError(f"object {missing[0]!r} has no rank")

    @property
    def bounded(self) -> bool:
        return self.ranks is not None

    @cached_property
    def bound(self) -> int | None:
        if self.ranks is None:
            return None
        if self.rank_bound is not None:
            return self.rank_bound
        return max(self.ranks.values(), default=0)

    @property
    def mode(self) -> str:
        return "bounded" if self.bounded else "strict"

    @property
    def root(self) -> "CofStructure":
        return self.ambient.root if self.ambient is not None else self

    def is_cofibration(self, morphism_id: str) -> bool:
        return morphism_id in self.cofibrations

    def zero_map_from(self, obj: str) -> str:
        homs = self.base.homset(self.zero, obj)
        if len(homs) != 1:
            raise InputError(f"no unique morphism from zero to {obj!r}")
        return homs[0]

    def zero_map_to(self, obj: str) -> str:
        homs = self.base.homset(obj, self.zero)
        if len(homs) != 1:
            raise InputError(f"no unique morphism from {obj!r} to zero")
        return homs[0]

    def pushout_required(self, cofibration: str, along: str) -> bool:
        if self.ranks is None:
            return True
        base = self.base
        a, b = base.source(cofibration), base.target(cofibration)
        c = base.target(along)
        if c == self.zero:
            return True
        return self.ranks[c] + self.ranks[b] - self.ranks[a] <= self.bound

    def pushout(self, cofibration: str, along: str) -> CommutativeSquare | None:
        """The chosen pushout of ``cofibration`` along ``along``, if it lies in this structure."""
        if self.ambient is None:
            return find_pushout(self.base, cofibration, along)
        square = self.root.pushout(cofibration, along)
        if square is None:
            return None
        mor = self.base.mor
        if square.apex not in self.base.identities or square.right not in mor or square.bottom not in mor:
            return None
        return square

    def require_pushout(self, cofibration: str, along: str) -> CommutativeSquare:
        square = self.pushout(cofibration, along)
        if square is None:
            raise BoundError(
                f"pushout of {cofibration!r} along {along!r} is not available in {self.name or 'the category'}"
            )
        return square

    def cokernel(self, cofibration: str) -> tuple[str, str] | None:
        """Cokernel object and quotient map ``B -> B/A``, or None when unavailable."""
        if cofibration not in self.cofibrations:
            raise InputError(f"{cofibration!r} is not a cofibration")
        square = self.pushout(cofibration, self.zero_map_to(self.base.source(cofibration)))
        if square is None:
            return None
        return square.apex, square.right

    def require_cokernel(self, cofibration: str) -> tuple[str, str]:
        result = self.cokernel(cofibration)
        if result is None:
            raise BoundError(f"cokernel of {cofibration!r} is not available")
        return result

    def cofibrations_between(self, source: str, target: str) -> list[str]:
        return [m for m in self.base.homset(source, target) if m in self.cofibrations]


@dataclass(frozen=True, eq=False)
class WaldStructure:
    cof: CofStructure
    weq: frozenset[str] | None = None

    def __post_init__(self) -> None:
        if self.weq is None:
            object.__setattr__(self, "weq", frozenset(self.cof.base.inverses))

    @property
    def base(self) -> FinCategory:
        return self.cof.base

    def is_weq(self, morphism_id: str) -> bool:
        return morphism_id in self.weq


@dataclass(frozen=True, eq=False)
class FibStructure:
    base: FinCategory
    zero: str
    fibrations: frozenset[str]
    ranks: Mapping[str, int] | None = None
    rank_bound: int | None = None

    def as_cofibration_structure(self) -> CofStructure:
        return CofStructure(
            self.base.op,
            self.zero,
            self.fibrations,
            ranks=self.ranks,
            rank_bound=self.rank_bound,
            name=f"{self.base.name}^op" if self.base.name else "",
        )


def _mode_notes(report: ValidationReport, s: CofStructure) -> None:
    report.mode = s.mode
    report.bound = s.bound
    report.notes.append("bounded_mode_note" if s.bounded else "strict_mode_note")


def validate_cof(s: CofStructure) -> ValidationReport:
    report = validate_category(s.base)
    _mode_notes(report, s)
    if not report.ok:
        return report
    base = s.base
    for obj in base.objects:
        out_count = len(base.homset(s.zero, obj))
        if out_count != 1:
            report.add("zero_not_initial", zero=s.zero, object=obj, count=out_count)
        in_count = len(base.homset(obj, s.zero))
        if in_count != 1:
            report.add("zero_not_terminal", zero=s.zero, object=obj, count=in_count)
    if not report.ok:
        return report
    for morphism_id in sorted(s.cofibrations):
        if morphism_id not in base.mor:
            report.add("unknown_cofibration", morphism=morphism_id)
    cofs = sorted(m for m in s.cofibrations if m in base.mor)
    for obj in base.objects:
        zero_map = s.zero_map_from(obj)
        if zero_map not in s.cofibrations:
            report.add("zero_map_not_cofibration", morphism=zero_map)
    for morphism_id in sorted(base.inverses):
        if morphism_id not in s.cofibrations:
            report.add("iso_not_cofibration", morphism=morphism_id)
    comp = base.composition
    for first in cofs:
        for second in base.out_of[base.mor[first].target]:
            if second in s.cofibrations and comp[(second, first)] not in s.cofibrations:
                report.add("cofibrations_not_closed", first=first, second=second)
    for cofibration in cofs:
        for along in base.out_of[base.mor[cofibration].source]:
            if not s.pushout_required(cofibration, along):
                continue
            square = s.pushout(cofibration, along)
            if square is None:
                report.add("pushout_escapes_category", cofibration=cofibration, along=along)
            elif square.bottom not in s.cofibrations:
                report.add(
                    "pushout_leg_not_cofibration",
                    cofibration=cofibration,
                    along=along,
                    leg=square.bottom,
                )
    logger.info(
        "validated %s structure %r: %d violations", s.mode, s.name, len(report.violations)
    )
    return report


def validate_fib(s: FibStructure) -> ValidationReport:
    return validate_cof(s.as_cofibration_structure())


def _glueing_violations(w: WaldStructure, report: ValidationReport) -> None:
    cof, base = w.cof, w.base
    comp = base.composition
    spans: list[tuple[str, str, CommutativeSquare]] = []
    for cofibration in sorted(cof.cofibrations):
        for along in base.out_of[base.mor[cofibration].source]:
            if not cof.pushout_required(cofibration, along):
                continue
            square = cof.pushout(cofibration, along)
            if square is not None:
                spans.append((cofibration, along, square))
    weq = w.weq
    for i, f, square in spans:
        a, b, c = square.corner, square.top_right, square.bottom_left
        for i2, f2, square2 in spans:
            for wa in base.homset(a, square2.corner):
                if wa not in weq:
                    continue
                i_a = comp[(i2, wa)]
                f_a = comp[(f2, wa)]
                for wb in base.homset(b, square2.top_right):
                    if wb not in weq or comp[(wb, i)] != i_a:
                        continue
                    for wc in base.homset(c, square2.bottom_left):
                        if wc not in weq or comp[(wc, f)] != f_a:
                            continue
                        right = comp[(square2.right, wb)]
                        bottom = comp[(square2.bottom, wc)]
                        induced = next(
                            (
                                m
                                for m in base.homset(square.apex, square2.apex)
                                if comp[(m, square.right)] == right and comp[(m, square.bottom)] == bottom
                            ),
                            None,
                        )
                        if induced is not None and induced not in weq:
                            report.add(
                                "glueing_fails",
                                induced=induced,
                                source=f"{i}/{f}",
                                target=f"{i2}/{f2}",
                            )


def validate_wald(w: WaldStructure, check_glueing: bool = True) -> ValidationReport:
    report = validate_cof(w.cof)
    if not report.ok:
        return report
    base = w.base
    for morphism_id in sorted(w.weq):
        if morphism_id not in base.mor:
            report.add("unknown_weq", morphism=morphism_id)
    for morphism_id in sorted(base.inverses):
        if morphism_id not in w.weq:
            report.add("iso_not_weq", morphism=morphism_id)
    comp = base.composition
    for first in sorted(m for m in w.weq if m in base.mor):
        for second in base.out_of[base.mor[first].target]:
            if second in w.weq and comp[(second, first)] not in w.weq:
                report.add("weq_not_closed", first=first, second=second)
    if check_glueing and report.ok:
        _glueing_violations(w, report)
    return report


def seed_from_objects(ambient: CofStructure, objects: Iterable[str]) -> tuple[set[str], set[str]]:
    """Seed made of the given objects, the zero object and every ambient morphism among them."""
    chosen = set(objects) | {ambient.zero}
    for obj in chosen:
        ambient.base.require_object(obj)
    morphisms = {
        m.id for m in ambient.base.morphisms if m.source in chosen and m.target in chosen
    }
    return chosen, morphisms


def generate_subcategory(
    ambient: CofStructure, seed_objects: Iterable[str], seed_morphisms: Iterable[str] = ()
) -> CofStructure:
    """The least subcategory with cofibrations containing the seed.

    Iterates: add composites, add the chosen pushouts of cofibrations in the
    current stage along its morphisms, add zero maps of new objects; stops at
    the first stage that adds nothing.
    """
    base = ambient.base
    objects = set(seed_objects)
    morphisms = set(seed_morphisms)
    if ambient.zero not in objects:
        raise InputError("seed does not contain the zero object")
    for obj in objects:
        base.require_object(obj)
    for morphism_id in morphisms:
        record = base.require_morphism(morphism_id)
        if record.source not in objects or record.target not in objects:
            raise InputError(f"seed morphism {morphism_id!r} leaves the seed objects")
    for obj in objects:
        if ambient.zero_map_from(obj) not in morphisms or ambient.zero_map_to(obj) not in morphisms:
            raise InputError(f"seed lacks the zero maps of {obj!r}")
    morphisms |= {base.identities[obj] for obj in objects}
    comp = base.composition
    stage = 0
    while True:
        stage += 1
        new_objects: set[str] = set()
        new_morphisms: set[str] = set()
        by_source: dict[str, list[str]] = {}
        for morphism_id in morphisms:
            by_source.setdefault(base.mor[morphism_id].source, []).append(morphism_id)
        for first in morphisms:
            for second in by_source.get(base.mor[first].target, ()):
                composite = comp[(second, first)]
                if composite not in morphisms:
                    new_morphisms.add(composite)
        for cofibration in sorted(morphisms & ambient.cofibrations):
            for along in sorted(by_source.get(base.mor[cofibration].source, ())):
                if not ambient.pushout_required(cofibration, along):
                    continue
                square = ambient.pushout(cofibration, along)
                if square is None:
                    logger.debug("pushout of %s along %s unavailable", cofibration, along)
                    continue
                if square.apex not in objects:
                    new_objects.add(square.apex)
                for leg in (square.right, square.bottom):
                    if leg not in morphisms:
                        new_morphisms.add(leg)
        for obj in new_objects:
            new_morphisms.update(
                (base.identities[obj], ambient.zero_map_from(obj), ambient.zero_map_to(obj))
            )
        new_morphisms -= morphisms
        if not new_objects and not new_morphisms:
            break
        objects |= new_objects
        morphisms |= new_morphisms
        logger.debug(
            "closure stage %d: %d objects, %d morphisms", stage, len(objects), len(morphisms)
        )
    return _substructure(ambient, objects, morphisms)


def _substructure(ambient: CofStructure, objects: set[str], morphisms: set[str]) -> CofStructure:
    root = ambient.root
    sub = subcategory(root.base, objects, morphisms, name=f"<{ambient.name}>" if ambient.name else "")
    ranks = None
    if root.ranks is not None:
        ranks = {obj: root.ranks[obj] for obj in sub.objects}
    return CofStructure(
        base=sub,
        zero=root.zero,
        cofibrations=frozenset(m for m in sub.mor if m in root.cofibrations),
        ranks=ranks,
        rank_bound=root.bound,
        ambient=root,
        name=sub.name,
    )


def _require_substructure(ambient: CofStructure, sub: CofStructure) -> None:
    root = ambient.root
    if sub.zero != root.zero:
        raise InputError("subcategory has a different zero object")
    for obj in sub.base.objects:
        if obj not in root.base.identities:
            raise InputError(f"object {obj!r} is not in the ambient category")
    for morphism in sub.base.morphisms:
        record = root.base.mor.get(morphism.id)
        if record is None or record != morphism:
            raise InputError(f"morphism {morphism.id!r} is not a morphism of the ambient category")
    for morphism_id in sub.cofibrations:
        if morphism_id not in root.cofibrations:
            raise InputError(f"{morphism_id!r} is not an ambient cofibration")


def check_intersection_closed(ambient: CofStructure, subs: Sequence[CofStructure]) -> bool:
    """Whether the intersection of the given subcategories with cofibrations is one again."""
    if not subs:
        raise InputError("no subcategories to intersect")
    for sub in subs:
        _require_substructure(ambient, sub)
    objects = set(subs[0].base.objects)
    morphisms = set(subs[0].base.mor)
    for sub in subs[1:]:
        objects &= set(sub.base.objects)
        morphisms &= set(sub.base.mor)
    intersection = _substructure(ambient, objects, morphisms)
    return validate_cof(intersection).ok


@dataclass(frozen=True)
class ExtensionConfiguration:
    """A cofibration ``A >-> X``, its chosen cokernel ``X ->> Y`` and a cofibration ``B >-> Y``."""

    cofibration: str
    cokernel: str
    quotient: str
    target_cofibration: str

    def to_dict(self) -> dict[str, str]:
        return {
            "cofibration": self.cofibration,
            "cokernel": self.cokernel,
            "quotient": self.quotient,
            "target_cofibration": self.target_cofibration,
        }


@dataclass(frozen=True)
class ExtensionWitness:
    configuration: ExtensionConfiguration
    middle: str
    first: str
    second: str
    projection: str

    def to_dict(self) -> dict[str, object]:
        return {
            "configuration": self.configuration.to_dict(),
            "middle": self.middle,
            "first": self.first,
            "second": self.second,
            "projection": self.projection,
        }


@dataclass
class ExtensionReport:
    passed: bool
    mode: str
    bound: int | None
    checked: int = 0
    witnesses: list[ExtensionWitness] = field(default_factory=list)
    failures: list[ExtensionConfiguration] = field(default_factory=list)
    notes: list[str] = field(default_factory=lambda: ["left_square_pushout_only"])

    @property
    def first_failure(self) -> ExtensionConfiguration | None:
        return self.failures[0] if self.failures else None


def _extension_witness(
    s: CofStructure, config: ExtensionConfiguration
) -> ExtensionWitness | None:
    base = s.base
    comp = base.composition
    a_obj = base.source(config.cofibration)
    x_obj = base.target(config.cofibration)
    b_obj = base.source(config.target_cofibration)
    zero_a = s.zero_map_to(a_obj)
    zero_b = s.zero_map_from(b_obj)
    for middle in sorted(base.objects):
        for second in s.cofibrations_between(middle, x_obj):
            quotient_second = comp[(config.quotient, second)]
            for first in s.cofibrations_between(a_obj, middle):
                if comp[(second, first)] != config.cofibration:
                    continue
                for projection in base.homset(middle, b_obj):
                    if comp[(config.target_cofibration, projection)] != quotient_second:
                        continue
                    if not is_pushout_square(base, first, zero_a, projection, zero_b):
                        continue
                    if not is_pushout_square(
                        base, second, projection, config.quotient, config.target_cofibration
                    ):
                        continue
                    if not is_pullback_square(
                        base, second, projection, config.quotient, config.target_cofibration
                    ):
                        continue
                    return ExtensionWitness(config, middle, first, second, projection)
    return None


def check_extension_property(s: CofStructure, stop_at_first: bool = False) -> ExtensionReport:
    """Searches, for every configuration, a factorization ``A >-> C >-> X`` with ``C ->> B``.

    The left square ``(A -> C, A -> 0, C -> B, 0 -> B)`` must be a pushout and
    the right square ``(C -> X, C -> B, X -> Y, B -> Y)`` both a pushout and a
    pullback.
    """
    report = ExtensionReport(passed=True, mode=s.mode, bound=s.bound)
    base = s.base
    for cofibration in sorted(m for m in s.cofibrations if m in base.mor):
        cokernel = s.cokernel(cofibration)
        if cokernel is None:
            logger.debug("cokernel of %s unavailable, configuration skipped", cofibration)
            continue
        y_obj, quotient = cokernel
        for target_cofibration in sorted(s.cofibrations):
            if target_cofibration not in base.mor or base.target(target_cofibration) != y_obj:
                continue
            config = ExtensionConfiguration(cofibration, y_obj, quotient, target_cofibration)
            report.checked += 1
            witness = _extension_witness(s, config)
            if witness is None:
                report.passed = False
                report.failures.append(config)
                if stop_at_first:
                    return report
            else:
                report.witnesses.append(witness)
    logger.info(
        "extension property: %d configurations, %d failures", report.checked, len(report.failures)
    )
    return report
