"""Bundled categories with cofibrations."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .cofcat import CofStructure, generate_subcategory
from .errors import InputError
from .fincat import FinCategory

FIXTURE_NAMES = ("z", "ps1", "ps2", "ps3", "twin2", "gap")
TWIN_SUFFIX = "b"


def zero_fixture() -> CofStructure:
    """The category with a single object and only its identity."""
    base = FinCategory.build(["0"], [("id_0", "0", "0")], {"0": "id_0"}, {("id_0", "id_0"): "id_0"}, name="Z")
    return CofStructure(base, "0", frozenset({"id_0"}), name="Z")


def based_map_id(source: int | str, target: int | str, images: tuple[int, ...]) -> str:
    return f"{source}-{target}:{''.join(str(image) for image in images)}"


def based_set_size(obj: str) -> int:
    """Number of non-basepoint elements of ``"0"``, ``"1"``, ... or of a second copy ``"1b"``."""
    digits = obj[: -len(TWIN_SUFFIX)] if obj.endswith(TWIN_SUFFIX) else obj
    if not digits.isdigit():
        raise InputError(f"{obj!r} is not a based-set object")
    return int(digits)


@lru_cache(maxsize=None)
def _based_sets(objects: tuple[str, ...], name: str) -> FinCategory:
    size = {obj: based_set_size(obj) for obj in objects}
    if any(value > 9 for value in size.values()):
        raise InputError("based-set fixtures hold at most 9 elements per object")
    images_of: dict[str, tuple[int, ...]] = {}
    morphisms: list[tuple[str, str, str]] = []
    for a in objects:
        for b in objects:
            for images in itertools.product(range(size[b] + 1), repeat=size[a]):
                morphism_id = based_map_id(a, b, images)
                images_of[morphism_id] = images
                morphisms.append((morphism_id, a, b))
    by_key = {(m[1], m[2], images_of[m[0]]): m[0] for m in morphisms}
    outgoing: dict[str, list[tuple[str, str]]] = {obj: [] for obj in objects}
    for morphism_id, src, tgt in morphisms:
        outgoing[src].append((morphism_id, tgt))
    composition: dict[tuple[str, str], str] = {}
    for first, src, middle in morphisms:
        first_images = images_of[first]
        for second, tgt in outgoing[middle]:
            second_images = images_of[second]
            # basepoint 0 is fixed, so image 0 stays 0
            images = tuple(second_images[x - 1] if x else 0 for x in first_images)
            composition[(second, first)] = by_key[(src, tgt, images)]
    identities = {obj: based_map_id(obj, obj, tuple(range(1, size[obj] + 1))) for obj in objects}
    return FinCategory.build(objects, morphisms, identities, composition, name=name)


def is_based_injection(morphism_id: str) -> bool:
    images = [int(char) for char in morphism_id.split(":", 1)[1]]
    nonzero = [image for image in images if image]
    return len(nonzero) == len(images) and len(set(nonzero)) == len(nonzero)


def _based_set_structure(base: FinCategory, bounded: bool) -> CofStructure:
    cofibrations = frozenset(m.id for m in base.morphisms if is_based_injection(m.id))
    ranks = {obj: based_set_size(obj) for obj in base.objects} if bounded else None
    return CofStructure(base, "0", cofibrations, ranks=ranks, name=base.name)


def ps_fixture(k: int, bounded: bool = True) -> CofStructure:
    """Skeletal based sets with at most ``k`` non-basepoint elements; cofibrations are injections."""
    if k < 0 or k > 9:
        raise InputError("based-set fixtures are available for 0 <= k <= 9")
    objects = tuple(str(a) for a in range(k + 1))
    return _based_set_structure(_based_sets(objects, f"PS({k})"), bounded)


def twin_fixture(k: int, bounded: bool = True) -> CofStructure:
    """``PS(k)`` with a second, isomorphic copy ``"<a>b"`` of every non-empty based set."""
    if k < 1 or k > 9:
        raise InputError("twin fixtures are available for 1 <= k <= 9")
    objects = ("0", *(name for a in range(1, k + 1) for name in (str(a), f"{a}{TWIN_SUFFIX}")))
    return _based_set_structure(_based_sets(objects, f"twin PS({k})"), bounded)


def gap_fixture() -> CofStructure:
    """A cofibration ``f: A >-> X`` with cokernel ``q: X ->> Y`` and ``g: B >-> Y``, no middle object.

    Every hom-set holds a zero map; apart from identities the only other maps
    are ``f``, ``q`` and ``g``, and ``q∘f`` is zero.
    """
    objects = ["0", "A", "B", "X", "Y"]
    special = {"f": ("A", "X"), "q": ("X", "Y"), "g": ("B", "Y")}

    def zero_map(src: str, tgt: str) -> str:
        return "id_0" if src == tgt == "0" else f"z_{src}_{tgt}"

    morphisms: list[tuple[str, str, str]] = []
    for src in objects:
        for tgt in objects:
            morphisms.append((zero_map(src, tgt), src, tgt))
            if src == tgt and src != "0":
                morphisms.append((f"id_{src}", src, src))
    morphisms.extend((name, src, tgt) for name, (src, tgt) in special.items())
    identities = {obj: f"id_{obj}" for obj in objects}
    endpoints = {m[0]: (m[1], m[2]) for m in morphisms}
    composition: dict[tuple[str, str], str] = {}
    for first, (src, middle) in endpoints.items():
        for second, (mid2, tgt) in endpoints.items():
            if mid2 != middle:
                continue
            if first == identities[src]:
                composition[(second, first)] = second
            elif second == identities[tgt]:
                composition[(second, first)] = first
            else:
                composition[(second, first)] = zero_map(src, tgt)
    base = FinCategory.build(objects, morphisms, identities, composition, name="gap")
    cofibrations = frozenset(
        {f"id_{obj}" for obj in objects} | {zero_map("0", obj) for obj in objects} | {"f", "g"}
    )
    ranks = {"0": 0, "A": 2, "B": 2, "X": 3, "Y": 2}
    return CofStructure(base, "0", cofibrations, ranks=ranks, rank_bound=1, name="gap")


def load_fixture(name: str) -> CofStructure:
    key = name.strip().lower()
    if key == "z":
        return zero_fixture()
    if key == "gap":
        return gap_fixture()
    if key.startswith("ps") and key[2:].isdigit():
        return ps_fixture(int(key[2:]))
    if key.startswith("twin") and key[4:].isdigit():
        return twin_fixture(int(key[4:]))
    raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")


def random_closure(rng: random.Random, ambient: CofStructure, max_objects: int = 12) -> CofStructure:
    """Closure of a random seed: a few ambient objects and a random half of the maps among them."""
    base = ambient.base
    others = [obj for obj in base.objects if obj != ambient.zero]
    count = rng.randint(0, min(len(others), max(0, max_objects - 1)))
    chosen = {ambient.zero, *rng.sample(others, count)}
    morphisms: set[str] = set()
    for obj in chosen:
        morphisms.add(ambient.zero_map_from(obj))
        morphisms.add(ambient.zero_map_to(obj))
    for morphism in base.morphisms:
        if morphism.source in chosen and morphism.target in chosen and rng.random() < 0.5:
            morphisms.add(morphism.id)
    return generate_subcategory(ambient, chosen, morphisms)
