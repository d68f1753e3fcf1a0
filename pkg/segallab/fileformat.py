"""CategoryFile: the line form, its JSON tree form, and conversion to structures.

Line form::

    segal-lab-category v1
    NAME example
    MODE cof
    ZERO 0
    OBJECTS
      0 rank=0
      A rank=1
    MORPHISMS
      z_0_A 0 A
      z_A_0 A 0
    COMPOSE
      z_A_0 z_0_A = id_0
    COFIBRATIONS
      z_0_A

Blank lines and ``#`` comments are ignored. Every object gets the identity
``id_<object>`` unless an ``IDENTITY <object> <morphism>`` line names one;
composites with an identity and identities in the cofibration and weak
equivalence lists are implicit.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError, field_validator

from .cofcat import CofStructure, FibStructure, WaldStructure
from .constants import CATEGORY_FILE_HEADER, DEFAULT_MAX_MORPHISMS, DEFAULT_MAX_OBJECTS
from .errors import ParseError
from .fincat import FinCategory, ensure_within_caps

logger = logging.getLogger(__name__)

SECTIONS = ("OBJECTS", "MORPHISMS", "COMPOSE", "COFIBRATIONS", "FIBRATIONS", "WEQ")
DIRECTIVES = ("NAME", "MODE", "ZERO", "BOUND", "IDENTITY")


class ObjectEntry(BaseModel):
    id: str = Field(min_length=1)
    rank: int | None = None


class MorphismEntry(BaseModel):
    id: str = Field(min_length=1)
    source: str
    target: str


class ComposeEntry(BaseModel):
    second: str
    first: str
    result: str


class CategoryFile(BaseModel):
    header: str = CATEGORY_FILE_HEADER
    name: str = ""
    mode: Literal["cof", "fib"] = "cof"
    zero: str
    rank_bound: int | None = None
    objects: list[ObjectEntry]
    morphisms: list[MorphismEntry] = Field(default_factory=list)
    identities: dict[str, str] = Field(default_factory=dict)
    compose: list[ComposeEntry] = Field(default_factory=list)
    distinguished: list[str] = Field(default_factory=list)
    weq: list[str] | None = None

    @field_validator("header")
    @classmethod
    def known_header(cls, value: str) -> str:
        if value.strip() != CATEGORY_FILE_HEADER:
            raise ValueError(f"expected header {CATEGORY_FILE_HEADER!r}")
        return value.strip()


@dataclass
class LoadedInput:
    """A parsed CategoryFile and the structures built from it.

    In fibration mode ``cof`` is the dual structure on the opposite category.
    """

    file: CategoryFile
    category: FinCategory
    cof: CofStructure
    wald: WaldStructure | None
    fib: FibStructure | None
    digest: str


def digest_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _tokens(line: str) -> list[str]:
    return line.split("#", 1)[0].split()


def parse_category_text(text: str) -> CategoryFile:
    lines = text.splitlines()
    header_seen = False
    section: str | None = None
    data: dict[str, object] = {"objects": [], "morphisms": [], "compose": [], "distinguished": [], "identities": {}}
    seen_once: set[str] = set()
    list_section: str | None = None
    for number, raw in enumerate(lines, start=1):
        tokens = _tokens(raw)
        if not tokens:
            continue
        if not header_seen:
            if " ".join(tokens) != CATEGORY_FILE_HEADER:
                raise ParseError(f"expected header {CATEGORY_FILE_HEADER!r}", number, "header")
            header_seen = True
            continue
        keyword = tokens[0]
        if keyword in SECTIONS and len(tokens) == 1:
            if keyword in seen_once:
                raise ParseError(f"section {keyword} appears twice", number, keyword)
            seen_once.add(keyword)
            section = keyword
            if keyword in ("COFIBRATIONS", "FIBRATIONS"):
                if list_section is not None:
                    raise ParseError("both COFIBRATIONS and FIBRATIONS are given", number, keyword)
                list_section = keyword
            if keyword == "WEQ":
                data["weq"] = []
            continue
        if keyword in DIRECTIVES:
            _directive(data, keyword, tokens, number, seen_once)
            continue
        if section is None:
            raise ParseError(f"unexpected line outside any section: {raw.strip()!r}", number)
        _section_line(data, section, tokens, number)
    if not header_seen:
        raise ParseError("empty file", 1, "header")
    if "zero" not in data:
        raise ParseError("missing ZERO line", None, "ZERO")
    mode = data.get("mode", "cof")
    if list_section == "FIBRATIONS" and mode != "fib":
        raise ParseError("FIBRATIONS given without MODE fib", None, "FIBRATIONS")
    if list_section == "COFIBRATIONS" and mode == "fib":
        raise ParseError("COFIBRATIONS given with MODE fib", None, "COFIBRATIONS")
    try:
        cf = CategoryFile.model_validate(data)
    except ValidationError as exc:
        raise _from_validation(exc) from exc
    check_references(cf, _line_index(lines))
    return cf


def _directive(data: dict[str, object], keyword: str, tokens: list[str], number: int, seen: set[str]) -> None:
    if keyword == "IDENTITY":
        if len(tokens) != 3:
            raise ParseError("IDENTITY takes an object and a morphism", number, "IDENTITY")
        identities = data["identities"]
        assert isinstance(identities, dict)
        if tokens[1] in identities:
            raise ParseError(f"identity of {tokens[1]!r} given twice", number, "IDENTITY")
        identities[tokens[1]] = tokens[2]
        return
    if keyword in seen:
        raise ParseError(f"{keyword} appears twice", number, keyword)
    seen.add(keyword)
    if keyword == "NAME" and len(tokens) > 1:
        data["name"] = " ".join(tokens[1:])
        return
    if len(tokens) != 2:
        raise ParseError(f"{keyword} takes exactly one value", number, keyword)
    value = tokens[1]
    if keyword == "ZERO":
        data["zero"] = value
    elif keyword == "MODE":
        if value not in ("cof", "fib"):
            raise ParseError(f"MODE must be cof or fib, got {value!r}", number, "MODE")
        data["mode"] = value
    elif keyword == "BOUND":
        try:
            data["rank_bound"] = int(value)
        except ValueError:
            raise ParseError(f"BOUND must be an integer, got {value!r}", number, "BOUND") from None


def _section_line(data: dict[str, object], section: str, tokens: list[str], number: int) -> None:
    if section == "OBJECTS":
        entry: dict[str, object] = {"id": tokens[0]}
        for token in tokens[1:]:
            key, _, value = token.partition("=")
            if key != "rank" or not value:
                raise ParseError(f"unknown object attribute {token!r}", number, "rank")
            try:
                entry["rank"] = int(value)
            except ValueError:
                raise ParseError(f"rank must be an integer, got {value!r}", number, "rank") from None
        data["objects"].append(entry)  # type: ignore[union-attr]
    elif section == "MORPHISMS":
        if len(tokens) != 3:
            raise ParseError("a morphism line reads '<id> <source> <target>'", number, "MORPHISMS")
        data["morphisms"].append({"id": tokens[0], "source": tokens[1], "target": tokens[2]})  # type: ignore[union-attr]
    elif section == "COMPOSE":
        if len(tokens) != 4 or tokens[2] != "=":
            raise ParseError("a composition line reads '<g> <f> = <h>'", number, "COMPOSE")
        data["compose"].append({"second": tokens[0], "first": tokens[1], "result": tokens[3]})  # type: ignore[union-attr]
    elif section in ("COFIBRATIONS", "FIBRATIONS"):
        data["distinguished"].extend(tokens)  # type: ignore[union-attr]
    elif section == "WEQ":
        data["weq"].extend(tokens)  # type: ignore[union-attr]


def _line_index(lines: list[str]) -> dict[str, int]:
    """First line on which each token appears, for diagnostics."""
    index: dict[str, int] = {}
    for number, raw in enumerate(lines, start=1):
        for token in _tokens(raw):
            index.setdefault(token, number)
    return index


def _from_validation(exc: ValidationError) -> ParseError:
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error["loc"])
    return ParseError(error["msg"], None, location or None)


def parse_category_json(text: str) -> CategoryFile:
    try:
        cf = CategoryFile.model_validate_json(text)
    except ValidationError as exc:
        raise _from_validation(exc) from exc
    check_references(cf, {})
    return cf


def parse_category_file(text: str) -> CategoryFile:
    """Either form; a document starting with ``{`` is the JSON tree form."""
    if text.lstrip().startswith("{"):
        return parse_category_json(text)
    return parse_category_text(text)


def check_references(cf: CategoryFile, lines: dict[str, int]) -> None:
    """Every id mentioned must be declared."""

    def fail(message: str, token: str, where: str) -> None:
        raise ParseError(message, lines.get(token), where)

    objects: set[str] = set()
    for entry in cf.objects:
        if entry.id in objects:
            fail(f"object {entry.id!r} declared twice", entry.id, "OBJECTS")
        objects.add(entry.id)
    ranked = [entry.rank is not None for entry in cf.objects]
    if any(ranked) and not all(ranked):
        missing = next(entry.id for entry in cf.objects if entry.rank is None)
        fail(f"object {missing!r} has no rank while others do", missing, "rank")
    if cf.zero not in objects:
        fail(f"zero object {cf.zero!r} is not declared", cf.zero, "ZERO")
    morphisms: set[str] = set()
    for entry in cf.morphisms:
        if entry.id in morphisms:
            fail(f"morphism {entry.id!r} declared twice", entry.id, "MORPHISMS")
        morphisms.add(entry.id)
        for end in (entry.source, entry.target):
            if end not in objects:
                fail(f"morphism {entry.id!r} mentions undeclared object {end!r}", entry.id, "MORPHISMS")
    for obj, ident in cf.identities.items():
        if obj not in objects:
            fail(f"identity given for undeclared object {obj!r}", obj, "IDENTITY")
        if ident not in morphisms:
            fail(f"identity {ident!r} is not a declared morphism", ident, "IDENTITY")
    known = morphisms | {f"id_{obj}" for obj in objects if obj not in cf.identities}
    for entry in cf.compose:
        for token in (entry.second, entry.first, entry.result):
            if token not in known:
                fail(f"composition mentions undeclared morphism {token!r}", token, "COMPOSE")
    for token in cf.distinguished:
        if token not in known:
            fail(f"undeclared morphism {token!r} in the distinguished class", token, "FIBRATIONS" if cf.mode == "fib" else "COFIBRATIONS")
    for token in cf.weq or ():
        if token not in known:
            fail(f"undeclared morphism {token!r} in WEQ", token, "WEQ")


def to_category(cf: CategoryFile) -> FinCategory:
    """The category with implicit identities and identity composites filled in."""
    morphisms = [(m.id, m.source, m.target) for m in cf.morphisms]
    declared = {m.id for m in cf.morphisms}
    identities: dict[str, str] = {}
    for entry in cf.objects:
        ident = cf.identities.get(entry.id, f"id_{entry.id}")
        identities[entry.id] = ident
        if ident not in declared:
            morphisms.append((ident, entry.id, entry.id))
            declared.add(ident)
    endpoints = {m[0]: (m[1], m[2]) for m in morphisms}
    composition: dict[tuple[str, str], str] = {}
    for morphism_id, (src, tgt) in endpoints.items():
        composition[(identities[tgt], morphism_id)] = morphism_id
        composition[(morphism_id, identities[src])] = morphism_id
    for entry in cf.compose:
        key = (entry.second, entry.first)
        existing = composition.get(key)
        if existing is not None and existing != entry.result:
            raise ParseError(
                f"composite {entry.second}∘{entry.first} given as {entry.result!r} and {existing!r}",
                None,
                "COMPOSE",
            )
        composition[key] = entry.result
    return FinCategory.build(
        [entry.id for entry in cf.objects], morphisms, identities, composition, name=cf.name
    )


def build_input(
    cf: CategoryFile,
    digest: str,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_morphisms: int = DEFAULT_MAX_MORPHISMS,
    strict: bool = False,
) -> LoadedInput:
    """Structures of ``cf``; ``strict`` ignores declared ranks so every pushout is required."""
    category = ensure_within_caps(to_category(cf), max_objects, max_morphisms)
    ranks = None
    if not strict and cf.objects and cf.objects[0].rank is not None:
        ranks = {entry.id: entry.rank for entry in cf.objects}
    distinguished = frozenset(cf.distinguished) | frozenset(category.identities.values())
    fib: FibStructure | None = None
    if cf.mode == "fib":
        fib = FibStructure(category, cf.zero, distinguished, ranks=ranks, rank_bound=cf.rank_bound)
        cof = fib.as_cofibration_structure()
    else:
        cof = CofStructure(
            category, cf.zero, distinguished, ranks=ranks, rank_bound=cf.rank_bound, name=cf.name
        )
    wald = None
    if cf.weq is not None:
        wald = WaldStructure(cof, frozenset(cf.weq) | frozenset(category.identities.values()))
    logger.debug(
        "loaded %r: %d objects, %d morphisms, mode %s",
        cf.name,
        len(category.objects),
        len(category.morphisms),
        cf.mode,
    )
    return LoadedInput(cf, category, cof, wald, fib, digest)


def load_input(
    path: Path,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_morphisms: int = DEFAULT_MAX_MORPHISMS,
    strict: bool = False,
) -> LoadedInput:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return build_input(parse_category_file(text), digest_text(text), max_objects, max_morphisms, strict)


def category_file_from_structure(
    s: CofStructure, weq: frozenset[str] | None = None, name: str | None = None
) -> CategoryFile:
    base = s.base
    identity_set = base.identity_set
    objects = [
        ObjectEntry(id=obj, rank=s.ranks[obj] if s.ranks is not None else None)
        for obj in base.objects
    ]
    morphisms = [
        MorphismEntry(id=m.id, source=m.source, target=m.target)
        for m in base.morphisms
        if m.id not in identity_set or m.id != f"id_{m.source}"
    ]
    identities = {obj: ident for obj, ident in base.identities.items() if ident != f"id_{obj}"}
    compose = [
        ComposeEntry(second=second, first=first, result=result)
        for (second, first), result in sorted(base.composition.items())
        if second not in identity_set and first not in identity_set
    ]
    rank_bound = s.rank_bound if s.ranks is not None else None
    return CategoryFile(
        name=s.name if name is None else name,
        zero=s.zero,
        rank_bound=rank_bound,
        objects=objects,
        morphisms=morphisms,
        identities=identities,
        compose=compose,
        distinguished=sorted(s.cofibrations - identity_set),
        weq=sorted(weq - identity_set) if weq is not None else None,
    )


def write_category_text(cf: CategoryFile) -> str:
    lines = [CATEGORY_FILE_HEADER]
    if cf.name:
        lines.append(f"NAME {cf.name}")
    lines.append(f"MODE {cf.mode}")
    lines.append(f"ZERO {cf.zero}")
    if cf.rank_bound is not None:
        lines.append(f"BOUND {cf.rank_bound}")
    lines.append("OBJECTS")
    for entry in cf.objects:
        lines.append(f"  {entry.id} rank={entry.rank}" if entry.rank is not None else f"  {entry.id}")
    lines.append("MORPHISMS")
    lines.extend(f"  {m.id} {m.source} {m.target}" for m in cf.morphisms)
    for obj, ident in cf.identities.items():
        lines.append(f"IDENTITY {obj} {ident}")
    lines.append("COMPOSE")
    lines.extend(f"  {c.second} {c.first} = {c.result}" for c in cf.compose)
    lines.append("FIBRATIONS" if cf.mode == "fib" else "COFIBRATIONS")
    lines.extend(f"  {token}" for token in cf.distinguished)
    if cf.weq is not None:
        lines.append("WEQ")
        lines.extend(f"  {token}" for token in cf.weq)
    return "\n".join(lines) + "\n"


def write_category_json(cf: CategoryFile) -> str:
    return json.dumps(cf.model_dump(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"
