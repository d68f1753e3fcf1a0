"""Batch commands. Each ``cmd_*`` returns a :class:`Report` and an exit code.

Exit codes: 0 every check passed, 1 a check failed (the report carries the
witness), 2 the input or the invocation was unusable.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Callable, Sequence

from pydantic import ValidationError

from .cofcat import (
    check_extension_property,
    generate_subcategory,
    seed_from_objects,
    validate_cof,
    validate_wald,
)
from .config import LabConfig
from .constants import EXIT_FAILED, EXIT_OK, EXIT_USAGE
from .errors import BoundError, InputError, InvariantBreach
from .fileformat import (
    LoadedInput,
    build_input,
    category_file_from_structure,
    digest_text,
    load_input,
    write_category_json,
    write_category_text,
)
from .fincat import ValidationReport, validate_category
from .fixtures import load_fixture
from .gpd2lim import check_categorical_2segal
from .polygon import catalan, enumerate_subdivisions, enumerate_triangulations, little_schroeder
from .report import Report, Section
from .sconstr import iso_s_dot
from .segal import (
    SearchConfig,
    VerdictTable,
    check_left,
    check_lower,
    check_right,
    check_upper,
    counterexample_search,
    exhaustive_verdict,
    reduced_verdict,
)

logger = logging.getLogger(__name__)

CHECK_MODES = ("left", "right", "all-subdivisions", "upper", "lower", "reduced")
CHECK_VARIANTS = ("iso-set", "groupoid", "category", "w-category")
CATEGORICAL_VARIANTS = {
    "groupoid": "iso-groupoid",
    "category": "S-category",
    "w-category": "wS-category",
}
FIXTURE_PREFIX = "fixture:"

Outcome = tuple[Report, int]


def _guarded(report: Report, body: Callable[[], int]) -> Outcome:
    """Runs ``body``; usage problems become an ``error`` section with exit code 2."""
    try:
        code = body()
    except ValidationError as exc:
        report.add_section(Section("error", False, {"error": str(exc.errors()[0]["msg"])}))
        return report, EXIT_USAGE
    except (InputError, BoundError) as exc:
        report.add_section(Section("error", False, {"error": str(exc)}))
        return report, EXIT_USAGE
    except InvariantBreach as exc:
        report.add_section(Section("invariant", False, {"error": str(exc)}))
        return report, EXIT_FAILED
    return report, code


def _exit(report: Report) -> int:
    return EXIT_OK if report.passed else EXIT_FAILED


def load_source(
    source: str | Path, config: LabConfig, strict: bool = False, require_category: bool = True
) -> LoadedInput:
    """A CategoryFile path, or ``fixture:<name>`` for a bundled structure.

    With ``require_category`` a file that fails the category axioms raises
    :class:`InputError` before anything is computed on it.
    """
    if isinstance(source, str) and source.startswith(FIXTURE_PREFIX):
        cf = category_file_from_structure(load_fixture(source[len(FIXTURE_PREFIX):]))
        text = write_category_text(cf)
        return build_input(cf, digest_text(text), config.max_objects, config.max_morphisms, strict)
    loaded = load_input(Path(source), config.max_objects, config.max_morphisms, strict)
    if require_category:
        category_report = validate_category(loaded.category)
        if not category_report.ok:
            shown = "; ".join(v.describe(config.language) for v in category_report.violations[:3])
            more = len(category_report.violations) - 3
            if more > 0:
                shown += f"; {more} more"
            raise InputError(f"{source}: not a category: {shown}")
    return loaded


def _violation_section(name: str, report: ValidationReport, language: str) -> Section:
    summary: dict[str, Any] = {"violations": len(report.violations)}
    for index, violation in enumerate(report.violations[:10], start=1):
        summary[f"violation {index}"] = violation.describe(language)
    return Section(name, report.ok, summary, report.to_dict())


def _mode_caveat(report: Report, loaded: LoadedInput) -> None:
    if loaded.cof.bounded:
        report.add_caveat("bounded_mode_note", bound=loaded.cof.bound)
    else:
        report.add_caveat("strict_mode_note")


def cmd_validate(
    source: str | Path,
    config: LabConfig | None = None,
    strict: bool = False,
) -> Outcome:
    config = config or LabConfig()
    report = Report("validate", flags={"strict": strict, "check_glueing": config.check_glueing})

    def body() -> int:
        loaded = load_source(source, config, strict, require_category=False)
        report.digest = loaded.digest
        category_report = validate_category(loaded.category)
        report.add_section(_violation_section("category", category_report, config.language))
        if category_report.ok:
            name = "fibrations" if loaded.fib is not None else "cofibrations"
            report.add_section(_violation_section(name, validate_cof(loaded.cof), config.language))
            if loaded.wald is not None:
                wald_report = validate_wald(loaded.wald, config.check_glueing)
                report.add_section(_violation_section("weak equivalences", wald_report, config.language))
        _mode_caveat(report, loaded)
        return _exit(report)

    return _guarded(report, body)


def _table_summary(table: VerdictTable, second: str = "j") -> dict[str, Any]:
    return {f"n={n} {second}={k}": verdict for (n, k), verdict in sorted(table.items())}


def _table_section(name: str, table: VerdictTable, report: Report, second: str = "j") -> Section:
    if any(verdict is None for verdict in table.values()):
        report.add_caveat("undefined_at_truncation")
    passed = all(verdict is not False for verdict in table.values())
    return Section(name, passed, _table_summary(table, second))


def cmd_check(
    source: str | Path,
    config: LabConfig | None = None,
    max_level: int | None = None,
    mode: str = "left",
    variant: str = "iso-set",
) -> Outcome:
    config = config or LabConfig()
    level = config.max_level if max_level is None else max_level
    report = Report(
        "check",
        flags={
            "max_level": level,
            "mode": mode,
            "variant": variant,
            "policy": config.enumeration_policy,
        },
    )

    def body() -> int:
        if mode not in CHECK_MODES:
            raise InputError(f"unknown mode {mode!r}; choose from {', '.join(CHECK_MODES)}")
        if variant not in CHECK_VARIANTS:
            raise InputError(f"unknown variant {variant!r}; choose from {', '.join(CHECK_VARIANTS)}")
        if level < 1:
            raise InputError("max level must be at least 1")
        loaded = load_source(source, config)
        report.digest = loaded.digest
        _mode_caveat(report, loaded)
        if variant == "iso-set":
            _check_iso_set(report, loaded, level, mode, config)
        else:
            _check_categorical(report, loaded, level, mode, CATEGORICAL_VARIANTS[variant])
        return _exit(report)

    return _guarded(report, body)


def _check_iso_set(report: Report, loaded: LoadedInput, level: int, mode: str, config: LabConfig) -> None:
    x = iso_s_dot(loaded.cof, level, config.enumeration_policy)
    report.add_section(Section("levels", None, {"sizes": list(x.sizes)}))
    if mode == "left":
        report.add_section(_table_section("left", check_left(x), report))
    elif mode == "right":
        report.add_section(_table_section("right", check_right(x), report))
    elif mode == "upper":
        report.add_section(_table_section("upper", check_upper(x), report, "i"))
    elif mode == "lower":
        report.add_section(_table_section("lower", check_lower(x), report, "i"))
    else:
        if mode == "reduced":
            summary = reduced_verdict(x)
        else:
            report.add_caveat("trivial_subdivision_note")
            summary = exhaustive_verdict(x, level)
        report.add_section(
            Section(
                mode,
                summary.passed,
                {"maps checked": summary.checked, "failures": len(summary.failures)},
                {"failures": [result.to_dict() for result in summary.failures]},
            )
        )


def _check_categorical(report: Report, loaded: LoadedInput, level: int, mode: str, variant: str) -> None:
    if mode != "left":
        raise InputError("categorical variants are checked for the left family only")
    report.add_caveat("left_family_only")
    structure = loaded.wald if loaded.wald is not None and variant == "wS-category" else loaded.cof
    summary: dict[str, Any] = {}
    details: list[dict[str, object]] = []
    for n in range(2, level + 1):
        for j in range(1, n):
            verdict = check_categorical_2segal(structure, n, j, variant)
            summary[f"n={n} j={j}"] = verdict.passed
            details.append(verdict.to_dict())
    report.add_section(
        Section(variant, all(summary.values()), summary, {"verdicts": details})
    )


def cmd_closure(
    source: str | Path,
    seed_objects: Sequence[str],
    config: LabConfig | None = None,
    emit: Path | None = None,
) -> Outcome:
    """Closure ``<D>`` of the seed objects; the CategoryFile of ``<D>`` goes to ``emit``."""
    config = config or LabConfig()
    report = Report("closure", flags={"seed_objects": sorted(seed_objects)})

    def body() -> int:
        loaded = load_source(source, config)
        report.digest = loaded.digest
        objects, morphisms = seed_from_objects(loaded.cof, seed_objects)
        closure = generate_subcategory(loaded.cof, objects, morphisms)
        text = write_category_text(category_file_from_structure(closure))
        if emit is not None:
            emit.write_text(text, encoding="utf-8")
        report.add_section(
            Section(
                "closure",
                None,
                {
                    "objects": list(closure.base.objects),
                    "morphisms": len(closure.base.morphisms),
                    "output digest": digest_text(text),
                },
                {"category_file": text},
            )
        )
        return EXIT_OK

    return _guarded(report, body)


def cmd_polygons(n: int, triangulations_only: bool = False) -> Outcome:
    report = Report("polygons", flags={"n": n, "triangulations_only": triangulations_only})

    def body() -> int:
        triangulations = enumerate_triangulations(n)
        summary: dict[str, Any] = {
            "triangulations": len(triangulations),
            "catalan": catalan(n - 1),
        }
        listed = triangulations
        passed = len(triangulations) == catalan(n - 1)
        if not triangulations_only:
            subdivisions = enumerate_subdivisions(n)
            summary["subdivisions"] = len(subdivisions)
            summary["little schroeder"] = little_schroeder(n - 1)
            passed = passed and len(subdivisions) == little_schroeder(n - 1)
            listed = subdivisions
        report.add_section(
            Section(f"P_{n}", passed, summary, {"members": [p.to_list() for p in listed]})
        )
        return _exit(report)

    return _guarded(report, body)


def cmd_search(config_path: Path, seed: int | None = None) -> Outcome:
    """``seed`` replaces the seed of the search configuration."""
    report = Report("search", flags={"config": config_path.name})

    def body() -> int:
        try:
            text = config_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {config_path}: {exc.strerror or exc}") from exc
        search = SearchConfig.model_validate_json(text)
        if seed is not None:
            search = SearchConfig.model_validate({**search.model_dump(), "seed": seed})
        report.flags.update(search.model_dump(exclude={"timeout_seconds"}))
        report.digest = digest_text(text)
        outcome = counterexample_search(search)
        if outcome.inconclusive:
            report.add_caveat("search_inconclusive", trials=len(outcome.structures))
        report.add_section(
            Section(
                "search",
                not outcome.counterexamples,
                {
                    "structures": len(outcome.structures),
                    "maps checked": outcome.maps_checked,
                    "counterexamples": len(outcome.counterexamples),
                    "inconclusive": outcome.inconclusive,
                },
                {
                    "structures": outcome.structures,
                    "counterexamples": [c.to_dict() for c in outcome.counterexamples],
                },
            )
        )
        return _exit(report)

    return _guarded(report, body)


def cmd_sufficiency(source: str | Path, config: LabConfig | None = None) -> Outcome:
    config = config or LabConfig()
    report = Report("sufficiency")

    def body() -> int:
        loaded = load_source(source, config)
        report.digest = loaded.digest
        _mode_caveat(report, loaded)
        result = check_extension_property(loaded.cof)
        for note in result.notes:
            report.add_caveat(note)
        summary: dict[str, Any] = {
            "configurations": result.checked,
            "witnesses": len(result.witnesses),
            "failures": len(result.failures),
        }
        failure = result.first_failure
        if failure is not None:
            summary["first failure"] = [
                failure.cofibration,
                failure.quotient,
                failure.target_cofibration,
            ]
        report.add_section(
            Section(
                "extension",
                result.passed,
                summary,
                {
                    "witnesses": [w.to_dict() for w in result.witnesses],
                    "failures": [c.to_dict() for c in result.failures],
                },
            )
        )
        return _exit(report)

    return _guarded(report, body)


def cmd_fixture(name: str, out: Path | None = None, json_form: bool = False) -> Outcome:
    """The bundled fixture ``name`` as a CategoryFile, written to ``out`` or kept in the report details."""
    report = Report("fixture", flags={"name": name, "json": json_form})

    def body() -> int:
        cf = category_file_from_structure(load_fixture(name))
        text = write_category_json(cf) if json_form else write_category_text(cf)
        if out is not None:
            out.write_text(text, encoding="utf-8")
        report.digest = digest_text(text)
        report.add_section(
            Section(
                "fixture",
                None,
                {"objects": len(cf.objects), "morphisms": len(cf.morphisms) + len(cf.objects) - len(cf.identities)},
                {} if out is not None else {"category_file": text},
            )
        )
        return EXIT_OK

    return _guarded(report, body)
