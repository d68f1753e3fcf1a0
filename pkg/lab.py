from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from segallab import CONFIG_FILE, LabConfig
from segallab.cli import (
    CHECK_MODES,
    CHECK_VARIANTS,
    cmd_check,
    cmd_closure,
    cmd_fixture,
    cmd_polygons,
    cmd_search,
    cmd_sufficiency,
    cmd_validate,
)
from segallab.config import ensure_seed
from segallab.constants import EXIT_USAGE
from segallab.fixtures import FIXTURE_NAMES
from segallab.messages import SUPPORTED_LANGUAGES, translate
from segallab.report import render_text, save_report


def parse_args(argv: list[str]) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Waldhausen S-construction and 2-Segal checks on finite categories with cofibrations.",
    )
    parser.add_argument(
        "--config",
        default=str(CONFIG_FILE),
        help="Path to the JSON configuration file.",
    )
    parser.add_argument(
        "--out",
        help="Write the machine-readable report to this path.",
    )
    parser.add_argument(
        "--seed",
        help="64-bit seed for randomized paths (default: from the configuration, 0).",
    )
    parser.add_argument(
        "--language",
        choices=SUPPORTED_LANGUAGES,
        help="Language of the human-readable report.",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Log progress to stderr.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Validate a category with cofibrations.")
    validate.add_argument("file", help="CategoryFile path or fixture:<name>.")
    validate.add_argument(
        "--strict",
        action="store_true",
        help="Ignore declared ranks and require every pushout.",
    )

    check = commands.add_parser("check", help="Run 2-Segal checks on the S-construction.")
    check.add_argument("file", help="CategoryFile path or fixture:<name>.")
    check.add_argument("--max-level", type=int, help="Truncation level N.")
    check.add_argument("--mode", choices=CHECK_MODES, default="left")
    check.add_argument("--variant", choices=CHECK_VARIANTS, default="iso-set")

    closure = commands.add_parser("closure", help="Generated subcategory of a set of objects.")
    closure.add_argument("file", help="CategoryFile path or fixture:<name>.")
    closure.add_argument("--seed-objects", nargs="*", default=[], help="Objects of the seed.")
    closure.add_argument("--emit", help="Write the CategoryFile of the closure to this path.")

    polygons = commands.add_parser("polygons", help="Enumerate polygonal subdivisions.")
    polygons.add_argument("--n", type=int, required=True, help="Polygon level; P_n has n + 1 vertices.")
    polygons.add_argument("--triangulations-only", action="store_true")

    search = commands.add_parser("search", help="Counterexample search for neither-classified maps.")
    search.add_argument("search_config", help="JSON search configuration.")

    sufficiency = commands.add_parser("sufficiency", help="Check the extension property.")
    sufficiency.add_argument("file", help="CategoryFile path or fixture:<name>.")

    fixture = commands.add_parser("fixture", help="Emit a bundled fixture as a CategoryFile.")
    fixture.add_argument("name", choices=FIXTURE_NAMES)
    fixture.add_argument("--json", action="store_true", help="Use the JSON tree form.")
    fixture.add_argument("--emit", help="Write the CategoryFile to this path.")
    return parser.parse_args(argv)


def run(argv: list[str]) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    config = LabConfig.load(Path(args.config))
    if args.language:
        config.language = args.language
    if args.seed is not None:
        seed = ensure_seed(args.seed, -1)
        if seed < 0:
            print(translate(config.language, "usage_error", error=f"invalid seed {args.seed!r}"), file=sys.stderr)
            return EXIT_USAGE
        config.seed = seed

    if args.command == "validate":
        report, code = cmd_validate(args.file, config, strict=args.strict)
    elif args.command == "check":
        report, code = cmd_check(args.file, config, args.max_level, args.mode, args.variant)
    elif args.command == "closure":
        emit = Path(args.emit) if args.emit else None
        report, code = cmd_closure(args.file, args.seed_objects, config, emit)
    elif args.command == "polygons":
        report, code = cmd_polygons(args.n, args.triangulations_only)
    elif args.command == "search":
        report, code = cmd_search(Path(args.search_config), config.seed if args.seed is not None else None)
    elif args.command == "sufficiency":
        report, code = cmd_sufficiency(args.file, config)
    else:
        emit = Path(args.emit) if args.emit else None
        report, code = cmd_fixture(args.name, emit, args.json)
        if emit is None and report.sections:
            sys.stdout.write(report.sections[0].details.get("category_file", ""))
            return code

    sys.stdout.write(render_text(report, config.language))
    if args.out:
        save_report(report, Path(args.out))
    return code


def main(argv: list[str]) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main(sys.argv[1:])
