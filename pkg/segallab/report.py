from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .constants import DISCRETE_PULLBACK_NOTE, TOOL_NAME, TOOL_VERSION
from .messages import translate


@dataclass
class Section:
    """One check of a report: a flat summary shown to people plus machine-only details."""

    name: str
    passed: bool | None = None
    summary: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "summary": dict(self.summary),
            "details": dict(self.details),
        }


@dataclass
class Report:
    command: str
    digest: str | None = None
    flags: dict[str, Any] = field(default_factory=dict)
    sections: list[Section] = field(default_factory=list)
    caveats: list[dict[str, Any]] = field(default_factory=list)
    tool: str = TOOL_NAME
    version: str = TOOL_VERSION

    def __post_init__(self) -> None:
        self.add_caveat(DISCRETE_PULLBACK_NOTE)

    @property
    def passed(self) -> bool:
        return all(section.passed is not False for section in self.sections)

    def add_section(self, section: Section) -> Section:
        self.sections.append(section)
        return section

    def add_caveat(self, key: str, **args: Any) -> None:
        entry = {"key": key, "args": {name: value for name, value in sorted(args.items())}}
        if entry not in self.caveats:
            self.caveats.append(entry)

    def to_dict(self) -> dict[str, Any]:
        return {
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "digest": self.digest,
            "flags": dict(self.flags),
            "passed": self.passed,
            "sections": [section.to_dict() for section in self.sections],
            "caveats": [dict(caveat) for caveat in self.caveats],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Report":
        report = cls(
            command=str(data.get("command", "")),
            digest=data.get("digest"),
            flags=dict(data.get("flags") or {}),
            tool=str(data.get("tool", TOOL_NAME)),
            version=str(data.get("version", TOOL_VERSION)),
        )
        for item in data.get("sections") or []:
            if not isinstance(item, dict) or not isinstance(item.get("name"), str):
                continue
            report.sections.append(
                Section(
                    item["name"],
                    item.get("passed"),
                    dict(item.get("summary") or {}),
                    dict(item.get("details") or {}),
                )
            )
        for caveat in data.get("caveats") or []:
            if isinstance(caveat, dict) and isinstance(caveat.get("key"), str):
                report.add_caveat(caveat["key"], **dict(caveat.get("args") or {}))
        return report


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return " ".join(_format_value(item) for item in value)
    return str(value)


def render_text(report: Report, language: str = "en") -> str:
    lines = [translate(language, "report_title", tool=report.tool, version=report.version, command=report.command)]
    if report.digest:
        lines.append(translate(language, "report_digest", digest=report.digest))
    for name in sorted(report.flags):
        lines.append(f"  {name} = {_format_value(report.flags[name])}")
    for section in report.sections:
        lines.append(translate(language, "report_section", name=section.name))
        for key, value in section.summary.items():
            lines.append(f"  {key}: {_format_value(value)}")
        if section.passed is not None:
            verdict = "report_verdict_pass" if section.passed else "report_verdict_fail"
            lines.append(f"  {translate(language, verdict)}")
    for caveat in report.caveats:
        text = translate(language, caveat["key"], **caveat["args"])
        lines.append(translate(language, "report_caveat", text=text))
    lines.append(translate(language, "report_verdict_pass" if report.passed else "report_verdict_fail"))
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def save_report(report: Report, path: Path) -> None:
    path.write_text(render_json(report), encoding="utf-8")


def load_report(path: Path) -> Report | None:
    if not path.exists():
        return None
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, OSError):
        return None
    if not isinstance(raw, dict):
        return None
    return Report.from_dict(raw)
