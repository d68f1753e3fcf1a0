from __future__ import annotations

import json
from pathlib import Path

from segallab.constants import DISCRETE_PULLBACK_NOTE, TOOL_NAME
from segallab.report import Report, Section, load_report, render_json, render_text, save_report


def sample_report() -> Report:
    report = Report("check", digest="abc123", flags={"mode": "left", "max_level": 3})
    report.add_section(Section("levels", None, {"sizes": [1, 3, 6, 10]}))
    report.add_section(Section("left", True, {"n=3 j=1": True, "n=3 j=2": None}))
    report.add_caveat("bounded_mode_note", bound=2)
    return report


def test_every_report_carries_the_pullback_note() -> None:
    report = Report("validate")
    assert report.caveats == [{"key": DISCRETE_PULLBACK_NOTE, "args": {}}]
    report.add_caveat(DISCRETE_PULLBACK_NOTE)
    report.add_caveat("bounded_mode_note", bound=2)
    report.add_caveat("bounded_mode_note", bound=2)
    assert len(report.caveats) == 2


def test_sections_without_a_verdict_do_not_fail_the_report() -> None:
    report = sample_report()
    assert report.passed
    report.add_section(Section("right", False))
    assert not report.passed


def test_render_text() -> None:
    text = render_text(sample_report())
    lines = text.splitlines()
    assert lines[0] == f"{TOOL_NAME} 0.1.0: check"
    assert "input digest: abc123" in lines
    assert "  max_level = 3" in lines
    assert "  sizes: 1 3 6 10" in lines
    assert "  n=3 j=1: yes" in lines
    assert "  n=3 j=2: -" in lines
    assert "note: bounded mode: pushouts are required up to rank 2" in lines
    assert lines[-1] == "verdict: pass"


def test_render_text_in_chinese() -> None:
    text = render_text(sample_report(), "zh")
    assert text.splitlines()[-1] == "结论：通过"
    assert "注意：离散集合的同伦拉回按普通拉回计算" in text


def test_render_json_is_stable() -> None:
    report = sample_report()
    assert render_json(report) == render_json(sample_report())
    data = json.loads(render_json(report))
    assert data["passed"] is True
    assert data["sections"][1]["summary"]["n=3 j=2"] is None
    assert list(data) == sorted(data)


def test_save_and_load(tmp_path: Path) -> None:
    path = tmp_path / "report.json"
    report = sample_report()
    save_report(report, path)
    loaded = load_report(path)
    assert loaded is not None
    assert loaded.to_dict() == report.to_dict()


def test_load_report_tolerates_bad_files(tmp_path: Path) -> None:
    assert load_report(tmp_path / "missing.json") is None
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    assert load_report(broken) is None
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]", encoding="utf-8")
    assert load_report(listed) is None
    partial = tmp_path / "partial.json"
    partial.write_text('{"command": "search", "sections": [{"passed": true}, {"name": "ok"}]}', encoding="utf-8")
    report = load_report(partial)
    assert report is not None
    assert [section.name for section in report.sections] == ["ok"]
