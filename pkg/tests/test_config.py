from __future__ import annotations

import json

from segallab.config import LabConfig, ensure_cap, ensure_level, ensure_seed
from segallab.constants import DEFAULT_MAX_LEVEL, MAX_SEED


def test_lab_config_persists_settings(tmp_path) -> None:
    path = tmp_path / "segallab.json"
    config = LabConfig(
        max_objects=20,
        max_morphisms=500,
        max_level=5,
        enumeration_policy="exhaustive",
        language="zh",
        seed=42,
        check_glueing=False,
    )

    config.save(path)
    loaded = LabConfig.load(path)

    assert loaded == config
    assert json.loads(path.read_text(encoding="utf-8"))["language"] == "zh"


def test_lab_config_defaults_when_missing_or_broken(tmp_path) -> None:
    assert LabConfig.load(tmp_path / "absent.json") == LabConfig()

    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert LabConfig.load(path) == LabConfig()

    path.write_text("[1, 2]", encoding="utf-8")
    assert LabConfig.load(path) == LabConfig()


def test_lab_config_normalizes_bad_values(tmp_path) -> None:
    path = tmp_path / "segallab.json"
    path.write_text(
        json.dumps(
            {
                "max_objects": 0,
                "max_level": "many",
                "enumeration_policy": " Exhaustive ",
                "language": "fr",
                "seed": -3,
                "check_glueing": "yes",
            }
        ),
        encoding="utf-8",
    )

    loaded = LabConfig.load(path)

    assert loaded.max_objects == 1
    assert loaded.max_level == DEFAULT_MAX_LEVEL
    assert loaded.enumeration_policy == "exhaustive"
    assert loaded.language == "en"
    assert loaded.seed == 0
    assert loaded.check_glueing is True


def test_ensure_helpers_clamp_and_fall_back() -> None:
    assert ensure_cap("12", 5) == 12
    assert ensure_cap(10**9, 5) == 100_000
    assert ensure_cap(True, 5) == 5
    assert ensure_level(20, 4) == 8
    assert ensure_level(None, 4) == 4
    assert ensure_seed(str(MAX_SEED), 0) == MAX_SEED
    assert ensure_seed(MAX_SEED + 1, 7) == 7
