from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

from .constants import (
    DEFAULT_LANGUAGE,
    DEFAULT_MAX_LEVEL,
    DEFAULT_MAX_MORPHISMS,
    DEFAULT_MAX_OBJECTS,
    DEFAULT_POLICY,
    DEFAULT_SEED,
    ENUMERATION_POLICIES,
    MAX_SEED,
)
from .messages import SUPPORTED_LANGUAGES


def ensure_cap(value: int | str | None, fallback: int) -> int:
    if value is None or isinstance(value, bool):
        return fallback
    try:
        number = int(value)
    except (TypeError, ValueError):
        return fallback
    return max(1, min(100_000, number))


def ensure_level(value: int | str | None, fallback: int) -> int:
    if value is None or isinstance(value, bool):
        return fallback
    try:
        level = int(value)
    except (TypeError, ValueError):
        return fallback
    return max(1, min(8, level))


def ensure_policy(value: str | None, fallback: str) -> str:
    if not value:
        return fallback
    policy = str(value).strip().lower()
    return policy if policy in ENUMERATION_POLICIES else fallback


def ensure_language(value: str | None, fallback: str) -> str:
    if not value:
        return fallback
    code = str(value).lower()
    return code if code in SUPPORTED_LANGUAGES else fallback


def ensure_seed(value: int | str | None, fallback: int) -> int:
    if value is None or isinstance(value, bool):
        return fallback
    try:
        seed = int(value)
    except (TypeError, ValueError):
        return fallback
    if seed < 0 or seed > MAX_SEED:
        return fallback
    return seed


@dataclass
class LabConfig:
    max_objects: int = DEFAULT_MAX_OBJECTS
    max_morphisms: int = DEFAULT_MAX_MORPHISMS
    max_level: int = DEFAULT_MAX_LEVEL
    enumeration_policy: str = DEFAULT_POLICY
    language: str = DEFAULT_LANGUAGE
    seed: int = DEFAULT_SEED
    check_glueing: bool = True

    @classmethod
    def load(cls, path: Path) -> "LabConfig":
        if not path.exists():
            return cls()
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, OSError):
            return cls()
        if not isinstance(data, dict):
            return cls()
        check_glueing = data.get("check_glueing")
        if not isinstance(check_glueing, bool):
            check_glueing = True
        return cls(
            max_objects=ensure_cap(data.get("max_objects"), DEFAULT_MAX_OBJECTS),
            max_morphisms=ensure_cap(data.get("max_morphisms"), DEFAULT_MAX_MORPHISMS),
            max_level=ensure_level(data.get("max_level"), DEFAULT_MAX_LEVEL),
            enumeration_policy=ensure_policy(
                data.get("enumeration_policy"), DEFAULT_POLICY
            ),
            language=ensure_language(data.get("language"), DEFAULT_LANGUAGE),
            seed=ensure_seed(data.get("seed"), DEFAULT_SEED),
            check_glueing=check_glueing,
        )

    def save(self, path: Path) -> None:
        path.write_text(
            json.dumps(asdict(self), ensure_ascii=False, indent=2),
            encoding="utf-8",
        )
