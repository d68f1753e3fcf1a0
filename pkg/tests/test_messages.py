from __future__ import annotations

import string

import pytest

from segallab.messages import LANG_STRINGS, SUPPORTED_LANGUAGES, get_strings, translate


def _fields(template: str) -> set[str]:
    return {name for _, name, _, _ in string.Formatter().parse(template) if name}


def test_languages_share_keys() -> None:
    assert SUPPORTED_LANGUAGES == ("en", "zh")
    assert LANG_STRINGS["en"].keys() == LANG_STRINGS["zh"].keys()


@pytest.mark.parametrize("key", sorted(LANG_STRINGS["en"]))
def test_translations_use_the_same_placeholders(key: str) -> None:
    assert _fields(LANG_STRINGS["en"][key]) == _fields(LANG_STRINGS["zh"][key])


def test_translate_falls_back() -> None:
    assert get_strings("fr") is LANG_STRINGS["en"]
    assert translate("en", "not_a_key") == "not_a_key"
    assert translate("zh", "usage_error", error="x") == "错误：x"
