from __future__ import annotations

from typing import Any

from .constants import DEFAULT_LANGUAGE

LANG_STRINGS: dict[str, dict[str, str]] = {
    "en": {
        "composite_unknown_id": "composition entry {second}∘{first} mentions an undeclared morphism",
        "composite_not_composable": "composition entry {second}∘{first} is given for a non-composable pair",
        "composite_endpoints": "composite {second}∘{first} = {result} has the wrong endpoints",
        "composition_missing": "composition {second}∘{first} is not defined",
        "identity_endpoints": "identity {morphism} of {object} is not an endomorphism of {object}",
        "left_identity": "left identity at {morphism}",
        "right_identity": "right identity at {morphism}",
        "associativity": "associativity fails at ({third}, {second}, {first})",
        "functor_object_unmapped": "functor does not map object {object}",
        "functor_morphism_unmapped": "functor does not map morphism {morphism}",
        "functor_endpoints": "functor does not preserve the endpoints of {morphism}",
        "functor_identity": "functor does not preserve the identity of {object}",
        "functor_composition": "functor does not preserve {second}∘{first}",
        "zero_not_initial": "{zero} is not initial: {count} morphisms {zero} -> {object}",
        "zero_not_terminal": "{zero} is not terminal: {count} morphisms {object} -> {zero}",
        "unknown_cofibration": "cofibration {morphism} is not a morphism of the category",
        "zero_map_not_cofibration": "the map {morphism} out of zero is not a cofibration",
        "iso_not_cofibration": "isomorphism {morphism} is not a cofibration",
        "cofibrations_not_closed": "composite {second}∘{first} of cofibrations is not a cofibration",
        "pushout_escapes_category": "pushout escapes category: {cofibration} along {along}",
        "pushout_leg_not_cofibration": "pushout leg {leg} of {cofibration} along {along} is not a cofibration",
        "unknown_weq": "weak equivalence {morphism} is not a morphism of the category",
        "iso_not_weq": "isomorphism {morphism} is not a weak equivalence",
        "weq_not_closed": "composite {second}∘{first} of weak equivalences is not a weak equivalence",
        "glueing_fails": "glueing fails: induced map {induced} between {source} and {target} is not a weak equivalence",
        "not_a_groupoid": "morphism {morphism} is not invertible",
        "sobject_diagonal_not_zero": "diagonal entry A_{{{position}}} is {object}, not the zero object",
        "sobject_not_cofibration": "horizontal map {morphism}: A_{{{source}}} -> A_{{{target}}} is not a cofibration",
        "sobject_not_pushout": "square at A_{{{corner}}} -> A_{{{top_right}}} over A_{{{apex}}} is not a pushout",
        "discrete_pullback_note": "homotopy pullbacks of discrete sets are computed as ordinary pullbacks",
        "left_square_pushout_only": "the left square of each extension witness is checked to be a pushout only",
        "bounded_mode_note": "bounded mode: pushouts are required up to rank {bound}",
        "strict_mode_note": "strict mode: every pushout along a cofibration is required",
        "trivial_subdivision_note": "the trivial subdivision is included; its map is the identity",
        "undefined_at_truncation": "undefined at this truncation",
        "left_family_only": "categorical checks cover the left family",
        "report_title": "{tool} {version}: {command}",
        "report_digest": "input digest: {digest}",
        "report_verdict_pass": "verdict: pass",
        "report_verdict_fail": "verdict: FAIL",
        "report_section": "[{name}]",
        "report_caveat": "note: {text}",
        "search_inconclusive": "search stopped by timeout after {trials} trials; inconclusive",
        "usage_error": "error: {error}",
    },
    "zh": {
        "composite_unknown_id": "复合表项 {second}∘{first} 引用了未声明的态射",
        "composite_not_composable": "复合表项 {second}∘{first} 给出在不可复合的一对态射上",
        "composite_endpoints": "复合 {second}∘{first} = {result} 的端点不正确",
        "composition_missing": "复合 {second}∘{first} 未定义",
        "identity_endpoints": "{object} 的恒等态射 {morphism} 不是 {object} 的自态射",
        "left_identity": "左单位律在 {morphism} 处不成立",
        "right_identity": "右单位律在 {morphism} 处不成立",
        "associativity": "结合律在 ({third}, {second}, {first}) 处不成立",
        "functor_object_unmapped": "函子未映射对象 {object}",
        "functor_morphism_unmapped": "函子未映射态射 {morphism}",
        "functor_endpoints": "函子不保持 {morphism} 的端点",
        "functor_identity": "函子不保持 {object} 的恒等态射",
        "functor_composition": "函子不保持复合 {second}∘{first}",
        "zero_not_initial": "{zero} 不是始对象：{zero} -> {object} 有 {count} 个态射",
        "zero_not_terminal": "{zero} 不是终对象：{object} -> {zero} 有 {count} 个态射",
        "unknown_cofibration": "上纤维化 {morphism} 不是该范畴的态射",
        "zero_map_not_cofibration": "从零对象出发的态射 {morphism} 不是上纤维化",
        "iso_not_cofibration": "同构 {morphism} 不是上纤维化",
        "cofibrations_not_closed": "上纤维化的复合 {second}∘{first} 不是上纤维化",
        "pushout_escapes_category": "推出超出范畴：{cofibration} 沿 {along}",
        "pushout_leg_not_cofibration": "{cofibration} 沿 {along} 的推出腿 {leg} 不是上纤维化",
        "unknown_weq": "弱等价 {morphism} 不是该范畴的态射",
        "iso_not_weq": "同构 {morphism} 不是弱等价",
        "weq_not_closed": "弱等价的复合 {second}∘{first} 不是弱等价",
        "glueing_fails": "粘合条件不成立：{source} 与 {target} 之间的诱导态射 {induced} 不是弱等价",
        "not_a_groupoid": "态射 {morphism} 不可逆",
        "sobject_diagonal_not_zero": "对角项 A_{{{position}}} 是 {object}，不是零对象",
        "sobject_not_cofibration": "水平态射 {morphism}：A_{{{source}}} -> A_{{{target}}} 不是上纤维化",
        "sobject_not_pushout": "以 A_{{{corner}}} -> A_{{{top_right}}} 为顶边、A_{{{apex}}} 为顶点的方块不是推出",
        "discrete_pullback_note": "离散集合的同伦拉回按普通拉回计算",
        "left_square_pushout_only": "每个扩张见证的左方块只检查是否为推出",
        "bounded_mode_note": "有界模式：只要求秩不超过 {bound} 的推出",
        "strict_mode_note": "严格模式：要求所有沿上纤维化的推出",
        "trivial_subdivision_note": "包含平凡剖分，其映射为恒等映射",
        "undefined_at_truncation": "在此截断下无定义",
        "left_family_only": "范畴层面的检查只覆盖左族",
        "report_title": "{tool} {version}：{command}",
        "report_digest": "输入摘要：{digest}",
        "report_verdict_pass": "结论：通过",
        "report_verdict_fail": "结论：失败",
        "report_section": "[{name}]",
        "report_caveat": "注意：{text}",
        "search_inconclusive": "搜索在 {trials} 次尝试后超时，结果不确定",
        "usage_error": "错误：{error}",
    },
}

SUPPORTED_LANGUAGES = tuple(LANG_STRINGS.keys())


def get_strings(language: str) -> dict[str, str]:
    return LANG_STRINGS.get(language, LANG_STRINGS[DEFAULT_LANGUAGE])


def translate(language: str, key: str, **kwargs: Any) -> str:
    strings = get_strings(language)
    template = strings.get(key, key)
    return template.format(**kwargs)
