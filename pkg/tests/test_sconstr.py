from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segallab.cofcat import CofStructure, WaldStructure
from segallab.errors import InputError
from segallab.fincat import FinFunctor, diagram_isomorphic, validate_category, validate_functor
from segallab.fixtures import ps_fixture, zero_fixture
from segallab.sconstr import (
    CofChain,
    SObject,
    ar_map,
    ar_shape,
    build_Sn_category,
    build_wSn_category,
    chain_iso_classes,
    chain_to_sobject,
    classify_diagrams,
    degeneracy_operator,
    enumerate_chains,
    enumerate_Sn,
    face_operator,
    iso_s_dot,
    linear_shape,
    mu,
    nerve,
    s_levels,
    simplicial_map,
    validate_sobject,
)


def test_arrow_shapes() -> None:
    shape = ar_shape(2)
    assert shape.objects == ("0,0", "0,1", "0,2", "1,1", "1,2", "2,2")
    assert "0,1<=1,2" in shape.mor
    assert validate_category(shape).ok
    assert linear_shape(3).objects == ("1", "2", "3")


def test_arrow_maps_are_functors() -> None:
    face = ar_map(face_operator(3, 1), 3)
    assert face.object_map["0,1"] == "0,2"
    assert validate_functor(face).ok
    degeneracy = ar_map(degeneracy_operator(2, 1), 2)
    assert degeneracy.object_map["1,2"] == "1,1"
    assert validate_functor(degeneracy).ok
    with pytest.raises(InputError, match="order-preserving"):
        ar_map((1, 0), 2)


def test_operators() -> None:
    assert face_operator(3, 0) == (1, 2, 3)
    assert face_operator(3, 3) == (0, 1, 2)
    assert degeneracy_operator(2, 0) == (0, 0, 1, 2)
    assert degeneracy_operator(2, 2) == (0, 1, 2, 2)


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 3), (2, 8), (3, 19)])
def test_chain_counts_in_ps2(ps2: CofStructure, n: int, expected: int) -> None:
    assert len(enumerate_chains(ps2, n)) == expected
    assert len(enumerate_Sn(ps2, n)) == expected


def test_skeletal_fill_and_top_row(ps2: CofStructure) -> None:
    chain = CofChain(2, ("1", "2"), ("1-2:1",))
    a = chain_to_sobject(ps2, chain)
    assert a.top_row == ("1", "2")
    assert a.obj(1, 2) == "1"
    assert a.obj(1, 1) == "0"
    assert a.arrow((0, 2), (1, 2)) == "2-1:01"
    assert validate_functor(a.diagram).ok
    assert mu(ps2, a) == chain


def test_mu_recovers_every_chain(ps2: CofStructure) -> None:
    for chain in enumerate_chains(ps2, 3):
        assert mu(ps2, chain_to_sobject(ps2, chain)) == chain


def test_faces_of_staircases(ps2: CofStructure) -> None:
    a = chain_to_sobject(ps2, CofChain(2, ("1", "2"), ("1-2:1",)))
    d0 = simplicial_map(ps2, face_operator(2, 0), a)
    assert d0.n == 1
    assert d0.top_row == ("1",)
    d2 = simplicial_map(ps2, face_operator(2, 2), a)
    assert d2.top_row == ("1",)
    s1 = simplicial_map(ps2, degeneracy_operator(2, 1), a)
    assert s1.top_row == ("1", "1", "2")


def test_exhaustive_policy_keeps_the_iso_classes(ps2: CofStructure) -> None:
    skeletal = s_levels(ps2, 2)
    exhaustive = s_levels(ps2, 2, policy="exhaustive")
    assert len(exhaustive[2].objects) > len(skeletal[2].objects)
    assert [len(level.classes) for level in exhaustive] == [len(level.classes) for level in skeletal]
    with pytest.raises(InputError, match="policy"):
        enumerate_Sn(ps2, 2, policy="lazy")


def test_iso_classes_of_ps2_levels(ps2: CofStructure) -> None:
    x = iso_s_dot(ps2, 4)
    assert x.sizes == (1, 3, 6, 10, 15)
    assert x.identity_violations() == []


def test_iso_classes_of_ps3_levels() -> None:
    x = iso_s_dot(ps_fixture(3), 3)
    assert x.sizes == (1, 4, 10, 20)


def test_zero_category_levels_are_points() -> None:
    x = iso_s_dot(zero_fixture(), 3)
    assert x.sizes == (1, 1, 1, 1)
    assert x.labels[0] == ("",)


def test_construction_is_deterministic(ps2: CofStructure) -> None:
    assert iso_s_dot(ps2, 3) == iso_s_dot(ps_fixture(2), 3)


def test_classify_diagrams_groups_isomorphic_fills(ps2: CofStructure) -> None:
    objects = enumerate_Sn(ps2, 2)
    classes = classify_diagrams(ps2.base, [a.diagram for a in objects])
    assert len(classes) == 6
    assert sorted(index for group in classes for index in group) == list(range(len(objects)))
    assert len(chain_iso_classes(ps2, 2)) == 6


def test_s_category_on_chain_fills(ps2: CofStructure) -> None:
    s1 = build_Sn_category(ps2, 1)
    assert len(s1.category.objects) == 3
    assert validate_category(s1.category).ok


def test_weak_equivalence_s_category(ps2: CofStructure) -> None:
    ws1 = build_wSn_category(WaldStructure(ps2), 1)
    assert ws1.category.objects == build_Sn_category(ps2, 1).category.objects
    assert all(m.id in ws1.category.inverses for m in ws1.category.morphisms)

    discrete = build_wSn_category(WaldStructure(ps2, frozenset(ps2.base.identities.values())), 1)
    assert len(discrete.category.morphisms) == len(discrete.category.objects)
    assert len(ws1.category.morphisms) > len(discrete.category.morphisms)


def test_nerve_of_a_chain() -> None:
    x = nerve(linear_shape(2), 3)
    assert x.sizes == (2, 3, 4, 5)
    assert x.identity_violations() == []
    arrow = x.labels[1].index("1<=2")
    assert x.labels[1][x.act((0, 0), arrow, 1)] == "1<=1"
    assert x.labels[1][x.act((1, 1), arrow, 1)] == "2<=2"
    assert x.labels[2][x.act((0, 1, 1), arrow, 1)] == "1<=2.2<=2"
    assert x.labels[0][x.restrict(arrow, 1, (1,))] == "2"
    with pytest.raises(InputError):
        x.act((1, 0), arrow, 1)


def test_opposite_reverses_vertices() -> None:
    x = nerve(linear_shape(2), 2)
    op = x.opposite()
    arrow = x.labels[1].index("1<=2")
    assert op.face(1, 0, arrow) == x.face(1, 1, arrow)
    assert op.opposite() == x
    assert op.identity_violations() == []


def staircase(s: CofStructure, n: int, objects: dict[str, str], maps: dict[str, str]) -> SObject:
    """``Ar[n] -> C`` on ``objects``; arrows not in ``maps`` are identities or zero maps."""
    shape = ar_shape(n)
    morphism_map = {}
    for morphism in shape.morphisms:
        src, tgt = objects[morphism.source], objects[morphism.target]
        if morphism.id in maps:
            morphism_map[morphism.id] = maps[morphism.id]
        elif morphism.source == morphism.target:
            morphism_map[morphism.id] = s.base.identity(src)
        elif src == s.zero:
            morphism_map[morphism.id] = s.zero_map_from(tgt)
        else:
            morphism_map[morphism.id] = s.zero_map_to(src)
    return SObject(n, FinFunctor(shape, s.base, objects, morphism_map))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_enumerated_staircases_are_s_objects(ps3: CofStructure, n: int) -> None:
    for a in enumerate_Sn(ps3, n):
        assert validate_sobject(ps3, a).ok
        for i in range(n + 1):
            if n > 0:
                assert validate_sobject(ps3, simplicial_map(ps3, face_operator(n, i), a)).ok
            assert validate_sobject(ps3, simplicial_map(ps3, degeneracy_operator(n, i), a)).ok


def test_exhaustive_fills_are_s_objects(ps2: CofStructure) -> None:
    for a in enumerate_Sn(ps2, 2, policy="exhaustive"):
        assert validate_sobject(ps2, a).ok
    for a in enumerate_Sn(zero_fixture(), 3):
        assert validate_sobject(zero_fixture(), a).ok


def test_staircase_with_nonzero_diagonal(ps2: CofStructure) -> None:
    ident = ps2.base.identity("1")
    a = staircase(
        ps2,
        1,
        {"0,0": "1", "0,1": "1", "1,1": "1"},
        {"0,0<=0,1": ident, "0,0<=1,1": ident, "0,1<=1,1": ident},
    )
    assert validate_functor(a.diagram).ok
    assert validate_sobject(ps2, a).keys() == ["sobject_diagonal_not_zero"] * 2


def test_staircase_whose_square_is_not_a_pushout(ps2: CofStructure) -> None:
    objects = {"0,0": "0", "0,1": "1", "0,2": "2", "1,1": "0", "1,2": "0", "2,2": "0"}
    a = staircase(ps2, 2, objects, {"0,1<=0,2": "1-2:1"})
    assert validate_functor(a.diagram).ok
    report = validate_sobject(ps2, a)
    assert report.keys() == ["sobject_not_pushout"]
    assert "A_{0,1} -> A_{0,2}" in report.violations[0].describe()


def test_staircase_checked_against_fewer_cofibrations(ps2: CofStructure) -> None:
    a = next(a for a in enumerate_Sn(ps2, 2) if a.top_row == ("1", "2"))
    only_trivial = CofStructure(
        ps2.base,
        "0",
        frozenset(ps2.base.identities.values()) | {ps2.zero_map_from(obj) for obj in ps2.base.objects},
    )
    report = validate_sobject(only_trivial, a)
    assert report.keys() == ["sobject_not_cofibration"]
    assert validate_sobject(ps2, a).ok


@pytest.mark.parametrize(
    "make, expected",
    [
        (zero_fixture, [1, 1, 1, 1, 1]),
        (lambda: ps_fixture(2), [1, 3, 6, 10, 15]),
        (lambda: ps_fixture(3), [1, 4, 10, 20, 35]),
    ],
    ids=["Z", "PS(2)", "PS(3)"],
)
def test_chain_classes_count_the_classes_of_each_level(make, expected: list[int]) -> None:
    s = make()
    levels = s_levels(s, 4)
    assert [len(level.classes) for level in levels] == expected
    assert [len(chain_iso_classes(s, n)) for n in range(1, 5)] == expected[1:]


@lru_cache(maxsize=None)
def ps2_fills() -> tuple[FinFunctor, ...]:
    return tuple(a.diagram for a in enumerate_Sn(ps_fixture(2), 2, policy="exhaustive"))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_diagram_isomorphism_is_an_equivalence(data) -> None:
    fills = ps2_fills()
    classes = classify_diagrams(fills[0].target, list(fills))
    group = data.draw(st.sampled_from(classes))
    a, b, c = (fills[data.draw(st.sampled_from(group))] for _ in range(3))
    other = fills[data.draw(st.integers(min_value=0, max_value=len(fills) - 1))]
    assert diagram_isomorphic(a, a)
    assert diagram_isomorphic(a, b) and diagram_isomorphic(b, c) and diagram_isomorphic(a, c)
    assert diagram_isomorphic(a, other) == diagram_isomorphic(other, a)
    assert diagram_isomorphic(a, other) == diagram_isomorphic(c, other)
