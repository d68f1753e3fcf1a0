from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from segallab.errors import InputError
from segallab.polygon import (
    PolygonalSubdivision,
    catalan,
    classify_subdivision,
    enumerate_subdivisions,
    enumerate_triangulations,
    fan_triangulation,
    find_consecutive_triangle,
    little_schroeder,
    modular_triangle,
    subdivision_poset,
    subdivision_problem,
    vertex_valency,
)


@pytest.mark.parametrize("n, expected", [(2, 1), (3, 2), (4, 5), (5, 14)])
def test_triangulation_counts(n: int, expected: int) -> None:
    assert len(enumerate_triangulations(n)) == expected
    assert catalan(n - 1) == expected


@pytest.mark.parametrize("n, expected", [(2, 1), (3, 3), (4, 11), (5, 45)])
def test_subdivision_counts_include_trivial(n: int, expected: int) -> None:
    subdivisions = enumerate_subdivisions(n)
    assert len(subdivisions) == expected
    assert little_schroeder(n - 1) == expected
    assert sum(1 for p in subdivisions if p.is_trivial) == 1


def test_enumeration_is_deterministic_and_valid() -> None:
    first = enumerate_subdivisions(5)
    second = enumerate_subdivisions(5)
    assert first == second
    assert all(subdivision_problem(p) is None for p in first)
    assert len({p.members for p in first}) == len(first)


def test_from_members_canonicalizes() -> None:
    p = PolygonalSubdivision.from_members(3, [[3, 2, 0], (1, 0, 2)])
    assert p.members == ((0, 1, 2), (0, 2, 3))
    assert p.diagonals == ((0, 2),)
    assert p.to_list() == [[0, 1, 2], [0, 2, 3]]


@pytest.mark.parametrize(
    "members, message",
    [
        ([(0, 1, 2)], "boundary edge"),
        ([(0, 1, 3), (0, 2, 3)], "not covered"),
        ([(0, 1, 2), (0, 2, 3), (0, 1)], "fewer than three"),
        ([(0, 1, 2, 3), (0, 2, 3)], "covered exactly once"),
    ],
)
def test_from_members_rejects_malformed(members, message: str) -> None:
    with pytest.raises(InputError, match=message):
        PolygonalSubdivision.from_members(3, members)


def test_overlapping_members_are_rejected() -> None:
    p = PolygonalSubdivision(3, ((0, 1, 2), (0, 2, 3), (0, 1, 3), (1, 2, 3)))
    assert subdivision_problem(p) is not None


def test_classification_of_small_triangulations() -> None:
    left, right = sorted(enumerate_triangulations(3), key=lambda p: p.members)
    assert classify_subdivision(left) == "left"
    assert classify_subdivision(right) == "right"
    assert classify_subdivision(enumerate_triangulations(2)[0]) == "both"

    kinds = [classify_subdivision(t) for t in enumerate_triangulations(4)]
    assert kinds.count("left") == 1
    assert kinds.count("right") == 1
    assert kinds.count("neither") == 3


def test_fan_triangulations() -> None:
    fan = fan_triangulation(4, 0)
    assert fan.members == ((0, 1, 2), (0, 2, 3), (0, 3, 4))
    assert classify_subdivision(fan) == "left"
    assert classify_subdivision(fan_triangulation(4, 4)) == "right"
    assert vertex_valency(fan, 0) == 4
    with pytest.raises(InputError):
        fan_triangulation(4, 5)


def test_consecutive_triangle_and_modular_triangle() -> None:
    t = PolygonalSubdivision.from_members(4, [(0, 1, 2), (0, 2, 4), (2, 3, 4)])
    assert classify_subdivision(t) == "neither"
    assert find_consecutive_triangle(t) == 1
    assert modular_triangle(4, 0) == (0, 1, 4)
    assert modular_triangle(4, 2) == (1, 2, 3)
    with pytest.raises(InputError):
        find_consecutive_triangle(PolygonalSubdivision.from_members(4, [(0, 1, 2, 3, 4)]))


def test_subdivision_poset_records_shared_edges() -> None:
    t = PolygonalSubdivision.from_members(4, [(0, 1, 2), (0, 2, 4), (2, 3, 4)])
    poset = subdivision_poset(t)
    assert sorted(edge for edge, _, _ in poset.shared) == [(0, 2), (2, 4)]
    assert poset.elements[-2:] == ((0, 2), (2, 4))
    assert poset.leq((0, 2), (0, 2, 4))
    assert not poset.leq((0, 2), (2, 3, 4))


def test_level_below_two_is_rejected() -> None:
    with pytest.raises(InputError):
        enumerate_subdivisions(1)


@given(st.integers(min_value=3, max_value=7), st.data())
def test_every_triangulation_of_larger_polygons_has_consecutive_triangle(n: int, data) -> None:
    triangulations = enumerate_triangulations(n)
    t = data.draw(st.sampled_from(triangulations))
    j = find_consecutive_triangle(t)
    assert (j - 1, j, j + 1) in t.members
    assert len(t.members) == n - 1
    assert len(t.diagonals) == n - 2


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_valency_two_marks_the_ears(n: int) -> None:
    for t in enumerate_triangulations(n):
        for v in range(n + 1):
            assert (vertex_valency(t, v) == 2) == (modular_triangle(n, v) in t.members)
        assert vertex_valency(t, find_consecutive_triangle(t)) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_one_left_and_one_right_triangulation(n: int) -> None:
    triangulations = enumerate_triangulations(n)
    left = [t for t in triangulations if classify_subdivision(t) in ("left", "both")]
    right = [t for t in triangulations if classify_subdivision(t) in ("right", "both")]
    assert [t.members for t in left] == [fan_triangulation(n, 0).members]
    assert [t.members for t in right] == [fan_triangulation(n, n).members]
    assert (left == right) == (n == 2)
