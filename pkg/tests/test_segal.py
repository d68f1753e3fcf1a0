from __future__ import annotations

import itertools
import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from segallab.cofcat import CofStructure, validate_cof
from segallab.errors import InputError
from segallab.fixtures import random_closure, twin_fixture, zero_fixture
from segallab.polygon import (
    PolygonalSubdivision,
    classify_subdivision,
    enumerate_triangulations,
    fan_triangulation,
)
from segallab.sconstr import TruncatedSimplicialSet, iso_s_dot, linear_shape, nerve
from segallab.segal import (
    AgreementReport,
    SearchConfig,
    square_agreement,
    check_left,
    check_lower,
    check_one_segal,
    check_projection_surjective,
    check_right,
    check_upper,
    counterexample_search,
    cover_limit,
    exhaustive_verdict,
    left_fan_bijective,
    left_map,
    limit_over_subdivision,
    reduced_verdict,
    right_map,
    stepwise_fan_image,
    two_segal_map,
)


def relation_complex(vertices: int, related, N: int) -> TruncatedSimplicialSet:
    """Tuples ``(v_0..v_n)`` with ``related(v_a, v_b)`` for all ``a < b``; faces drop entries."""
    levels = [
        [
            t
            for t in itertools.product(range(vertices), repeat=n + 1)
            if all(related(t[a], t[b]) for a in range(n + 1) for b in range(a + 1, n + 1))
        ]
        for n in range(N + 1)
    ]
    index = [{t: k for k, t in enumerate(level)} for level in levels]
    faces = [()] + [
        tuple(tuple(index[n - 1][t[:i] + t[i + 1 :]] for t in levels[n]) for i in range(n + 1))
        for n in range(1, N + 1)
    ]
    degeneracies = [
        tuple(tuple(index[n + 1][t[: i + 1] + t[i:]] for t in levels[n]) for i in range(n + 1))
        for n in range(N)
    ]
    return TruncatedSimplicialSet(
        tuple(len(level) for level in levels), tuple(faces), tuple(degeneracies)
    )


@pytest.fixture(scope="module")
def ps2_levels(ps2: CofStructure) -> TruncatedSimplicialSet:
    return iso_s_dot(ps2, 5)


@pytest.fixture
def neighbours() -> TruncatedSimplicialSet:
    return relation_complex(3, lambda a, b: abs(a - b) <= 1, 3)


def test_nerve_is_one_and_two_segal() -> None:
    x = nerve(linear_shape(3), 4)
    assert check_one_segal(x) == {2: True, 3: True, 4: True}
    summary = exhaustive_verdict(x)
    assert summary.passed
    assert summary.checked == 1 + 3 + 11
    assert square_agreement(x).agree


def test_non_transitive_relation_is_not_two_segal(neighbours: TruncatedSimplicialSet) -> None:
    assert neighbours.identity_violations() == []
    assert check_one_segal(neighbours)[2] is False
    result = left_map(neighbours, 3, 2)
    assert result.injective
    assert not result.surjective
    assert result.missing is not None
    assert check_left(neighbours)[(3, 2)] is False
    summary = reduced_verdict(neighbours)
    assert not summary.passed
    assert summary.checked == 8


def test_right_family_is_left_family_of_opposite(neighbours: TruncatedSimplicialSet) -> None:
    left_of_opposite = check_left(neighbours.opposite())
    right = check_right(neighbours)
    assert right == {(n, j): left_of_opposite[(n, n - j)] for n, j in right}


def test_upper_and_lower_tables_stop_at_truncation() -> None:
    x = nerve(linear_shape(2), 3)
    upper, lower = check_upper(x), check_lower(x)
    assert upper[(3, 1)] is None
    assert lower[(3, 2)] is None
    assert upper[(2, 1)] is True
    assert lower[(2, 1)] is True


def test_ps2_levels_are_two_segal(ps2_levels: TruncatedSimplicialSet) -> None:
    assert all(check_left(ps2_levels).values())
    assert all(check_right(ps2_levels).values())
    assert reduced_verdict(ps2_levels).passed
    summary = exhaustive_verdict(ps2_levels, max_level=4)
    assert summary.passed
    assert summary.failures == []
    assert square_agreement(ps2_levels).agree


@lru_cache(maxsize=None)
def twin_closures() -> tuple[CofStructure, ...]:
    rng = random.Random(2024)
    ambient = twin_fixture(2)
    return tuple(random_closure(rng, ambient) for _ in range(20))


@pytest.fixture(scope="module")
def closure_levels() -> list[TruncatedSimplicialSet]:
    return [iso_s_dot(s, 5, verify=False) for s in twin_closures()]


def test_random_closures_are_valid() -> None:
    closures = twin_closures()
    assert len(closures) == 20
    for s in closures:
        assert len(s.base.objects) <= 12
        assert validate_cof(s).ok, s.name


def test_random_closures_are_left_two_segal(closure_levels: list[TruncatedSimplicialSet]) -> None:
    left_triangulations = [
        t
        for n in range(2, 6)
        for t in enumerate_triangulations(n)
        if classify_subdivision(t) in ("left", "both")
    ]
    assert len(left_triangulations) == 4
    for x in closure_levels:
        assert all(check_left(x).values())
        for t in left_triangulations:
            assert two_segal_map(x, t).bijective


def test_square_tables_agree_on_random_closures(closure_levels: list[TruncatedSimplicialSet]) -> None:
    for x in closure_levels:
        report = square_agreement(x)
        assert report.agree, report
        assert report.left and report.lower


def test_square_agreement_on_a_failing_complex(neighbours: TruncatedSimplicialSet) -> None:
    assert check_lower(neighbours)[(2, 1)] is False
    assert check_upper(neighbours)[(2, 1)] is False
    report = square_agreement(neighbours)
    assert report == AgreementReport(left=False, lower=False, right=False, upper=False)
    assert report.agree
    assert not AgreementReport(left=True, lower=False, right=True, upper=True).agree


@pytest.mark.parametrize("n", [3, 4, 5])
def test_left_fans_on_ps2(ps2_levels: TruncatedSimplicialSet, n: int) -> None:
    assert left_fan_bijective(ps2_levels, n)


def test_stepwise_fan_matches_direct_restriction(ps2_levels: TruncatedSimplicialSet) -> None:
    fan = fan_triangulation(4, 0)
    for z in ps2_levels.level(4):
        direct = tuple(ps2_levels.restrict(z, 4, member) for member in fan.members)
        assert stepwise_fan_image(ps2_levels, 4, z) == direct


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dropping_a_consecutive_triangle_is_surjective(ps2_levels: TruncatedSimplicialSet, n: int) -> None:
    for t in enumerate_triangulations(n):
        assert check_projection_surjective(ps2_levels, t)


def test_limit_sizes_match_two_segal_map(ps2_levels: TruncatedSimplicialSet) -> None:
    t = PolygonalSubdivision.from_members(4, [(0, 1, 2), (0, 2, 4), (2, 3, 4)])
    result = two_segal_map(ps2_levels, t)
    assert result.subdivision is t
    assert result.limit_size == len(limit_over_subdivision(ps2_levels, t))
    assert result.domain_size == 15
    assert result.bijective


def test_cover_limit_without_joins_is_a_product() -> None:
    x = nerve(linear_shape(2), 2)
    assert len(cover_limit(x, [(0, 1), (1, 2)], [])) == 9
    assert len(cover_limit(x, [(0, 1), (1, 2)], [(0, 1, (1,))])) == 4


def test_levels_beyond_truncation_are_rejected() -> None:
    x = nerve(linear_shape(2), 2)
    with pytest.raises(InputError, match="truncation"):
        left_map(x, 3, 1)
    with pytest.raises(InputError):
        right_map(x, 3, 1)


def test_zero_category_is_trivially_two_segal() -> None:
    x = iso_s_dot(zero_fixture(), 4)
    assert exhaustive_verdict(x).passed


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=3), st.sampled_from(["path", "all", "order"]))
def test_relation_complexes_satisfy_simplicial_identities(vertices: int, kind: str) -> None:
    related = {
        "path": lambda a, b: abs(a - b) <= 1,
        "all": lambda a, b: True,
        "order": lambda a, b: a <= b,
    }[kind]
    x = relation_complex(vertices, related, 3)
    assert x.identity_violations() == []
    if kind != "path":
        assert reduced_verdict(x).passed


def test_search_config_validation() -> None:
    config = SearchConfig(fixtures=["PS2"], trials=2, ambient="ps2")
    assert config.fixtures == ["ps2"]
    with pytest.raises(ValidationError):
        SearchConfig(fixtures=["nope"])
    with pytest.raises(ValidationError):
        SearchConfig(max_level=9)
    with pytest.raises(ValidationError):
        SearchConfig(seed=-1)


def test_search_is_deterministic() -> None:
    config = SearchConfig(seed=7, trials=2, ambient="ps2", fixtures=["z"], max_level=4)
    first = counterexample_search(config)
    second = counterexample_search(config)
    assert first.structures == ["z", "random-0", "random-1"]
    assert first.maps_checked == 3 * 3
    assert first.structures == second.structures
    assert [c.to_dict() for c in first.counterexamples] == [c.to_dict() for c in second.counterexamples]
    assert not first.inconclusive


def test_search_needs_something_to_search() -> None:
    with pytest.raises(InputError):
        counterexample_search(SearchConfig())
