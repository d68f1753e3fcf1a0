from __future__ import annotations

import pytest

from segallab.cofcat import CofStructure, WaldStructure
from segallab.errors import InputError
from segallab.fincat import FinCategory, FinFunctor, identity_functor, poset_category
from segallab.fixtures import ps_fixture, zero_fixture
from segallab.gpd2lim import (
    VARIANTS,
    check_categorical_2segal,
    check_equivalence,
    check_isofibration,
    check_mu_equivalence,
    check_slice_initial,
    comparison_functor,
    cospan_diagram,
    full_on_morphisms,
    groupoid_violations,
    homotopy_pullback_category,
    is_category_isomorphism,
    is_groupoid,
    isofibration_failure,
    limit_projection,
    projective_2_limit,
    require_groupoid,
    restriction_isofibrations,
    single_vertex_diagram,
    surjective_on_objects,
    trivial_groupoid,
    two_fiber_product,
)


def cyclic_group(order: int) -> FinCategory:
    """One object ``*`` with automorphisms ``r0..r{order-1}`` composing by addition."""
    morphisms = [(f"r{k}", "*", "*") for k in range(order)]
    composition = {
        (f"r{b}", f"r{a}"): f"r{(a + b) % order}" for a in range(order) for b in range(order)
    }
    return FinCategory.build(["*"], morphisms, {"*": "r0"}, composition, name=f"Z/{order}")


def walking_iso() -> FinCategory:
    return FinCategory.build(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b"), ("g", "b", "a")],
        {"a": "id_a", "b": "id_b"},
        {
            ("id_a", "id_a"): "id_a",
            ("id_b", "id_b"): "id_b",
            ("f", "id_a"): "f",
            ("id_b", "f"): "f",
            ("g", "id_b"): "g",
            ("id_a", "g"): "g",
            ("g", "f"): "id_a",
            ("f", "g"): "id_b",
        },
        name="iso",
    )


def to_point(c: FinCategory, point: FinCategory) -> FinFunctor:
    return FinFunctor(
        c, point, {obj: "*" for obj in c.objects}, {m.id: point.identity("*") for m in c.morphisms}
    )


def from_point(point: FinCategory, c: FinCategory, obj: str) -> FinFunctor:
    return FinFunctor(point, c, {"*": obj}, {point.identity("*"): c.identity(obj)})


def groupoid_cospans() -> list[tuple[str, FinFunctor, FinFunctor]]:
    """Cospans ``F, G`` of small groupoids with ``F`` full and surjective on objects."""
    pt, pt2 = trivial_groupoid("pt"), trivial_groupoid("pt2")
    iso, z2, z3 = walking_iso(), cyclic_group(2), cyclic_group(3)
    return [
        ("pt", identity_functor(pt), identity_functor(pt)),
        ("iso", identity_functor(iso), identity_functor(iso)),
        ("iso-a", identity_functor(iso), from_point(pt, iso, "a")),
        ("iso-b", identity_functor(iso), from_point(pt, iso, "b")),
        ("iso-pt", to_point(iso, pt), identity_functor(pt)),
        ("iso-iso-pt", to_point(iso, pt), to_point(iso, pt)),
        ("z2", identity_functor(z2), identity_functor(z2)),
        ("z2-pt", identity_functor(z2), from_point(pt, z2, "*")),
        ("z2-z2-pt", to_point(z2, pt2), to_point(z2, pt2)),
        ("z2-iso-pt", to_point(z2, pt2), to_point(iso, pt2)),
        ("z3-pt", identity_functor(z3), from_point(pt, z3, "*")),
        ("z3-z2-pt", to_point(z3, pt2), to_point(z2, pt2)),
    ]


def test_groupoid_predicates() -> None:
    assert is_groupoid(walking_iso())
    assert is_groupoid(cyclic_group(3))
    chain = poset_category(["1", "2"], lambda a, b: a <= b, name="chain")
    assert not is_groupoid(chain)
    assert groupoid_violations(chain).keys() == ["not_a_groupoid"]
    with pytest.raises(InputError, match="not a groupoid"):
        require_groupoid(chain)


@pytest.mark.parametrize("c", [walking_iso(), cyclic_group(2), trivial_groupoid()])
def test_one_vertex_limit_is_isomorphic_to_its_input(c: FinCategory) -> None:
    d = single_vertex_diagram(c)
    limit = projective_2_limit(d)
    assert is_category_isomorphism(limit_projection(limit, d, "0"))


def test_cospan_limit_is_the_two_fiber_product() -> None:
    iso, pt = walking_iso(), trivial_groupoid()
    first, second = identity_functor(iso), from_point(pt, iso, "a")
    limit = projective_2_limit(cospan_diagram(first, second))
    fp = two_fiber_product(first, second)
    assert sorted(limit.labels) == sorted(fp.labels)
    assert is_category_isomorphism(comparison_functor(limit, fp))


def test_cospan_needs_a_common_target() -> None:
    with pytest.raises(InputError):
        cospan_diagram(identity_functor(walking_iso()), identity_functor(cyclic_group(2)))


def test_homotopy_pullback_of_points() -> None:
    pt = trivial_groupoid()
    model = homotopy_pullback_category(identity_functor(pt), identity_functor(pt))
    assert len(model.category.objects) == 1
    assert model.labels == (("*", "*", "*", "*<=*", "*<=*"),)


@pytest.mark.parametrize("name, first, second", groupoid_cospans())
def test_comparison_slices_have_initial_objects(name: str, first: FinFunctor, second: FinFunctor) -> None:
    assert full_on_morphisms(first)
    assert surjective_on_objects(first)
    model = homotopy_pullback_category(first, second, name=f"hpb {name}")
    target = two_fiber_product(first, second, name=f"2FP {name}")
    h = comparison_functor(model, target)
    assert all(check_slice_initial(h, x) for x in target.category.objects)
    assert check_equivalence(h).equivalence


def test_equivalence_verdicts() -> None:
    iso = walking_iso()
    assert check_equivalence(identity_functor(iso)).to_dict() == {
        "essentially_surjective": True,
        "full": True,
        "faithful": True,
        "equivalence": True,
    }
    discrete = poset_category(["x", "y"], lambda a, b: a == b)
    only_x = poset_category(["x"], lambda a, b: True)
    inclusion = FinFunctor(only_x, discrete, {"x": "x"}, {"x<=x": "x<=x"})
    verdict = check_equivalence(inclusion)
    assert not verdict.essentially_surjective
    assert verdict.full and verdict.faithful
    assert not verdict.equivalence

    collapse = to_point(cyclic_group(2), trivial_groupoid())
    assert not check_equivalence(collapse).faithful
    assert check_equivalence(from_point(trivial_groupoid(), iso, "b")).essentially_surjective


def test_isofibrations() -> None:
    iso, pt = walking_iso(), trivial_groupoid()
    assert check_isofibration(identity_functor(iso))
    assert check_isofibration(to_point(iso, pt))
    assert isofibration_failure(from_point(pt, iso, "a")) == ("*", "f")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mu_is_an_equivalence_on_ps2(ps2: CofStructure, n: int) -> None:
    assert check_mu_equivalence(ps2, n).equivalence


def test_restrictions_are_isofibrations(ps2: CofStructure) -> None:
    verdicts = restriction_isofibrations(ps2, 3)
    assert set(verdicts) == {(1, (0, 1)), (2, (0, 1)), (2, (0, 2)), (3, (0, 1)), (3, (0, 3))}
    assert all(verdicts.values())


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("n, j", [(2, 1), (3, 1), (3, 2)])
def test_left_family_on_ps2(ps2: CofStructure, variant: str, n: int, j: int) -> None:
    verdict = check_categorical_2segal(ps2, n, j, variant)
    assert verdict.passed, verdict.to_dict()
    assert verdict.notes == ["left_family_only"]
    if variant == "iso-groupoid":
        assert verdict.isofibrations is None
    else:
        assert verdict.isofibrations is True


def test_left_family_on_zero_category() -> None:
    verdict = check_categorical_2segal(zero_fixture(), 3, 1)
    assert verdict.passed
    assert verdict.source_size == verdict.target_size == 1


def test_ps3_wald_variant_with_isomorphisms() -> None:
    verdict = check_categorical_2segal(WaldStructure(ps_fixture(3)), 2, 1, "wS-category")
    assert verdict.passed


def test_categorical_check_rejects_bad_requests(ps2: CofStructure) -> None:
    with pytest.raises(InputError, match="0 < j < n"):
        check_categorical_2segal(ps2, 3, 0)
    with pytest.raises(InputError, match="variant"):
        check_categorical_2segal(ps2, 3, 1, "groupoid")
