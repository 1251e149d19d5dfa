"""Lamination membership, classes, pullback construction."""

from fractions import Fraction as F

import pytest

from lamlab.circle import (
    arc,
    assert_noncrossing,
    crosses,
    double_leaf,
    leaf,
    leaf_length,
    period_under_doubling,
)
from lamlab.errors import DomainError
from lamlab.lamination import (
    arc_clear_of_periodic_leaves,
    build,
    class_angles,
    itinerary,
    leaf_in,
    major_of,
    periodic_leaves,
    polygons_of,
    polygons_of_approx,
    same_class,
    spec_for,
)


def test_major_of_examples():
    # oracle: the major is a preimage chord of the minor of the long kind
    for minor, major in [
        (leaf("1/7", "2/7"), leaf("1/7", "4/7")),
        (leaf("1/3", "2/3"), leaf("1/6", "5/6")),
        (leaf("7/15", "8/15"), leaf("4/15", "11/15")),
    ]:
        got = major_of(minor)
        assert got == major
        assert double_leaf(got) == minor
        assert leaf_length(got) == F(1, 2) - leaf_length(minor) / 2


@pytest.mark.parametrize("p", ["3/7", "7/15", "3/31", "5/31", "15/31", "1/9"])
def test_major_length_and_image(p, specs):
    spec = specs[p]
    assert F(1, 3) <= leaf_length(spec.major) <= F(1, 2)
    assert double_leaf(spec.major) == spec.minor


def test_spec_rejects_bad_angles():
    with pytest.raises(DomainError):
        spec_for(F(0))
    with pytest.raises(DomainError):
        spec_for(F(1, 6))


def test_itinerary_first_symbol_and_ambiguity(specs):
    spec = specs["7/15"]
    word = itinerary(spec.p, spec, "full")
    assert word.symbols[0] == "A"  # the minor sits in arc A by definition
    assert "*" in word.symbols  # the minor orbit passes through a major endpoint
    clean = itinerary(F(6, 31), spec, "full")
    assert "*" not in clean.symbols


def test_itinerary_identical_for_example_leaf(specs):
    spec = specs["15/31"]
    w1 = itinerary(F(4, 9), spec, "full")
    w2 = itinerary(F(5, 9), spec, "full")
    assert w1.symbols == ("A", "B", "B") * 2
    assert w1.symbols == w2.symbols


def test_same_class_examples(specs):
    assert same_class(F(4, 9), F(5, 9), specs["15/31"])
    assert same_class(F(6, 31), F(25, 31), specs["7/15"])
    # 3/7's orbit enters the far side of the circle where 1/7's never goes
    rabbit = spec_for(F(1, 7))
    assert not same_class(F(1, 7), F(3, 7), rabbit)
    assert same_class(F(1, 7), F(2, 7), rabbit)
    assert same_class(F(2, 7), F(4, 7), rabbit)


def test_same_class_is_equivalence_on_periodic_sample(specs):
    from lamlab.qml import exact_period_angles

    spec = specs["5/31"]
    sample = [x for n in (1, 2, 3, 4, 5) for x in exact_period_angles(n)]
    related = {
        (x, y) for x in sample for y in sample if x <= y and same_class(x, y, spec)
    }
    for x, y in related:
        assert (x, x) in related and (y, y) in related  # reflexive
        for z in sample:
            if y <= z and (y, z) in related:
                assert (min(x, z), max(x, z)) in related  # transitive


def test_class_angles_golden(specs):
    assert class_angles(F(4, 9), specs["15/31"], 12) == {F(4, 9), F(5, 9)}
    assert class_angles(F(1, 7), specs["5/31"], 12) == {F(1, 7), F(2, 7), F(4, 7)}
    assert class_angles(F(1, 15), specs["3/31"], 12) == {
        F(1, 15),
        F(2, 15),
        F(4, 15),
        F(8, 15),
    }
    # the minor is a leaf: p's class contains its companion
    from lamlab.qml import companion

    for p in ("3/7", "7/15", "5/31"):
        spec = specs[p]
        assert companion(spec.p) in class_angles(spec.p, spec, 12)


def test_leaf_in_examples(specs):
    assert leaf_in(specs["15/31"], leaf("4/9", "5/9"))
    assert leaf_in(specs["7/15"], leaf("6/31", "25/31"))
    assert not leaf_in(specs["3/7"], leaf("1/15", "2/15"))
    # a polygon diagonal is not a leaf
    assert not leaf_in(specs["3/31"], leaf("1/15", "4/15"))
    assert leaf_in(specs["3/31"], leaf("1/15", "2/15"))


def test_build_base_cases():
    basilica = spec_for(F(1, 3))
    assert set(build(basilica, 0).leaves) == {leaf("1/3", "2/3")}
    sp37 = spec_for(F(3, 7))
    for depth in range(4):
        leaves = set(build(sp37, depth).leaves)
        assert {leaf("3/7", "4/7"), leaf("1/7", "6/7"), leaf("2/7", "5/7")} <= leaves


def test_build_monotone_and_noncrossing(specs):
    spec = specs["3/31"]
    sizes = []
    for depth in range(5):
        approx = build(spec, depth)
        assert_noncrossing(approx.leaves)
        sizes.append(len(approx.leaves))
    assert sizes == sorted(sizes) and len(set(sizes)) == len(sizes)


@pytest.mark.parametrize("p", ["3/7", "7/15", "3/31"])
def test_build_forward_invariance(p, specs):
    spec = specs[p]
    leaves = set(build(spec, 4).leaves)
    for l in leaves:
        if leaf_length(l) < F(1, 2):
            assert double_leaf(l) in leaves


@pytest.mark.parametrize("p", ["3/7", "7/15", "5/31"])
def test_oracle_equivalence_shallow(p, specs):
    spec = specs[p]
    for l in build(spec, 5).leaves:
        assert leaf_in(spec, l), str(l)


def test_periodic_leaves_golden(specs):
    assert periodic_leaves(specs["5/31"], 4) == []
    orbit5 = periodic_leaves(specs["5/31"], 5)
    flat = sorted(l for orbit in orbit5 for l in orbit)
    assert flat == sorted(
        [
            leaf("5/31", "6/31"),
            leaf("10/31", "12/31"),
            leaf("20/31", "24/31"),
            leaf("9/31", "17/31"),
            leaf("3/31", "18/31"),
        ]
    )
    n3 = {l for orbit in periodic_leaves(specs["7/15"], 3) for l in orbit}
    assert {leaf("3/7", "4/7"), leaf("1/7", "6/7"), leaf("2/7", "5/7")} <= n3


def test_minor_orbit_size_divides_period(specs):
    for spec in specs.values():
        seen = {spec.minor}
        cur = double_leaf(spec.minor)
        while cur != spec.minor:
            seen.add(cur)
            cur = double_leaf(cur)
        assert spec.period % len(seen) == 0 and len(seen) >= 1


def test_polygons_golden(specs):
    delta = polygons_of(specs["3/31"], 12)
    assert [p.to_json() for p in delta] == [
        {"vertices": ["1/15", "2/15", "4/15", "8/15"], "period": 1}
    ]
    assert polygons_of(specs["3/7"], 12) == []
    tri = polygons_of(specs["5/31"], 12)
    assert [tuple(map(str, p.vertices)) for p in tri] == [("1/7", "2/7", "4/7")]


def test_polygon_paths_cross_validate():
    """The rabbit triangle shows up both as an equal-itinerary class and as an
    endpoint-sharing cycle of the pullback approximation."""
    rabbit = spec_for(F(1, 7))
    by_classes = polygons_of(rabbit, 6)
    by_approx = polygons_of_approx(build(rabbit, 2))
    tri = (F(1, 7), F(2, 7), F(4, 7))
    assert any(p.vertices == tri for p in by_classes)
    assert any(p.vertices == tri for p in by_approx)


def test_arc_clear_of_periodic_leaves(specs):
    spec = specs["3/7"]
    assert arc_clear_of_periodic_leaves(spec, arc("6/7", "1/7"), 10)
    assert arc_clear_of_periodic_leaves(spec, arc("3/7", "4/7"), 10)
    closed = arc("2/7", "3/7", closed_start=True, closed_end=True)
    assert not arc_clear_of_periodic_leaves(spec, closed, 3)
