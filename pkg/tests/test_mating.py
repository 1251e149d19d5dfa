"""Mating equivalence classes and the hypothesis checker."""

from fractions import Fraction as F

import pytest

from lamlab.circle import conjugate, crosses, double, leaf
from lamlab.mating import (
    LINKED_GAPS,
    NOT_MATEABLE,
    OVERSIZED_CLASS,
    check_theorem_3_5,
    class_of,
    detect_linked_gaps,
    mating_spec,
    periodic_classes,
)


@pytest.fixture(scope="module")
def ex1():
    return mating_spec(F(3, 7), F(3, 31))


@pytest.fixture(scope="module")
def ex2():
    return mating_spec(F(7, 15), F(5, 31))


@pytest.fixture(scope="module")
def ex3():
    return mating_spec(F(15, 31), F(1, 9))


def test_single_leaf_class(ex1):
    cls = class_of(ex1, leaf("28/31", "27/31"))  # inverted q-minor of 3/31
    assert cls.q_leaves == frozenset({leaf("27/31", "28/31")})
    assert not cls.p_leaves and not cls.p_polygons and not cls.q_polygons


def test_chain_class_of_inverted_minor(ex2):
    """The inverted minor of the q side picks up the two period-five leaves of
    the p side that land on its endpoints, one at each end."""
    cls = class_of(ex2, leaf("25/31", "26/31"))
    assert cls.q_leaves == frozenset({leaf("25/31", "26/31")})
    assert cls.p_leaves == frozenset({leaf("6/31", "25/31"), leaf("5/31", "26/31")})
    assert cls.period == 5


def test_three_plus_three_class(ex2):
    cls = class_of(ex2, leaf("3/7", "4/7"))
    assert len(cls.p_leaves) == 3 and len(cls.q_leaves) == 3
    assert [p.to_json() for p in cls.q_polygons] == [
        {"vertices": ["3/7", "5/7", "6/7"], "period": 1}
    ]
    assert cls.p_leaves == frozenset(
        {leaf("3/7", "4/7"), leaf("1/7", "6/7"), leaf("2/7", "5/7")}
    )


def test_class_idempotent_from_any_member(ex2):
    cls = class_of(ex2, leaf("3/7", "4/7"))
    for x in cls.support:
        assert class_of(ex2, x) == cls


def test_class_forward_invariance(ex2):
    cls = class_of(ex2, leaf("25/31", "26/31"))
    image = {double(x) for x in cls.support}
    target = class_of(ex2, next(iter(image)))
    assert image <= target.support


def test_no_transverse_crossings_within_class(ex2, ex3):
    for mspec, seed in ((ex2, leaf("3/7", "4/7")), (ex3, leaf("4/9", "5/9"))):
        cls = class_of(mspec, seed)
        members = sorted(cls.p_leaves | cls.q_leaves)
        for i, l1 in enumerate(members):
            for l2 in members[i + 1 :]:
                assert not crosses(l1, l2), (str(l1), str(l2))


def test_conjugation_symmetry_swaps_sides(ex2):
    swapped = mating_spec(F(5, 31), F(7, 15))
    cls = class_of(ex2, leaf("3/7", "4/7"))
    mirrored = class_of(swapped, leaf(conjugate(F(3, 7)), conjugate(F(4, 7))))
    assert {conjugate(x) for x in cls.support} == mirrored.support
    assert len(mirrored.p_leaves) == len(cls.q_leaves)
    assert len(mirrored.q_leaves) == len(cls.p_leaves)


def test_fixed_classes_example(ex2):
    fixed = periodic_classes(ex2, 1)
    supports = sorted(tuple(sorted(c.support)) for c in fixed)
    assert supports == [
        tuple(sorted([F(1, 3), F(2, 3)])),
        tuple(sorted([F(j, 7) for j in range(1, 7)])),
    ]


def test_no_mixed_endpoints_example_one(ex1):
    for cls in periodic_classes(ex1, 5):
        assert not (cls.p_leaves and cls.q_leaves)


def test_example_one_report(ex1):
    report = check_theorem_3_5(ex1)
    assert report.mateable and report.thm35_ok
    assert report.findings == ()


def test_example_two_report(ex2):
    report = check_theorem_3_5(ex2)
    assert not report.thm35_ok
    assert {f.code for f in report.findings} == {OVERSIZED_CLASS}


def test_example_three_linked_gaps(ex3):
    findings = detect_linked_gaps(ex3)
    assert len(findings) == 1
    detail = findings[0].detail
    assert findings[0].code == LINKED_GAPS
    assert detail["side"] == "q"
    assert detail["gap_orbit_period"] == 6
    assert detail["gaps_linked_per_cluster"] == 2
    assert detail["tuning_period"] == 2
    assert detail["critical_periods"] == [3, 5]


def test_example_three_report(ex3):
    report = check_theorem_3_5(ex3)
    assert not report.thm35_ok
    assert LINKED_GAPS in {f.code for f in report.findings}


def test_not_mateable_reported():
    mspec = mating_spec(F(3, 7), F(3, 7))
    report = check_theorem_3_5(mspec)
    assert not report.mateable and not report.thm35_ok
    assert NOT_MATEABLE in {f.code for f in report.findings}


def test_histogram_stable_under_larger_bound(ex1):
    base = check_theorem_3_5(ex1, period_bound=12).class_histogram
    wider = check_theorem_3_5(ex1, period_bound=15).class_histogram
    assert base == wider


def test_report_serialization_shape(ex1):
    data = check_theorem_3_5(ex1).to_json()
    assert list(data) == [
        "p",
        "q",
        "mateable",
        "thm35_ok",
        "period_bound",
        "class_period",
        "findings",
        "class_histogram",
    ]
