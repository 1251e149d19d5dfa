"""Angle arithmetic, chords and arcs."""

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from lamlab.circle import (
    Arc,
    Leaf,
    angle,
    arc,
    arc_contains,
    conjugate,
    conjugate_leaf,
    crosses,
    double,
    fmt_angle,
    leaf,
    leaf_length,
    parse_angle,
    period_under_doubling,
    preimages,
)
from lamlab.errors import DomainError

rational_angles = st.builds(
    lambda n, d: F(n, d) % 1, st.integers(0, 3000), st.integers(1, 3000)
)


def test_double_examples():
    assert double(F(3, 7)) == F(6, 7)
    assert double(F(6, 7)) == F(5, 7)
    assert double(F(0)) == F(0)


def test_preimages_examples():
    assert preimages(F(0)) == (F(0), F(1, 2))
    # derived: doubling each half lands back on the input
    a, b = preimages(F(3, 7))
    assert (a, b) == (F(3, 14), F(5, 7))
    assert double(a) == F(3, 7) and double(b) == F(3, 7)
    assert preimages(F(1, 3)) == (F(1, 6), F(2, 3))


@given(rational_angles)
def test_preimages_double_back(x):
    a, b = preimages(x)
    assert double(a) == x and double(b) == x
    assert a != b


def test_period_under_doubling():
    assert period_under_doubling(F(1, 7)) == (0, 3)
    assert period_under_doubling(F(3, 31)) == (0, 5)
    # derived by orbit trace: 1/6 -> 1/3 -> 2/3 -> 1/3
    assert period_under_doubling(F(1, 6)) == (1, 2)


@given(rational_angles)
def test_preperiod_zero_iff_odd_denominator(x):
    pre, per = period_under_doubling(x)
    assert (pre == 0) == (x.denominator % 2 == 1)
    cur = x
    for _ in range(pre):
        cur = double(cur)
    start = cur
    for _ in range(per):
        cur = double(cur)
    assert cur == start


def test_leaf_canonical_and_degenerate():
    l = leaf("4/7", "3/7")
    assert (l.a, l.b) == (F(3, 7), F(4, 7))
    with pytest.raises(DomainError):
        Leaf(F(1, 3), F(1, 3))


def test_leaf_length_examples():
    assert leaf_length(leaf("3/7", "4/7")) == F(1, 7)
    assert leaf_length(leaf("1/3", "2/3")) == F(1, 3)
    assert leaf_length(leaf("0/1", "1/2")) == F(1, 2)


@given(rational_angles, rational_angles)
def test_leaf_length_range_and_conjugation(x, y):
    if x == y:
        return
    l = Leaf(x, y)
    assert F(0) < leaf_length(l) <= F(1, 2)
    assert leaf_length(conjugate_leaf(l)) == leaf_length(l)


def test_crosses_examples():
    assert not crosses(leaf("1/7", "2/7"), leaf("4/9", "5/9"))
    assert crosses(leaf("0/1", "1/2"), leaf("1/4", "3/4"))
    assert not crosses(leaf("1/7", "2/7"), leaf("2/7", "4/7"))


@given(rational_angles, rational_angles, rational_angles, rational_angles)
def test_crosses_symmetric_and_conjugation_invariant(a, b, c, d):
    if len({a, b, c, d}) < 4:
        return
    l1, l2 = Leaf(a, b), Leaf(c, d)
    assert crosses(l1, l2) == crosses(l2, l1)
    assert crosses(l1, l2) == crosses(conjugate_leaf(l1), conjugate_leaf(l2))


def test_conjugate_examples():
    assert conjugate(F(5, 31)) == F(26, 31)
    assert conjugate(F(0)) == F(0)
    assert conjugate_leaf(leaf("1/7", "2/7")) == leaf("5/7", "6/7")


@given(rational_angles)
def test_conjugate_involution_commutes_with_double(x):
    assert conjugate(conjugate(x)) == x
    assert double(conjugate(x)) == conjugate(double(x))


def test_arc_contains():
    a = arc("3/7", "4/7")
    assert arc_contains(a, F(7, 15))
    assert not arc_contains(a, F(3, 7))
    wrap = arc("6/7", "1/7")
    assert arc_contains(wrap, F(0))
    closed = arc("3/7", "4/7", closed_start=True)
    assert arc_contains(closed, F(3, 7))


def test_angle_parsing_and_formatting():
    assert parse_angle("3/7") == F(3, 7)
    assert parse_angle("10/14") == F(5, 7)
    assert fmt_angle(F(5, 7)) == "5/7"
    assert angle(9, 7) == F(2, 7)
    with pytest.raises(DomainError):
        parse_angle("0.25")
