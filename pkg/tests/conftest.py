from fractions import Fraction

import pytest

from lamlab.lamination import spec_for


def F(num, den=1):
    return Fraction(num, den)


@pytest.fixture(scope="session")
def specs():
    """The laminations exercised throughout: angle string -> spec."""
    names = ["3/7", "7/15", "3/31", "5/31", "15/31", "1/9"]
    return {name: spec_for(Fraction(*map(int, name.split("/")))) for name in names}
