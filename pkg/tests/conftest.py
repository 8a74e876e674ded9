"""Shared hosts for the test suite.

Graph fixtures are built once per session; everything downstream treats
them as immutable, which PLGraph enforces anyway.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from sdimlab import (ToothSequenceSpec, arrange, build_shark_teeth, point,
                     segment)


def paper_truncation(k: int):
    return build_shark_teeth(ToothSequenceSpec(kind="paper", K=k))


@pytest.fixture(scope="session")
def seg_graph():
    """Unit segment on the x axis."""
    return arrange([segment(point(0, 0), point(1, 0))])


@pytest.fixture(scope="session")
def m1():
    return paper_truncation(1)


@pytest.fixture(scope="session")
def m2():
    return paper_truncation(2)


@pytest.fixture(scope="session")
def m3():
    return paper_truncation(3)


@pytest.fixture(scope="session")
def m15():
    return paper_truncation(15)


@pytest.fixture(scope="session")
def w6():
    """Fast-growing tooth schedule: tooth k at level k, six teeth."""
    return build_shark_teeth(
        ToothSequenceSpec(kind="explicit", levels=(1, 2, 3, 4, 5, 6)))


@pytest.fixture(scope="session")
def cross_graph():
    """Two crossing diagonals; arrange splits them at the center."""
    return arrange([
        segment(point(0, 0), point(1, 1)),
        segment(point(0, 1), point(1, 0)),
    ])


@pytest.fixture(scope="session")
def lshape_graph():
    """Two unit legs meeting at the origin."""
    return arrange([
        segment(point(0, 0), point(1, 0)),
        segment(point(0, 0), point(0, 1)),
    ])


HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
EIGHTH = Fraction(1, 8)
