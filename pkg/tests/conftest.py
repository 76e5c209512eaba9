from fractions import Fraction as F

import pytest

from giryq import Dist, FiniteSpace, Kernel, Predicate


@pytest.fixture
def three_points():
    return FiniteSpace("X", ("x1", "x2", "x3"))


@pytest.fixture
def two_points():
    return FiniteSpace("Y", ("y1", "y2"))


@pytest.fixture
def channel(three_points, two_points):
    """A 3-to-2 kernel with one deterministic row and two noisy rows."""
    return Kernel(
        three_points,
        two_points,
        (
            Dist(two_points, (F(1), F(0))),
            Dist(two_points, (F(1, 2), F(1, 2))),
            Dist(two_points, (F(3, 10), F(7, 10))),
        ),
    )


@pytest.fixture
def gain(three_points):
    return Predicate(three_points, (F(1, 2), F(3, 5), F(9, 10)))
