import random
from fractions import Fraction as F
from math import comb

import pytest

from giryq import DimensionMismatchError, LinearProgram, LpStatus, Sense, lp_solve
from giryq.laws import (
    _check_lp_against_oracle,
    enumerate_basic_points,
    lp_oracle,
    rand_lp,
)


def blend_program(sense):
    """Two blending equalities over three nonnegative shares."""
    return LinearProgram(
        objective=(F(1, 2), F(3, 5), F(9, 10)),
        matrix=(
            (F(1), F(1, 2), F(3, 10)),
            (F(0), F(1, 2), F(7, 10)),
        ),
        rhs=(F(7, 10), F(3, 10)),
        sense=sense,
    )


def test_blend_minimum():
    solution = lp_solve(blend_program(Sense.MIN))
    assert solution.status is LpStatus.OPTIMAL
    assert solution.value == F(14, 25)
    assert solution.point == (F(2, 5), F(3, 5), F(0))


def test_blend_maximum():
    solution = lp_solve(blend_program(Sense.MAX))
    assert solution.status is LpStatus.OPTIMAL
    assert solution.value == F(47, 70)
    assert solution.point == (F(4, 7), F(0), F(3, 7))


def test_contradictory_equalities_are_infeasible():
    lp = LinearProgram(
        objective=(F(1),),
        matrix=((F(1),), (F(1),)),
        rhs=(F(2), F(3)),
        sense=Sense.MIN,
    )
    assert lp_solve(lp).status is LpStatus.INFEASIBLE


def test_identity_system_forces_the_point():
    rhs = (F(1, 3), F(0), F(2, 3))
    lp = LinearProgram(
        objective=(F(5), F(-2), F(1, 7)),
        matrix=((F(1), F(0), F(0)), (F(0), F(1), F(0)), (F(0), F(0), F(1))),
        rhs=rhs,
        sense=Sense.MIN,
    )
    solution = lp_solve(lp)
    assert solution.status is LpStatus.OPTIMAL
    assert solution.point == rhs
    assert solution.value == sum(c * x for c, x in zip(lp.objective, rhs))


def test_unbounded_program_returns_an_improving_ray():
    # x1 - x2 = 0 admits the ray (1, 1), along which -x1 decreases forever
    lp = LinearProgram(
        objective=(F(-1), F(0)),
        matrix=((F(1), F(-1)),),
        rhs=(F(0),),
        sense=Sense.MIN,
    )
    solution = lp_solve(lp)
    assert solution.status is LpStatus.UNBOUNDED
    ray = solution.ray
    assert all(r >= 0 for r in ray) and any(r > 0 for r in ray)
    assert sum(a * r for a, r in zip(lp.matrix[0], ray)) == 0
    assert sum(c * r for c, r in zip(lp.objective, ray)) < 0


def test_dimension_validation():
    with pytest.raises(DimensionMismatchError):
        LinearProgram(objective=(F(1),), matrix=((F(1), F(2)),), rhs=(F(1),))
    with pytest.raises(DimensionMismatchError):
        LinearProgram(objective=(F(1),), matrix=((F(1),),), rhs=(F(1), F(2)))


def test_degenerate_ties_terminate():
    # every vertex of this system is degenerate; ties hit the pivot rule
    lp = LinearProgram(
        objective=(F(1), F(0), F(0)),
        matrix=(
            (F(1), F(1), F(0)),
            (F(0), F(1), F(1)),
            (F(1), F(0), F(1)),
        ),
        rhs=(F(1), F(1), F(1)),
        sense=Sense.MIN,
    )
    solution = lp_solve(lp)
    assert solution.status is LpStatus.OPTIMAL
    assert solution.value == F(1, 2)
    assert solution.point == (F(1, 2), F(1, 2), F(1, 2))
    assert solution.pivots <= comb(6, 3) + comb(3, 3) + 3


def test_classic_cycling_instance_terminates():
    # a textbook degenerate instance that cycles under naive pivoting;
    # slacks included so the equality form matches the original bounds
    lp = LinearProgram(
        objective=(F(-3, 4), F(150), F(-1, 50), F(6), F(0), F(0), F(0)),
        matrix=(
            (F(1, 4), F(-60), F(-1, 25), F(9), F(1), F(0), F(0)),
            (F(1, 2), F(-90), F(-1, 50), F(3), F(0), F(1), F(0)),
            (F(0), F(0), F(1), F(0), F(0), F(0), F(1)),
        ),
        rhs=(F(0), F(0), F(1)),
        sense=Sense.MIN,
    )
    solution = lp_solve(lp)
    assert solution.status is LpStatus.OPTIMAL
    assert solution.pivots <= comb(10, 3) + comb(7, 3) + 3
    feasible, best = lp_oracle(lp)
    assert feasible and solution.value == best


def test_redundant_constraints_are_harmless():
    # the second row repeats the first; the artificial basis must drain
    lp = LinearProgram(
        objective=(F(1), F(2)),
        matrix=((F(1), F(1)), (F(2), F(2))),
        rhs=(F(1), F(2)),
        sense=Sense.MIN,
    )
    solution = lp_solve(lp)
    assert solution.status is LpStatus.OPTIMAL
    assert solution.value == 1
    assert solution.point == (F(1), F(0))


def test_zero_rows_with_zero_rhs_are_dropped():
    lp = LinearProgram(
        objective=(F(1),),
        matrix=((F(0),), (F(1),)),
        rhs=(F(0), F(2)),
        sense=Sense.MAX,
    )
    solution = lp_solve(lp)
    assert solution.status is LpStatus.OPTIMAL
    assert solution.point == (F(2),)


def test_enumeration_oracle_sees_the_blend_vertices():
    points = enumerate_basic_points(blend_program(Sense.MIN))
    assert (F(2, 5), F(3, 5), F(0)) in points
    assert (F(4, 7), F(0), F(3, 7)) in points
    assert len(points) == 2  # the third basis pair is infeasible


def test_random_programs_match_the_enumeration_oracle():
    rng = random.Random("lp-unit")
    for i in range(120):
        failures = _check_lp_against_oracle(rand_lp(rng), f"case {i}")
        assert not failures, failures


def test_min_equals_negated_max():
    rng = random.Random("lp-minmax")
    for _ in range(60):
        lp = rand_lp(rng)
        flipped = LinearProgram(
            objective=tuple(-c for c in lp.objective),
            matrix=lp.matrix,
            rhs=lp.rhs,
            sense=Sense.MAX if lp.sense is Sense.MIN else Sense.MIN,
        )
        a, b = lp_solve(lp), lp_solve(flipped)
        assert a.status == b.status
        if a.status is LpStatus.OPTIMAL:
            assert a.value == -b.value
