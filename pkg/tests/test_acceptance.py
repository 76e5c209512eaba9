"""Acceptance gate: every criterion at its stated budget, exact comparisons.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  All value assertions are exact rational equality; the only
tolerances here are the two wall-clock budgets.
"""
import time
from contextlib import contextmanager
from fractions import Fraction as F

from giryq import (
    Dist,
    FiniteSpace,
    Kernel,
    Predicate,
    exists_lifted,
    expectation,
    forall_lifted,
    lift,
)
from giryq.laws import run_suite

SEED = 0


@contextmanager
def criterion(number, description):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {number} FAIL: {description}")
        raise
    print(
        f"criterion {number} PASS: {description} "
        f"({time.perf_counter() - start:.2f}s)"
    )


def _assert_suite(number, description, name, cases):
    with criterion(number, description):
        report = run_suite(name, seed=SEED, cases=cases)
        assert report.passed, report.failures


def test_criterion_1_blend_reproduction_exact():
    with criterion(1, "exact argmin/argmax reproduction on the 3-to-2 channel"):
        start = time.perf_counter()
        source = FiniteSpace("X", ("x1", "x2", "x3"))
        target = FiniteSpace("Y", ("y1", "y2"))
        channel = Kernel(
            source,
            target,
            (
                Dist(target, (F(1), F(0))),
                Dist(target, (F(1, 2), F(1, 2))),
                Dist(target, (F(3, 10), F(7, 10))),
            ),
        )
        gain = Predicate(source, (F(1, 2), F(3, 5), F(9, 10)))
        query = Dist(target, (F(7, 10), F(3, 10)))

        lo = forall_lifted(channel, gain, query)
        hi = exists_lifted(channel, gain, query)
        assert lo.value == F(14, 25)
        assert hi.value == F(47, 70)

        apply_f = lift(channel)
        for result in (lo, hi):
            assert result.feasible
            assert apply_f(result.witness) == query
            assert expectation(gain, result.witness) == result.value

        # the known optimal vertices are feasible and achieve the optima
        argmin = Dist(source, (F(2, 5), F(3, 5), F(0)))
        argmax = Dist(source, (F(4, 7), F(0), F(3, 7)))
        assert apply_f(argmin) == query and expectation(gain, argmin) == lo.value
        assert apply_f(argmax) == query and expectation(gain, argmax) == hi.value

        assert time.perf_counter() - start < 1.0


def test_criterion_2_category_laws():
    with criterion(2, "associativity and unit laws on 200 random kernels"):
        start = time.perf_counter()
        report = run_suite("monad_laws", seed=SEED, cases=200)
        assert report.passed, report.failures
        assert time.perf_counter() - start < 10.0


def test_criterion_3_determinism_characterization():
    _assert_suite(
        3,
        "function round-trip and the 0/1-entry characterization, 200 cases",
        "determinism",
        200,
    )


def test_criterion_4_adjunction_unit_counit():
    _assert_suite(
        4,
        "pointwise quantifier sandwich in both regimes, 200 cases",
        "adjunction",
        200,
    )


def test_criterion_5_galois_equivalences():
    _assert_suite(
        5,
        "both Galois equivalences plus crafted falsifiers, 200 cases",
        "galois",
        200,
    )


def test_criterion_6_composite_law():
    _assert_suite(
        6,
        "staged chain evaluation equals direct quantification, 100 cases",
        "composites",
        100,
    )


def test_criterion_7_continuity_and_metric():
    _assert_suite(
        7,
        "lifted maps are metric-nonexpanding; metric oracle agreement, 500 cases",
        "continuity",
        500,
    )


def test_criterion_8_lp_oracle_equivalence():
    _assert_suite(
        8,
        "solver matches basic-solution enumeration on 300 random programs",
        "lp_oracle",
        300,
    )
