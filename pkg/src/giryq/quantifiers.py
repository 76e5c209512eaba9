"""Probabilistic existential and universal quantifiers along a kernel.

Both quantifiers ask about the preimage of a query distribution and come in
two regimes:

* the fiber regime enumerates source points whose row equals the query
  exactly and takes the best predicate value over that fiber;
* the lifted regime quantifies along the induced map on distributions,
  whose fibers are polytopes, so the optimum is an exact linear program.

Empty fibers follow the extension conventions: an existential over nothing
is 0, a universal over nothing is 1.  ``check_adjunction_bounds`` and
``check_galois`` verify the order-theoretic laws these conventions are
designed to satisfy; ``exists_composite``/``forall_composite`` evaluate a
two-kernel chain by staged nesting through finitely supported intermediate
measures.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .errors import ProbeSetIncompleteError, SpaceMismatchError
from .kernels import Kernel, image_measure, lift, mixture
from .lp import LinearProgram, LpStatus, Sense, lp_solve
from .measures import ONE, ZERO, Dist, FinSuppMeasure
from .predicates import Predicate, SimplexPredicate, entails, expectation, substitute


class Regime(enum.Enum):
    COUNTABLE = "COUNTABLE"
    LP = "LP"


@dataclass(frozen=True)
class QuantifierResult:
    """Value of a quantifier at one query distribution.

    ``witness`` is the fiber element achieving the value: a source point
    label in the fiber regime, a distribution over source points in the
    lifted regime, or None when the query is unreachable and the extension
    convention supplied the value (``feasible`` False).
    """

    value: Fraction
    witness: Union[str, Dist, None]
    regime: Regime
    feasible: bool


def _check_query(kernel: Kernel, pred: Predicate, query: Dist) -> None:
    if pred.space != kernel.source:
        raise SpaceMismatchError(
            f"predicate on {pred.space.name!r}, "
            f"kernel starts at {kernel.source.name!r}"
        )
    if query.space != kernel.target:
        raise SpaceMismatchError(
            f"query on {query.space.name!r}, "
            f"kernel lands in {kernel.target.name!r}"
        )


def _fiber_opt(
    candidates: Iterable[tuple[str, Fraction]], better: Callable[[Fraction, Fraction], bool]
) -> Optional[tuple[str, Fraction]]:
    """First strictly-best candidate in iteration order, or None if empty."""
    best: Optional[tuple[str, Fraction]] = None
    for label, value in candidates:
        if best is None or better(value, best[1]):
            best = (label, value)
    return best


def exists_fiber(kernel: Kernel, pred: Predicate, query: Dist) -> QuantifierResult:
    """Existential over the exact fiber: the largest predicate value among
    source points whose row equals the query.

    An empty fiber yields 0 with ``feasible`` False.  Ties go to the first
    maximizing point in declaration order.
    """
    _check_query(kernel, pred, query)
    best = _fiber_opt(
        (
            (x, pred.value_at(x))
            for x in kernel.source.points
            if kernel.row(x) == query
        ),
        lambda a, b: a > b,
    )
    if best is None:
        return QuantifierResult(ZERO, None, Regime.COUNTABLE, False)
    return QuantifierResult(best[1], best[0], Regime.COUNTABLE, True)


def forall_fiber(kernel: Kernel, pred: Predicate, query: Dist) -> QuantifierResult:
    """Universal over the exact fiber; an empty fiber yields 1."""
    _check_query(kernel, pred, query)
    best = _fiber_opt(
        (
            (x, pred.value_at(x))
            for x in kernel.source.points
            if kernel.row(x) == query
        ),
        lambda a, b: a < b,
    )
    if best is None:
        return QuantifierResult(ONE, None, Regime.COUNTABLE, False)
    return QuantifierResult(best[1], best[0], Regime.COUNTABLE, True)


def _lifted_program(kernel: Kernel, pred: Predicate, query: Dist, sense: Sense) -> LinearProgram:
    # one equality per target point: the mixture of rows must hit the query.
    # total mass 1 is implied because every matrix column sums to 1.
    columns = kernel.matrix()
    matrix = tuple(
        tuple(columns[i][j] for i in range(len(kernel.source)))
        for j in range(len(kernel.target))
    )
    return LinearProgram(
        objective=tuple(pred.values),
        matrix=matrix,
        rhs=tuple(query.weights),
        sense=sense,
    )


def _lifted(
    kernel: Kernel,
    pred: Predicate,
    query: Dist,
    sense: Sense,
    empty_value: Fraction,
) -> QuantifierResult:
    _check_query(kernel, pred, query)
    solution = lp_solve(_lifted_program(kernel, pred, query, sense))
    if solution.status is LpStatus.INFEASIBLE:
        return QuantifierResult(empty_value, None, Regime.LP, False)
    # the feasible set sits inside the probability simplex, so the program
    # can never be unbounded
    assert solution.status is LpStatus.OPTIMAL
    witness = Dist(kernel.source, solution.point)
    assert lift(kernel)(witness) == query
    assert expectation(pred, witness) == solution.value
    return QuantifierResult(solution.value, witness, Regime.LP, True)


def exists_lifted(kernel: Kernel, pred: Predicate, query: Dist) -> QuantifierResult:
    """Existential along the lifted kernel: the maximum expectation of the
    predicate over all source distributions that the kernel maps onto the
    query.  Unreachable queries yield 0 with ``feasible`` False.
    """
    return _lifted(kernel, pred, query, Sense.MAX, ZERO)


def forall_lifted(kernel: Kernel, pred: Predicate, query: Dist) -> QuantifierResult:
    """Universal along the lifted kernel: the minimum expectation over the
    same fiber polytope.  Unreachable queries yield 1.
    """
    return _lifted(kernel, pred, query, Sense.MIN, ONE)


def exists_at(
    kernel: Kernel, pred: Predicate, query: Dist, regime: Regime
) -> QuantifierResult:
    return (
        exists_fiber(kernel, pred, query)
        if regime is Regime.COUNTABLE
        else exists_lifted(kernel, pred, query)
    )


def forall_at(
    kernel: Kernel, pred: Predicate, query: Dist, regime: Regime
) -> QuantifierResult:
    return (
        forall_fiber(kernel, pred, query)
        if regime is Regime.COUNTABLE
        else forall_lifted(kernel, pred, query)
    )


@dataclass(frozen=True)
class PointBounds:
    """Quantifier bounds at the image of one source point."""

    point: str
    predicate_value: Fraction
    exists_value: Fraction
    forall_value: Fraction

    @property
    def unit_ok(self) -> bool:
        return self.predicate_value <= self.exists_value

    @property
    def counit_ok(self) -> bool:
        return self.forall_value <= self.predicate_value

    @property
    def exists_margin(self) -> Fraction:
        return self.exists_value - self.predicate_value

    @property
    def forall_margin(self) -> Fraction:
        return self.predicate_value - self.forall_value


@dataclass(frozen=True)
class AdjunctionReport:
    """Per-point unit/counit inequalities for one kernel and predicate.

    At every source point x the existential at the image of x must
    dominate the predicate, and the universal must be dominated by it.
    """

    regime: Regime
    rows: tuple[PointBounds, ...]

    @property
    def ok(self) -> bool:
        return all(r.unit_ok and r.counit_ok for r in self.rows)

    def failures(self) -> list[str]:
        out = []
        for r in self.rows:
            if not r.unit_ok:
                out.append(
                    f"{r.point}: predicate {r.predicate_value} exceeds "
                    f"existential bound {r.exists_value}"
                )
            if not r.counit_ok:
                out.append(
                    f"{r.point}: universal bound {r.forall_value} exceeds "
                    f"predicate {r.predicate_value}"
                )
        return out


def check_adjunction_bounds(
    kernel: Kernel, pred: Predicate, regime: Regime
) -> AdjunctionReport:
    """Evaluate both quantifiers at the image of every source point and
    report the sandwich ``forall <= predicate <= exists`` pointwise.
    """
    rows = []
    for x in kernel.source.points:
        query = kernel.row(x)
        rows.append(
            PointBounds(
                point=x,
                predicate_value=pred.value_at(x),
                exists_value=exists_at(kernel, pred, query, regime).value,
                forall_value=forall_at(kernel, pred, query, regime).value,
            )
        )
    return AdjunctionReport(regime=regime, rows=tuple(rows))


@dataclass(frozen=True)
class GaloisReport:
    """Both Galois equivalences over a probe set.

    The existential direction compares ``pred <= pullback of h`` with
    ``existential <= h`` at every probe; the universal direction compares
    ``pullback of h <= pred`` with ``h <= universal`` at every probe.
    Each side of each equivalence is reported so a failure is attributable.
    """

    exists_premise: bool
    exists_conclusion: bool
    forall_premise: bool
    forall_conclusion: bool

    @property
    def exists_equivalent(self) -> bool:
        return self.exists_premise == self.exists_conclusion

    @property
    def forall_equivalent(self) -> bool:
        return self.forall_premise == self.forall_conclusion

    @property
    def ok(self) -> bool:
        return self.exists_equivalent and self.forall_equivalent


def check_galois(
    kernel: Kernel,
    pred: Predicate,
    h: SimplexPredicate,
    probes: Sequence[Dist],
) -> GaloisReport:
    """Check both adjunction equivalences over a finite probe set.

    The probe set must contain every row of the kernel (its image);
    off-image probes are harmless because the extension conventions make
    the existential 0 and the universal 1 there.
    """
    probes = list(probes)
    for x in kernel.source.points:
        if kernel.row(x) not in probes:
            raise ProbeSetIncompleteError(
                f"probe set misses the image of {x!r}: {kernel.row(x)}"
            )
    pullback = substitute(h, kernel)
    return GaloisReport(
        exists_premise=entails(pred, pullback),
        exists_conclusion=all(
            exists_fiber(kernel, pred, q).value <= h(q) for q in probes
        ),
        forall_premise=entails(pullback, pred),
        forall_conclusion=all(
            h(q) <= forall_fiber(kernel, pred, q).value for q in probes
        ),
    )


def _composite_stages(
    inner: Kernel,
    outer: Kernel,
    pred: Predicate,
    better: Callable[[Fraction, Fraction], bool],
) -> dict[Dist, tuple[Fraction, str]]:
    """Nest a quantifier through the chain point -> row -> spread -> mixture.

    Stage 1 optimizes the predicate over the fiber of each reachable row;
    stage 2 pushes each row through the outer kernel's row map, giving a
    finitely supported measure over distributions, and merges fibers of
    that map; stage 3 collapses each such measure to its mixture and merges
    again.  Unreachable intermediate values never arise: off-image points
    carry the extension constant, which can never beat an occupied fiber in
    the direction being optimized, so only reachable intermediates matter.
    """

    def merge(
        table: dict, key, value: Fraction, witness: str
    ) -> None:
        if key not in table or better(value, table[key][0]):
            table[key] = (value, witness)

    stage1: dict[Dist, tuple[Fraction, str]] = {}
    for x in inner.source.points:
        merge(stage1, inner.row(x), pred.value_at(x), x)

    stage2: dict[FinSuppMeasure, tuple[Fraction, str]] = {}
    for row, (value, witness) in stage1.items():
        merge(stage2, image_measure(outer, row), value, witness)

    stage3: dict[Dist, tuple[Fraction, str]] = {}
    for spread, (value, witness) in stage2.items():
        merge(stage3, mixture(spread), value, witness)
    return stage3


def _composite(
    inner: Kernel,
    outer: Kernel,
    pred: Predicate,
    query: Dist,
    better: Callable[[Fraction, Fraction], bool],
    empty_value: Fraction,
) -> QuantifierResult:
    if pred.space != inner.source:
        raise SpaceMismatchError(
            f"predicate on {pred.space.name!r}, "
            f"chain starts at {inner.source.name!r}"
        )
    if inner.target != outer.source:
        raise SpaceMismatchError(
            f"cannot chain: inner lands in {inner.target.name!r}, "
            f"outer starts at {outer.source.name!r}"
        )
    if query.space != outer.target:
        raise SpaceMismatchError(
            f"query on {query.space.name!r}, "
            f"chain lands in {outer.target.name!r}"
        )
    stage3 = _composite_stages(inner, outer, pred, better)
    if query not in stage3:
        return QuantifierResult(empty_value, None, Regime.COUNTABLE, False)
    value, witness = stage3[query]
    return QuantifierResult(value, witness, Regime.COUNTABLE, True)


def exists_composite(
    inner: Kernel, outer: Kernel, pred: Predicate, query: Dist
) -> QuantifierResult:
    """Existential along a two-kernel chain, evaluated by staged nesting.

    Agrees exactly with :func:`exists_fiber` along the composed kernel;
    the staged route exercises the intermediate finitely supported
    measures rather than composing first.
    """
    return _composite(inner, outer, pred, query, lambda a, b: a > b, ZERO)


def forall_composite(
    inner: Kernel, outer: Kernel, pred: Predicate, query: Dist
) -> QuantifierResult:
    """Universal along a two-kernel chain by the same staged nesting."""
    return _composite(inner, outer, pred, query, lambda a, b: a < b, ONE)
