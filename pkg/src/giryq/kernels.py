"""Markov kernels between finite spaces and their category operations.

A kernel ``X -> Y`` assigns one distribution on ``Y`` to each point of ``X``
(a row-stochastic rational matrix, rows in declaration point order).
Composition integrates the second kernel against the first; deterministic
kernels are exactly the ones induced by plain point functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import (
    DimensionMismatchError,
    NotDeterministicError,
    SpaceMismatchError,
)
from .measures import ZERO, Dist, FinSuppMeasure, FiniteSpace


@dataclass(frozen=True)
class Kernel:
    """A Markov kernel: one row distribution on ``target`` per source point."""

    source: FiniteSpace
    target: FiniteSpace
    rows: tuple[Dist, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != len(self.source):
            raise DimensionMismatchError(
                f"{len(self.rows)} rows for the {len(self.source)} points "
                f"of space {self.source.name!r}"
            )
        for label, row in zip(self.source.points, self.rows):
            if row.space != self.target:
                raise SpaceMismatchError(
                    f"row of {label!r} lives on {row.space.name!r}, "
                    f"expected {self.target.name!r}"
                )

    def row(self, label: str) -> Dist:
        """The distribution this kernel assigns to a source point."""
        return self.rows[self.source.index(label)]

    def __call__(self, label: str) -> Dist:
        return self.row(label)

    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Row-major stochastic matrix (row = source point, column = target point)."""
        return tuple(r.weights for r in self.rows)


@dataclass(frozen=True)
class PointFunction:
    """A total function between the points of two finite spaces.

    ``assignment[i]`` is the target label of the i-th source point.
    """

    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != len(self.source):
            raise DimensionMismatchError(
                f"{len(self.assignment)} assignments for the "
                f"{len(self.source)} points of space {self.source.name!r}"
            )
        for y in self.assignment:
            self.target.index(y)

    def __call__(self, label: str) -> str:
        return self.assignment[self.source.index(label)]

    def compose(self, inner: "PointFunction") -> "PointFunction":
        """Ordinary function composition ``self . inner``."""
        if inner.target != self.source:
            raise SpaceMismatchError(
                f"cannot compose: inner lands in {inner.target.name!r}, "
                f"outer starts at {self.source.name!r}"
            )
        return PointFunction(
            inner.source,
            self.target,
            tuple(self(y) for y in inner.assignment),
        )


def identity_kernel(space: FiniteSpace) -> Kernel:
    """The identity kernel: each point goes to its own point mass."""
    return Kernel(
        space, space, tuple(Dist.dirac(space, x) for x in space.points)
    )


def deterministic_kernel(fn: PointFunction) -> Kernel:
    """Embed a point function as the kernel sending ``x`` to the point mass at ``fn(x)``."""
    return Kernel(
        fn.source,
        fn.target,
        tuple(Dist.dirac(fn.target, y) for y in fn.assignment),
    )


def compose(outer: Kernel, inner: Kernel) -> Kernel:
    """Kernel composition ``outer . inner`` (first ``inner``, then ``outer``).

    The row at ``x`` averages the rows of ``outer`` with the weights of
    ``inner``'s row at ``x``; for finite spaces this is the stochastic
    matrix product.
    """
    if inner.target != outer.source:
        raise SpaceMismatchError(
            f"cannot compose: inner lands in {inner.target.name!r}, "
            f"outer starts at {outer.source.name!r}"
        )
    rows = []
    for in_row in inner.rows:
        weights = [ZERO] * len(outer.target)
        for w, out_row in zip(in_row.weights, outer.rows):
            if w == 0:
                continue
            for j, v in enumerate(out_row.weights):
                weights[j] += w * v
        rows.append(Dist(outer.target, tuple(weights)))
    return Kernel(inner.source, outer.target, tuple(rows))


def is_deterministic(kernel: Kernel) -> bool:
    """True iff every row entry is 0 or 1.

    On a finite space this is equivalent to every event probability being
    0 or 1 under every row.
    """
    return all(w == 0 or w == 1 for row in kernel.rows for w in row.weights)


def extract_point_function(kernel: Kernel) -> PointFunction:
    """Recover the unique point function underlying a deterministic kernel.

    Raises :class:`NotDeterministicError` if some row has a fractional entry.
    """
    if not is_deterministic(kernel):
        raise NotDeterministicError(
            "kernel has a fractional entry; no underlying point function"
        )
    assignment = []
    for row in kernel.rows:
        # deterministic + mass one forces exactly one unit entry per row
        assignment.append(row.space.points[row.weights.index(1)])
    return PointFunction(kernel.source, kernel.target, tuple(assignment))


def pushforward(fn: PointFunction, dist: Dist) -> Dist:
    """Image of a distribution under a point function.

    The weight at a target point is the summed weight of its preimage.
    """
    if dist.space != fn.source:
        raise SpaceMismatchError(
            f"distribution lives on {dist.space.name!r}, "
            f"function starts at {fn.source.name!r}"
        )
    weights = [ZERO] * len(fn.target)
    for y, w in zip(fn.assignment, dist.weights):
        weights[fn.target.index(y)] += w
    return Dist(fn.target, tuple(weights))


def image_measure(kernel: Kernel, dist: Dist) -> FinSuppMeasure:
    """Image of ``dist`` under the row map ``x -> kernel(x)``.

    The result is a finitely supported measure over distributions on the
    kernel's target; source points with equal rows merge.
    """
    if dist.space != kernel.source:
        raise SpaceMismatchError(
            f"distribution lives on {dist.space.name!r}, "
            f"kernel starts at {kernel.source.name!r}"
        )
    return FinSuppMeasure.from_dist(dist).map(lambda x: kernel.row(x))


def mixture(measure: FinSuppMeasure) -> Dist:
    """Collapse a finitely supported measure over distributions to its mixture.

    All atoms must be distributions on one common space; the weight at a
    point is the measure-weighted average of the atoms' weights there.
    """
    if not all(isinstance(atom, Dist) for atom in measure.atoms):
        raise SpaceMismatchError("every atom must be a distribution")
    spaces = {atom.space for atom in measure.atoms}
    if len(spaces) != 1:
        raise SpaceMismatchError(
            "atoms live on different spaces: "
            + ", ".join(sorted(s.name for s in spaces))
        )
    (space,) = spaces
    weights = [ZERO] * len(space)
    for atom, w in measure:
        for j, v in enumerate(atom.weights):
            weights[j] += w * v
    return Dist(space, tuple(weights))


def lift(kernel: Kernel) -> Callable[[Dist], Dist]:
    """Lift a kernel to a map between distributions.

    The lifted map sends ``P`` to the mixture of the kernel's rows weighted
    by ``P`` (a vector-matrix product); point masses go to their rows.
    """

    def apply(dist: Dist) -> Dist:
        if dist.space != kernel.source:
            raise SpaceMismatchError(
                f"distribution lives on {dist.space.name!r}, "
                f"kernel starts at {kernel.source.name!r}"
            )
        weights = [ZERO] * len(kernel.target)
        for w, row in zip(dist.weights, kernel.rows):
            if w == 0:
                continue
            for j, v in enumerate(row.weights):
                weights[j] += w * v
        return Dist(kernel.target, tuple(weights))

    return apply
