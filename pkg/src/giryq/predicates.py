"""Probabilistic predicates, entailment, and predicates on the simplex.

A predicate assigns a truth value in [0, 1] to each point of a finite
space.  Entailment is the pointwise order.  Predicates on the simplex of
distributions come in exactly two representable fragments: the expectation
lift of a base predicate, and a finite probe table with an explicit
default.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    DimensionMismatchError,
    DuplicateAtomError,
    SpaceMismatchError,
    ValueOutOfRangeError,
)
from .kernels import Kernel
from .measures import ZERO, Dist, FiniteSpace, _as_fractions


def _check_unit_interval(value: Fraction, what: str) -> None:
    if value < 0 or value > 1:
        raise ValueOutOfRangeError(f"{what} lies outside [0, 1]: {value}")


@dataclass(frozen=True)
class Predicate:
    """A [0, 1]-valued map on a finite space, one rational per point."""

    space: FiniteSpace
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _as_fractions(self.values))
        if len(self.values) != len(self.space):
            raise DimensionMismatchError(
                f"{len(self.values)} values for the {len(self.space)} points "
                f"of space {self.space.name!r}"
            )
        for label, v in zip(self.space.points, self.values):
            _check_unit_interval(v, f"value at {label!r}")

    @classmethod
    def constant(cls, space: FiniteSpace, value: Fraction | int) -> "Predicate":
        v = Fraction(value)
        return cls(space, tuple(v for _ in range(len(space))))

    def value_at(self, label: str) -> Fraction:
        return self.values[self.space.index(label)]

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def entails(lower: Predicate, upper: Predicate) -> bool:
    """Pointwise order: ``lower(x) <= upper(x)`` at every point.

    Read as "``upper`` is at least as true as ``lower``".
    """
    if lower.space != upper.space:
        raise SpaceMismatchError(
            f"predicates live on different spaces: "
            f"{lower.space.name!r} vs {upper.space.name!r}"
        )
    return all(a <= b for a, b in zip(lower.values, upper.values))


def expectation(pred: Predicate, dist: Dist) -> Fraction:
    """Expected truth value of a predicate under a distribution."""
    if pred.space != dist.space:
        raise SpaceMismatchError(
            f"predicate on {pred.space.name!r}, "
            f"distribution on {dist.space.name!r}"
        )
    return sum((w * v for w, v in zip(dist.weights, pred.values)), ZERO)


@dataclass(frozen=True)
class LiftedPredicate:
    """The expectation lift of a base predicate to the simplex.

    Evaluation at a distribution is the expectation of the base predicate,
    so values stay in [0, 1] by convexity.
    """

    base: Predicate

    @property
    def space(self) -> FiniteSpace:
        return self.base.space

    def __call__(self, dist: Dist) -> Fraction:
        return expectation(self.base, dist)


class TableSimplexPredicate:
    """A simplex predicate given by a finite probe table plus a default.

    Evaluation looks the query distribution up among the probes (exact
    equality) and falls back to the explicit default elsewhere.  The
    default is mandatory: which constant extension is appropriate depends
    on the use, so it is never implied.
    """

    __slots__ = ("space", "entries", "default")

    def __init__(
        self,
        space: FiniteSpace,
        entries: tuple[tuple[Dist, Fraction], ...],
        default: Fraction | int,
    ) -> None:
        self.space = space
        self.entries = tuple((d, Fraction(v)) for d, v in entries)
        self.default = Fraction(default)
        probes = [d for d, _ in self.entries]
        if len(set(probes)) != len(probes):
            raise DuplicateAtomError("probe table lists a distribution twice")
        for d, v in self.entries:
            if d.space != space:
                raise SpaceMismatchError(
                    f"probe {d} lives on {d.space.name!r}, expected {space.name!r}"
                )
            _check_unit_interval(v, f"table value at {d}")
        _check_unit_interval(self.default, "table default")

    def __call__(self, dist: Dist) -> Fraction:
        for probe, value in self.entries:
            if probe == dist:
                return value
        return self.default

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TableSimplexPredicate):
            return NotImplemented
        return (
            self.space == other.space
            and self.entries == other.entries
            and self.default == other.default
        )

    def __repr__(self) -> str:
        return (
            f"TableSimplexPredicate({self.space.name!r}, "
            f"{len(self.entries)} probes, default={self.default})"
        )


SimplexPredicate = Union[LiftedPredicate, TableSimplexPredicate]


def substitute(h: SimplexPredicate, kernel: Kernel) -> Predicate:
    """Pull a simplex predicate back along a kernel.

    The result evaluates ``h`` at each row distribution of the kernel:
    ``x -> h(kernel(x))``.
    """
    if h.space != kernel.target:
        raise SpaceMismatchError(
            f"simplex predicate on {h.space.name!r}, "
            f"kernel lands in {kernel.target.name!r}"
        )
    return Predicate(kernel.source, tuple(h(row) for row in kernel.rows))
