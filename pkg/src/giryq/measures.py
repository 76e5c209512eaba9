"""Finite measurable spaces, exact distributions, and the total-variation metric.

Everything here is computed in exact rational arithmetic
(:class:`fractions.Fraction`); there is no floating point anywhere in the
core.  Values are immutable after construction and safe to share between
threads.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .errors import (
    DimensionMismatchError,
    DuplicateAtomError,
    MassNotOneError,
    NegativeWeightError,
    RationalFormatError,
    SpaceMismatchError,
)

# The single scalar type of the library: arbitrary-precision rationals,
# always in lowest terms with a positive denominator.
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal of the form ``"n"`` or ``"n/d"``.

    Decimal notation is rejected: file formats carry exact rationals only.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise RationalFormatError(
            f"not a rational literal (expected 'n' or 'n/d'): {text!r}"
        )
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise RationalFormatError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Render a rational as ``"n"`` or ``"n/d"`` (inverse of :func:`parse_rational`)."""
    return str(Fraction(value))


@dataclass(frozen=True)
class FiniteSpace:
    """A named finite measurable space with the power-set sigma-algebra.

    The declaration order of ``points`` is canonical: it fixes matrix layout
    for kernels and tie-breaking for quantifier witnesses.
    """

    name: str
    points: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if len(set(self.points)) != len(self.points):
            raise DuplicateAtomError(
                f"space {self.name!r} has repeated point labels"
            )

    def __len__(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        """Position of a point label in declaration order."""
        try:
            return self.points.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a point of space {self.name!r}") from None

    def __repr__(self) -> str:
        return f"FiniteSpace({self.name!r}, {self.points!r})"


def _as_fractions(weights: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    return tuple(Fraction(w) for w in weights)


@dataclass(frozen=True)
class Dist:
    """A probability distribution on a :class:`FiniteSpace`.

    Weights are one exact rational per point, each >= 0, summing to exactly 1.
    Two distributions are equal iff they live on the same space and have
    componentwise-equal weights.
    """

    space: FiniteSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _as_fractions(self.weights))
        if len(self.weights) != len(self.space):
            raise DimensionMismatchError(
                f"{len(self.weights)} weights for the {len(self.space)} points "
                f"of space {self.space.name!r}"
            )
        for label, w in zip(self.space.points, self.weights):
            if w < 0:
                raise NegativeWeightError(
                    f"weight of point {label!r} is negative: {w}"
                )
        total = sum(self.weights, ZERO)
        if total != 1:
            raise MassNotOneError(
                f"weights on space {self.space.name!r} sum to {total}, expected 1"
            )

    @classmethod
    def dirac(cls, space: FiniteSpace, label: str) -> "Dist":
        """The point mass at ``label``."""
        i = space.index(label)
        return cls(space, tuple(ONE if j == i else ZERO for j in range(len(space))))

    @classmethod
    def uniform(cls, space: FiniteSpace) -> "Dist":
        n = len(space)
        return cls(space, tuple(Fraction(1, n) for _ in range(n)))

    def weight_of(self, label: str) -> Fraction:
        """Probability of the singleton ``{label}``."""
        return self.weights[self.space.index(label)]

    def mass(self, labels: Iterable[str]) -> Fraction:
        """Probability of the event given as a set of point labels."""
        return sum((self.weight_of(x) for x in set(labels)), ZERO)

    def support(self) -> tuple[str, ...]:
        return tuple(
            x for x, w in zip(self.space.points, self.weights) if w > 0
        )

    def __sub__(self, other: "Dist") -> "SignedMeasure":
        if self.space != other.space:
            raise SpaceMismatchError(
                f"cannot subtract a distribution on {other.space.name!r} "
                f"from one on {self.space.name!r}"
            )
        return SignedMeasure(
            self.space,
            tuple(a - b for a, b in zip(self.weights, other.weights)),
        )

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(w) for w in self.weights) + ")"


@dataclass(frozen=True)
class SignedMeasure:
    """A finite signed measure: one rational weight of any sign per point.

    The difference of two distributions on the same space has total mass 0.
    """

    space: FiniteSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _as_fractions(self.weights))
        if len(self.weights) != len(self.space):
            raise DimensionMismatchError(
                f"{len(self.weights)} weights for the {len(self.space)} points "
                f"of space {self.space.name!r}"
            )

    def total_mass(self) -> Fraction:
        return sum(self.weights, ZERO)


def tv_norm(m: SignedMeasure) -> Fraction:
    """Total variation of a signed measure: the sum of absolute weights."""
    return sum((abs(w) for w in m.weights), ZERO)


def tv_metric(r: Dist, q: Dist) -> Fraction:
    """Total-variation distance between two distributions on one space.

    This is the largest deviation ``|r(B) - q(B)|`` over all events ``B``.
    The maximum is attained at the set of points where ``r`` exceeds ``q``,
    so a single pass suffices; it also equals half of ``tv_norm(r - q)``.
    """
    if r.space != q.space:
        raise SpaceMismatchError(
            f"distributions live on different spaces: "
            f"{r.space.name!r} vs {q.space.name!r}"
        )
    return sum(
        (rw - qw for rw, qw in zip(r.weights, q.weights) if rw > qw), ZERO
    )


class FinSuppMeasure:
    """A finitely supported probability measure over arbitrary hashable atoms.

    Atoms may be point labels or whole :class:`Dist` values (a measure over
    distributions).  Zero-weight atoms are pruned on construction so that
    support equality is well-defined; equality disregards atom order.
    """

    __slots__ = ("atoms", "weights", "_pairs")

    atoms: tuple[Hashable, ...]
    weights: tuple[Fraction, ...]

    def __init__(
        self,
        atoms: Sequence[Hashable],
        weights: Sequence[Fraction | int],
    ) -> None:
        atoms = tuple(atoms)
        fw = _as_fractions(weights)
        if len(atoms) != len(fw):
            raise DimensionMismatchError(
                f"{len(atoms)} atoms but {len(fw)} weights"
            )
        if len(set(atoms)) != len(atoms):
            raise DuplicateAtomError("atoms are not pairwise distinct")
        for a, w in zip(atoms, fw):
            if w < 0:
                raise NegativeWeightError(f"weight of atom {a!r} is negative: {w}")
        total = sum(fw, ZERO)
        if total != 1:
            raise MassNotOneError(f"weights sum to {total}, expected 1")
        kept = tuple((a, w) for a, w in zip(atoms, fw) if w > 0)
        self.atoms = tuple(a for a, _ in kept)
        self.weights = tuple(w for _, w in kept)
        self._pairs = frozenset(kept)

    @classmethod
    def dirac(cls, atom: Hashable) -> "FinSuppMeasure":
        return cls((atom,), (ONE,))

    @classmethod
    def from_dist(cls, dist: Dist) -> "FinSuppMeasure":
        """Reread a distribution as a measure over its own point labels."""
        return cls(dist.space.points, dist.weights)

    def weight_of(self, atom: Hashable) -> Fraction:
        for a, w in zip(self.atoms, self.weights):
            if a == atom:
                return w
        return ZERO

    def map(self, fn: Callable[[Hashable], Hashable]) -> "FinSuppMeasure":
        """Image measure under ``fn``; atoms with equal images merge."""
        merged: dict[Hashable, Fraction] = {}
        for a, w in zip(self.atoms, self.weights):
            image = fn(a)
            merged[image] = merged.get(image, ZERO) + w
        return FinSuppMeasure(tuple(merged.keys()), tuple(merged.values()))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(zip(self.atoms, self.weights))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinSuppMeasure):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{a!r}: {format_rational(w)}" for a, w in zip(self.atoms, self.weights)
        )
        return f"FinSuppMeasure({{{inner}}})"
