"""Hypothesis strategies generating exact-rational instances."""
from fractions import Fraction

import hypothesis.strategies as st

from giryq import Dist, FiniteSpace, Kernel, Predicate


def spaces(tag="S", min_size=1, max_size=5):
    return st.integers(min_value=min_size, max_value=max_size).map(
        lambda n: FiniteSpace(tag, tuple(f"{tag.lower()}{i + 1}" for i in range(n)))
    )


@st.composite
def dists(draw, space):
    n = len(space)
    parts = draw(
        st.lists(st.integers(min_value=0, max_value=8), min_size=n, max_size=n)
    )
    if not any(parts):
        parts[draw(st.integers(min_value=0, max_value=n - 1))] = 1
    total = sum(parts)
    return Dist(space, tuple(Fraction(p, total) for p in parts))


@st.composite
def dist_pairs(draw, tag="S", max_size=5):
    space = draw(spaces(tag, max_size=max_size))
    return draw(dists(space)), draw(dists(space))


@st.composite
def dist_triples(draw, tag="S", max_size=5):
    space = draw(spaces(tag, max_size=max_size))
    return tuple(draw(dists(space)) for _ in range(3))


@st.composite
def predicates(draw, space):
    values = []
    for _ in space.points:
        den = draw(st.integers(min_value=1, max_value=6))
        values.append(Fraction(draw(st.integers(min_value=0, max_value=den)), den))
    return Predicate(space, tuple(values))


@st.composite
def kernels(draw, source, target):
    return Kernel(
        source, target, tuple(draw(dists(target)) for _ in source.points)
    )


@st.composite
def kernel_chains(draw, max_size=4):
    """Three composable kernels between four random spaces."""
    sa = draw(spaces("A", max_size=max_size))
    sb = draw(spaces("B", max_size=max_size))
    sc = draw(spaces("C", max_size=max_size))
    sd = draw(spaces("D", max_size=max_size))
    return (
        draw(kernels(sa, sb)),
        draw(kernels(sb, sc)),
        draw(kernels(sc, sd)),
    )
