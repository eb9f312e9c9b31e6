import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from balancegraph import Field, WeightedGraph

Q = Field.rationals()
F2, F3, F5 = Field.prime(2), Field.prime(3), Field.prime(5)


def graph(field, n, edges):
    return WeightedGraph(field, n, edges)


def random_scalar(field, rng, lo=-5, hi=5):
    if field.is_finite:
        return field(rng.randrange(field.p))
    return field(Fraction(rng.randint(lo, hi), rng.randint(1, 4)))


def random_graph(field, n, rng, density=0.6):
    edges = {}
    for e in itertools.combinations(range(1, n + 1), 2):
        if rng.random() < density:
            edges[e] = random_scalar(field, rng)
    return WeightedGraph(field, n, edges)


def random_labeling(field, n, rng):
    return tuple((random_scalar(field, rng), random_scalar(field, rng)) for _ in range(n))


def induced_weights(field, n, labels, pairs=None):
    pairs = pairs if pairs is not None else itertools.combinations(range(1, n + 1), 2)
    out = {}
    for i, j in pairs:
        (ai, bi), (aj, bj) = labels[i - 1], labels[j - 1]
        out[(i, j)] = ai * bj - aj * bi
    return out


@pytest.fixture
def rng():
    return random.Random(20261016)


fields = st.sampled_from([F2, F3, F5, Field.prime(101), Q])


@st.composite
def scalars(draw, field):
    if field.is_finite:
        return field(draw(st.integers(0, field.p - 1)))
    return field(Fraction(draw(st.integers(-20, 20)), draw(st.integers(1, 9))))


@st.composite
def graphs(draw, field=None, max_n=5):
    field = field or draw(fields)
    n = draw(st.integers(1, max_n))
    edges = {}
    for e in itertools.combinations(range(1, n + 1), 2):
        if draw(st.booleans()):
            edges[e] = draw(scalars(field))
    return WeightedGraph(field, n, edges)


@st.composite
def permutations_of(draw, n):
    from balancegraph import Permutation

    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))
