import random

import pytest
from hypothesis import strategies as st

from homclass.random_instances import random_structure, random_vocabulary
from homclass.structures import Structure, Vocabulary


@pytest.fixture
def rng():
    return random.Random(12345)


@st.composite
def structures(draw, max_n=4, max_arity=3, max_symbols=2, min_n=1):
    """Small random structures; symbols named R, S, T."""
    k = draw(st.integers(1, max_symbols))
    vocab = Vocabulary((name, draw(st.integers(1, max_arity))) for name in "RST"[:k])
    n = draw(st.integers(min_n, max_n))
    rels = {}
    for sym in vocab:
        tup = st.tuples(*[st.integers(0, n - 1)] * sym.arity)
        rels[sym.name] = draw(st.sets(tup, max_size=n + 2))
    return Structure(vocab, n, rels)


@st.composite
def graphs(draw, max_n=6, min_n=1):
    from homclass.structures import graph

    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph(n, [p for p, c in zip(pairs, chosen) if c])


def seeded_structure(seed, max_n=4):
    rng = random.Random(seed)
    return random_structure(rng, random_vocabulary(rng), rng.randint(1, max_n))


@st.composite
def structure_pairs(draw, max_a=3, max_b=3, max_arity=3):
    """``(a, b)`` over one random vocabulary."""
    a = draw(structures(max_n=max_a, max_arity=max_arity))
    nb = draw(st.integers(1, max_b))
    rels = {}
    for sym in a.vocabulary:
        tup = st.tuples(*[st.integers(0, nb - 1)] * sym.arity)
        rels[sym.name] = draw(st.sets(tup, max_size=nb ** sym.arity))
    return a, Structure(a.vocabulary, nb, rels)
