import random

import pytest

from homclass.errors import PreconditionError, SizeBoundExceeded
from homclass.minors import MinorMap, connected_subsets, find_minor_map, random_minor, validate_minor_map
from homclass.random_instances import random_graph
from oracles import minor_by_labelling
from homclass.structures import complete_graph, graph, make_family

K2, K3 = complete_graph(2), complete_graph(3)
P3 = make_family("path", 3)


class TestValidate:
    def test_valid(self):
        assert validate_minor_map(K2, P3, MinorMap.make([{0}, {1, 2}])) == []

    def test_overlap(self):
        problems = validate_minor_map(K2, P3, MinorMap.make([{0, 1}, {1, 2}]))
        assert any("overlap" in p for p in problems)

    def test_disconnected(self):
        problems = validate_minor_map(K2, P3, MinorMap.make([{0, 2}, {1}]))
        assert any("connected" in p for p in problems)

    def test_missing_cross_edge(self):
        problems = validate_minor_map(K2, graph(3, [(0, 1)]), MinorMap.make([{0}, {2}]))
        assert problems


class TestFind:
    def test_examples(self):
        assert find_minor_map(K2, graph(3, [(1, 2)])) is not None
        mu = find_minor_map(K3, make_family("cycle", 5))
        assert mu is not None and validate_minor_map(K3, make_family("cycle", 5), mu) == []
        assert find_minor_map(make_family("path", 4), K2) is None

    def test_reflexive_singletons(self):
        rng = random.Random(3)
        for _ in range(20):
            g = random_graph(rng, rng.randint(1, 6))
            mu = find_minor_map(g, g)
            assert mu is not None and all(len(s) == 1 for s in mu.branch_sets)

    def test_against_labelling_oracle(self):
        rng = random.Random(8)
        for _ in range(80):
            g = random_graph(rng, rng.randint(1, 5), rng.uniform(0.2, 0.8))
            m = random_graph(rng, rng.randint(1, 4), rng.uniform(0.2, 0.9))
            mu = find_minor_map(m, g)
            assert (mu is not None) == minor_by_labelling(m, g)
            if mu is not None:
                assert validate_minor_map(m, g, mu) == []

    def test_transitivity(self):
        rng = random.Random(11)
        for _ in range(30):
            h = random_graph(rng, rng.randint(1, 6), 0.5)
            g, _ = random_minor(h, rng)
            m, _ = random_minor(g, rng)
            assert find_minor_map(g, h) is not None
            assert find_minor_map(m, g) is not None
            assert find_minor_map(m, h) is not None

    def test_bound_and_kind(self):
        with pytest.raises(SizeBoundExceeded):
            find_minor_map(K2, make_family("path", 11))
        with pytest.raises(PreconditionError):
            find_minor_map(K2, make_family("dipath", 3))

    def test_connected_subsets_of_path(self):
        # a path on 4 vertices has 4 + 3 + 2 + 1 connected vertex sets
        assert len(connected_subsets(make_family("path", 4))) == 10


def test_random_minor_map_valid():
    rng = random.Random(1)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 7), 0.5)
        m, mu = random_minor(g, rng)
        assert validate_minor_map(m, g, mu) == []
