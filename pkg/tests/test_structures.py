from hypothesis import given, settings

import pytest

from homclass.errors import PreconditionError, StructureError, VocabularyMismatch
from homclass.solvers import count_homs, is_isomorphic
from homclass.structures import (
    FAMILIES,
    Structure,
    Vocabulary,
    complete_graph,
    connected_components,
    digraph,
    direct_product,
    disjoint_union,
    gaifman,
    graph,
    induced_substructure,
    is_connected,
    is_graph,
    make_family,
    size,
    star,
    unstar,
    validate,
)

from conftest import graphs, structures

K2 = complete_graph(2)
TERNARY = Vocabulary([("R", 3)])


class TestValidate:
    def test_well_formed_k2(self):
        assert validate(K2) == []

    def test_out_of_range(self):
        s = Structure(Vocabulary([("E", 2)]), 3, {"E": [(0, 5)]})
        problems = validate(s)
        assert len(problems) == 1 and "out of range" in problems[0]

    def test_arity_mismatch(self):
        s = Structure(Vocabulary([("E", 2)]), 3, {"E": [(0, 1, 2)]})
        problems = validate(s)
        assert len(problems) == 1 and "arity" in problems[0]

    def test_duplicate_tuple(self):
        s = Structure(Vocabulary([("E", 2)]), 2, {"E": [(0, 1), (0, 1)]})
        assert any("duplicate" in p for p in validate(s))

    def test_empty_universe_rejected(self):
        assert validate(Structure(Vocabulary([("E", 2)]), 0))

    def test_duplicate_symbol(self):
        with pytest.raises(StructureError):
            Vocabulary([("E", 2), ("E", 1)])

    def test_checked_raises(self):
        with pytest.raises(StructureError):
            Structure.checked(Vocabulary([("E", 2)]), 2, {"E": [(0, 2)]})


class TestGaifman:
    def test_ternary_tuple_is_triangle(self):
        a = Structure(TERNARY, 3, {"R": [(0, 1, 2)]})
        assert gaifman(a) == complete_graph(3)

    def test_unary_only_edgeless(self):
        a = Structure(Vocabulary([("U", 1)]), 3, {"U": [(0,), (2,)]})
        assert gaifman(a).relation("E") == ()

    def test_dipath(self):
        assert gaifman(make_family("dipath", 3)) == make_family("path", 3)

    @given(structures())
    def test_star_keeps_gaifman(self, a):
        assert gaifman(star(a)) == gaifman(a)


class TestStar:
    def test_k2(self):
        s = star(K2)
        assert s.relation("C0") == ((0,),) and s.relation("C1") == ((1,),)
        assert s.relation("E") == K2.relation("E")

    def test_single_element(self):
        s = star(Structure(Vocabulary([]), 1))
        assert s.universe_size == 1 and s.relation("C0") == ((0,),)

    def test_name_clash(self):
        with pytest.raises(StructureError):
            star(Structure(Vocabulary([("C0", 1)]), 1))

    def test_unstar_inverse(self):
        assert unstar(star(K2)) == K2

    def test_unstar_rejects_plain(self):
        with pytest.raises(PreconditionError):
            unstar(K2)

    @given(structures())
    def test_size_formula(self, a):
        n = a.universe_size
        assert size(star(a)) == size(a) + n + n


class TestProduct:
    def test_k2_squared_is_matching(self):
        p, codec = direct_product(K2, K2)
        assert p.universe_size == 4
        assert len(p.relation("E")) == 4
        assert all(len(c) == 2 for c in connected_components(p))

    def test_with_loopless_vertex(self):
        a = make_family("cycle", 4)
        p, _ = direct_product(a, graph(1))
        assert p.universe_size == 4 and p.relation("E") == ()

    def test_codec_roundtrip(self):
        _, codec = direct_product(K2, complete_graph(3))
        assert all(codec.decode(codec.encode(x, y)) == (x, y) for x in range(2) for y in range(3))

    def test_vocabulary_mismatch(self):
        with pytest.raises(VocabularyMismatch):
            direct_product(K2, Structure(TERNARY, 1))

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=3), graphs(max_n=3), graphs(max_n=3))
    def test_commutative_associative_by_counts(self, a, b, c):
        probes = [K2, make_family("path", 3), graph(1), make_family("cycle", 3)]
        ab, _ = direct_product(a, b)
        ba, _ = direct_product(b, a)
        ab_c, _ = direct_product(ab, c)
        bc, _ = direct_product(b, c)
        a_bc, _ = direct_product(a, bc)
        for p in probes:
            assert count_homs(p, ab) == count_homs(p, ba) == count_homs(p, a) * count_homs(p, b)
            assert count_homs(p, ab_c) == count_homs(p, a_bc)


class TestInducedAndUnion:
    def test_induced_c4_edge(self):
        s, carrier = induced_substructure(make_family("cycle", 4), {0, 1})
        assert s == K2 and carrier == (0, 1)

    def test_induced_full(self):
        c = make_family("cycle", 5)
        assert induced_substructure(c, range(5))[0] == c

    def test_induced_single(self):
        s, _ = induced_substructure(complete_graph(3), {0})
        assert s.universe_size == 1 and s.relation("E") == ()

    def test_induced_empty(self):
        with pytest.raises(PreconditionError):
            induced_substructure(K2, [])

    def test_union_2k2(self):
        u, offsets = disjoint_union([K2, K2])
        assert u == graph(4, [(0, 1), (2, 3)]) and offsets == (0, 2)
        assert connected_components(u) == [(0, 1), (2, 3)]

    def test_union_single(self):
        assert disjoint_union([K2])[0] == K2

    @given(structures(), structures())
    def test_union_then_induced(self, a, b):
        if not a.vocabulary.same_symbols(b.vocabulary):
            b = Structure(a.vocabulary, b.universe_size)
        u, offsets = disjoint_union([a, b])
        assert u.universe_size == a.universe_size + b.universe_size
        part, _ = induced_substructure(u, range(offsets[1], u.universe_size))
        assert is_isomorphic(part, b.reorder(a.vocabulary))


class TestConnectivityAndSize:
    def test_dipath_connected(self):
        assert is_connected(make_family("dipath", 4))

    def test_single_vertex_connected(self):
        assert is_connected(graph(1))

    def test_sizes(self):
        assert size(K2) == 7
        assert size(Structure(Vocabulary([]), 1)) == 1
        assert size(make_family("dipath", 3)) == 8


class TestFamilies:
    def test_dipath3(self):
        assert make_family("dipath", 3).relation("E") == ((0, 1), (1, 2))

    def test_cycle3(self):
        c = make_family("cycle", 3)
        assert c == complete_graph(3) and len(c.relation("E")) == 6

    def test_tree_bin2(self):
        assert make_family("tree_bin", 2).universe_size == 7

    def test_labeled_tree_symmetric(self):
        b = make_family("tree_bin_labeled", 2)
        for name in ("S0", "S1"):
            rel = b.relation_set(name)
            assert all((v, u) in rel for u, v in rel)

    @pytest.mark.parametrize("kind", FAMILIES)
    def test_generators_valid(self, kind):
        for k in range(2, 5):
            s = make_family(kind, k)
            assert validate(s) == []
            if kind in ("path", "cycle", "tree_bin", "grid"):
                assert is_graph(s)

    def test_out_of_range(self):
        with pytest.raises(PreconditionError):
            make_family("path", 1)
        with pytest.raises(PreconditionError):
            make_family("nonsense", 3)

    def test_digraph_not_graph(self):
        assert not is_graph(digraph(2, [(0, 1)]))
