import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homclass.errors import ParseError, PreconditionError, VocabularyMismatch
from homclass.logic import (
    TRUE,
    And,
    Atom,
    Eq,
    Exists,
    Not,
    build_phi_A,
    canonical_conjunction,
    canonical_sentence,
    model_check,
    parse,
    qr,
    sentence_to_structure,
    to_text,
    treedepth_of_sentence_bound,
)
from homclass.random_instances import random_ae_sentence, random_sentence, random_structure, random_vocabulary
from homclass.solvers import hom_exists, is_isomorphic
from homclass.structures import Structure, complete_graph, graph, make_family, vocabulary

from conftest import structures
from oracles import enumerate_homs, naive_holds

K2 = complete_graph(2)
V1 = graph(1)
E = vocabulary(("E", 2))


def all_digraphs(n):
    pairs = [(u, v) for u in range(n) for v in range(n)]
    for mask in range(1 << len(pairs)):
        yield Structure(E, n, {"E": {p for i, p in enumerate(pairs) if mask >> i & 1}})


def all_graphs(n):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for mask in range(1 << len(pairs)):
        yield graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


SMALL_DIGRAPHS = [b for n in (1, 2, 3) for b in all_digraphs(n)]


class TestSyntax:
    def test_qr(self):
        assert qr(Atom("E", ("x", "y"))) == 0
        assert qr(parse("exists x. exists y. E(x,y)")) == 2
        assert qr(parse("(exists x. A(x)) & (exists y. exists z. B(y,z))")) == 2

    def test_parse_shapes(self):
        phi = parse("exists x. exists y. E(x,y)")
        assert phi == Exists("x", Exists("y", Atom("E", ("x", "y"))))
        assert parse("!(x = x)") == Not(Eq("x", "x"))

    def test_arity_error(self):
        with pytest.raises(ParseError):
            parse("E(x)", E)
        with pytest.raises(ParseError):
            parse("E(x,y) & E(x)")

    @pytest.mark.parametrize("bad", ["exists . E(x,y)", "E(x,y", "E(x,y) E(y,x)", "x = ", "exists x E(x,x)"])
    def test_syntax_errors(self, bad):
        with pytest.raises(ParseError):
            parse(bad)

    def test_print_parse_round_trip(self):
        rng = random.Random(4)
        for _ in range(300):
            vocab = random_vocabulary(rng)
            phi = random_sentence(rng, vocab, max_qr=3)
            assert parse(to_text(phi), vocab) == phi


class TestModelCheck:
    def test_examples(self):
        assert model_check(K2, parse("exists x. exists y. E(x,y)"))
        assert not model_check(V1, parse("exists x. !(x = x)"))

    def test_canonical_sentence_is_hom_test(self):
        c3, c4 = make_family("cycle", 3), make_family("cycle", 4)
        assert model_check(c4, canonical_sentence(c3)) is False
        assert model_check(c4, canonical_sentence(K2)) is True

    def test_errors(self):
        with pytest.raises(PreconditionError):
            model_check(K2, parse("E(x,y)"))
        with pytest.raises(VocabularyMismatch):
            model_check(K2, parse("exists x. A(x)"))

    def test_open_formula_with_assignment(self):
        assert model_check(K2, parse("E(x,y)"), {"x": 0, "y": 1})
        assert not model_check(K2, parse("E(x,x)"), {"x": 0})

    def test_against_naive_evaluator(self):
        rng = random.Random(21)
        for _ in range(300):
            vocab = random_vocabulary(rng)
            phi = random_sentence(rng, vocab, max_qr=3)
            a = random_structure(rng, vocab, rng.randint(1, 3))
            assert model_check(a, phi) == naive_holds(a, phi)


class TestCanonical:
    def test_k2(self):
        assert canonical_conjunction(K2) == And((Atom("E", ("x0", "x1")), Atom("E", ("x1", "x0"))))

    def test_edgeless(self):
        assert canonical_conjunction(graph(3)) == TRUE

    @settings(max_examples=60, deadline=None)
    @given(structures(max_n=3, max_arity=2), st.integers(1, 3), st.randoms(use_true_random=False))
    def test_chandra_merlin(self, a, nb, r):
        b = random_structure(r, a.vocabulary, nb)
        assert model_check(b, canonical_sentence(a)) == bool(enumerate_homs(a, b))


class TestBuildPhi:
    def test_k2_has_an_edge(self):
        phi = build_phi_A(K2, 2)
        assert qr(phi) <= 3
        for b in SMALL_DIGRAPHS:
            assert model_check(b, phi) == bool(enumerate_homs(K2, b))
        for n in (1, 2, 3):
            for b in all_graphs(n):
                assert model_check(b, phi) == bool(b.relation("E"))

    def test_single_vertex_true_everywhere(self):
        phi = build_phi_A(V1, 1)
        assert all(model_check(b, phi) for b in SMALL_DIGRAPHS)

    def test_p5_core_is_edge(self):
        p5 = make_family("path", 5)
        phi = build_phi_A(p5, 2)
        assert qr(phi) <= 3
        for b in SMALL_DIGRAPHS:
            assert model_check(b, phi) == bool(enumerate_homs(p5, b))

    def test_rank_equals_core_treedepth(self):
        assert qr(build_phi_A(make_family("cycle", 5), 4)) == 4
        assert qr(build_phi_A(make_family("cycle", 6), 4)) == 2

    def test_too_deep(self):
        with pytest.raises(PreconditionError):
            build_phi_A(make_family("cycle", 5), 3)


class TestSentenceToStructure:
    def test_examples(self):
        assert is_isomorphic(sentence_to_structure(parse("exists x. exists y. (E(x,y) & E(y,x))")), K2)
        a = sentence_to_structure(parse("exists x. A(x)"))
        assert a.universe_size == 1 and a.relation("A") == ((0,),)

    def test_rejects(self):
        with pytest.raises(PreconditionError):
            sentence_to_structure(parse("exists x. exists y. (E(x,y) & x = y)"))
        with pytest.raises(PreconditionError):
            sentence_to_structure(parse("exists x. !E(x,x)"))
        with pytest.raises(PreconditionError):
            sentence_to_structure(parse("forall x. E(x,x)"))

    def test_treedepth_bound_examples(self):
        assert treedepth_of_sentence_bound(parse("exists x. exists y. E(x,y)")) == 2
        assert treedepth_of_sentence_bound(parse("exists x. ((exists y. E(x,y)) & (exists z. E(x,z)))")) == 2

    def test_sentence_equivalent_to_its_structure(self):
        rng = random.Random(5)
        for _ in range(100):
            vocab = random_vocabulary(rng, max_arity=2)
            phi = random_ae_sentence(rng, vocab, max_vars=4)
            a = sentence_to_structure(phi, vocab)
            for _ in range(3):
                b = random_structure(rng, vocab, rng.randint(1, 3))
                assert model_check(b, phi) == hom_exists(a, b).answer
            assert qr(phi) >= 0 and treedepth_of_sentence_bound(phi) >= 1

