"""Acceptance suite: one test per criterion, each printing one PASS/FAIL line.

Every check compares the library against an independent route (brute-force
enumeration, a separately written evaluator or recursion) rather than
against itself.
"""

import json
import os
import random
import subprocess
import sys
import time
from itertools import combinations

import pytest

from homclass.counting import PARSIMONIOUS, check_parsimony, count_star_via_inclusion_exclusion, td_dp_count
from homclass.logic import build_phi_A, canonical_sentence, model_check, qr, sentence_to_structure
from homclass.logic.compile import treedepth_of_sentence_bound
from homclass.minors import random_minor
from homclass.random_instances import (
    REDUCTION_SAMPLERS,
    random_ae_sentence,
    random_colored_target,
    random_graph,
    random_sentence,
    random_structure,
    random_tree,
    random_vocabulary,
)
from homclass.reductions import find_injective_hash, hash_eval, verify_reduction
from homclass.reductions.hashing import prime_bound
from homclass.solvers import core, count_homs, is_core, is_isomorphic
from homclass.structures import Structure, complete_graph, digraph, graph, make_family, star, vocabulary
from homclass.widths import pathwidth_exact, treedepth_exact, treewidth_exact

from cli_corpus import COMMANDS, CORPUS
from oracles import brute_count, brute_is_core, enumerate_homs, naive_holds, td_recursive

K2 = complete_graph(2)
E = vocabulary(("E", 2))


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {title}: {'PASS' if ok else 'FAIL'} ({detail})")
        return ok
    return emit


# 1 --------------------------------------------------------------------------

SOUNDNESS_UNITS = [
    "tree-decomposition",
    "minor-to-host",
    "gaifman-to-structure",
    "drop-constants-core",
    "color-coding",
    "connectify-td",
    "connectify-tw",
    "homstar-path-to-dipath",
    "dipath-to-stpath",
    "stpath-to-dicycle",
    "stpath-to-cyclestar",
    "path-chain",
    "path-chain-dicycle",
]


def test_1_reduction_soundness(verdict):
    trials = 200
    t0 = time.perf_counter()
    bad = {}
    for seed, name in enumerate(SOUNDNESS_UNITS):
        rng = random.Random(1000 + seed)
        for i in range(trials):
            rep = verify_reduction(REDUCTION_SAMPLERS[name](rng))
            if not (rep.ok and rep.agree):
                bad.setdefault(name, []).append((i, rep.failures))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 300
    verdict(1, "reduction soundness", ok,
            f"{len(SOUNDNESS_UNITS)} units x {trials} instances, failing units {sorted(bad)}, {dt:.1f}s")
    assert ok, bad


# 2 --------------------------------------------------------------------------

def test_2_parsimony(verdict):
    reports = [check_parsimony(name, trials=200, seed=2000 + i) for i, name in enumerate(PARSIMONIOUS)]
    ok = all(r.ok for r in reports)
    verdict(2, "parsimony", ok, ", ".join(f"{r.name} {r.equal}/{r.trials} equal" for r in reports))
    assert ok, [r.mismatches for r in reports]


# 3 --------------------------------------------------------------------------

def test_3_counting(verdict):
    rng = random.Random(3000)
    ie_bad, budget_bad = 0, 0
    for _ in range(200):
        a = random_structure(rng, random_vocabulary(rng), rng.randint(1, 3))
        b = random_colored_target(rng, star(a), rng.randint(1, 5))
        calls = []

        def oracle(left, right):
            calls.append(left)
            return brute_count(left, right)

        got, log = count_star_via_inclusion_exclusion(star(a), b, oracle)
        ie_bad += got != count_homs(star(a), b) or got != brute_count(star(a), b)
        budget_bad += len(calls) != 2 ** a.universe_size - 1 or len(log) != len(calls)
    dp_bad = 0
    for _ in range(200):
        t = star(random_tree(rng, rng.randint(1, 6)))
        b = random_colored_target(rng, t, rng.randint(1, 5))
        dp_bad += td_dp_count(t, b, rng.randrange(t.universe_size)) != count_homs(t, b)
    ok = not (ie_bad or budget_bad or dp_bad)
    verdict(3, "counting", ok, f"inclusion-exclusion mismatches {ie_bad}/200, query budget violations "
            f"{budget_bad}/200, tree DP mismatches {dp_bad}/200")
    assert ok


# 4 --------------------------------------------------------------------------

def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def all_digraphs(n):
    pairs = [(u, v) for u in range(n) for v in range(n)]
    for mask in range(1 << len(pairs)):
        yield Structure(E, n, {"E": [p for i, p in enumerate(pairs) if mask >> i & 1]})


def test_4_logic(verdict):
    rng = random.Random(4000)

    mc_bad = 0
    for _ in range(500):
        vocab = random_vocabulary(rng)
        phi = random_sentence(rng, vocab, max_qr=3)
        a = random_structure(rng, vocab, rng.randint(1, 4))
        mc_bad += model_check(a, phi) != naive_holds(a, phi)

    # build_phi_A: every labelled graph on <= 4 vertices against every digraph on <= 3,
    # plus random structures over mixed vocabularies
    targets = [b for n in (1, 2, 3) for b in all_digraphs(n)]
    sources = [a for n in (1, 2, 3, 4) for a in all_graphs(n)]
    phi_bad = rank_bad = checks = 0

    def check(a, bs):
        nonlocal phi_bad, rank_bad, checks
        w = td_recursive(core(a).core)
        phi = build_phi_A(a, w)
        rank_bad += qr(phi) > w + 1
        for b in bs:
            checks += 1
            phi_bad += model_check(b, phi) != bool(enumerate_homs(a, b))

    for a in sources:
        check(a, targets)
    for _ in range(100):
        vocab = random_vocabulary(rng)
        a = random_structure(rng, vocab, rng.randint(1, 4))
        check(a, [random_structure(rng, vocab, rng.randint(1, 3)) for _ in range(20)])

    rt_bad = sandwich_bad = 0
    for _ in range(150):
        vocab = random_vocabulary(rng, max_arity=3)
        phi = random_ae_sentence(rng, vocab, max_vars=5)
        a = sentence_to_structure(phi, vocab)
        rt_bad += not is_isomorphic(sentence_to_structure(canonical_sentence(a), vocab), a)
        for _ in range(5):
            b = random_structure(rng, vocab, rng.randint(1, 3))
            rt_bad += model_check(b, phi) != bool(enumerate_homs(a, b))
        td_core = td_recursive(core(a).core)
        bound = treedepth_of_sentence_bound(phi)
        sandwich_bad += not (td_core <= td_recursive(a) <= bound <= qr(phi))
        sandwich_bad += qr(build_phi_A(a, td_core)) > td_core + 1

    ok = not (mc_bad or phi_bad or rank_bad or rt_bad or sandwich_bad)
    verdict(4, "logic", ok, f"model-check disagreements {mc_bad}/500, phi_A mismatches {phi_bad}/{checks}, "
            f"rank violations {rank_bad}, round-trip failures {rt_bad}, sandwich failures {sandwich_bad}/150")
    assert ok


# 5 --------------------------------------------------------------------------

def test_5_widths(verdict):
    bad = []
    for k in range(2, 9):
        p = make_family("path", k)
        if pathwidth_exact(p)[0] != 1:
            bad.append(f"pw(P{k})")
        if treedepth_exact(p)[0] != td_recursive(p):
            bad.append(f"td(P{k})")
    for k in range(3, 9):
        if treewidth_exact(make_family("cycle", k))[0] != 2:
            bad.append(f"tw(C{k})")
    rng = random.Random(5000)
    mono_bad = 0
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 7), rng.uniform(0.2, 0.8))
        m, _ = random_minor(g, rng)
        mono_bad += treewidth_exact(m)[0] > treewidth_exact(g)[0]
        mono_bad += pathwidth_exact(m)[0] > pathwidth_exact(g)[0]
        mono_bad += treedepth_exact(m)[0] > treedepth_exact(g)[0]
    ok = not bad and not mono_bad
    verdict(5, "widths", ok, f"family mismatches {bad or 'none'}, monotonicity violations {mono_bad}/300")
    assert ok


# 6 --------------------------------------------------------------------------

def test_6_cores(verdict):
    bad = []
    for k in (2, 3, 4):
        if not is_isomorphic(core(make_family("cycle", 2 * k)).core, K2):
            bad.append(f"core(C{2 * k})")
    rng = random.Random(6000)
    trees = [make_family("path", n) for n in range(2, 9)]
    trees += [random_tree(rng, rng.randint(2, 8)) for _ in range(60)]
    bad += [f"core(tree {i})" for i, t in enumerate(trees) if not is_isomorphic(core(t).core, K2)]
    cores = [make_family("cycle", k) for k in (3, 5, 7)] + [digraph(1)]
    cores += [make_family("dipath", k) for k in range(2, 7)]
    for c in cores:
        if not (is_core(c) and brute_is_core(c)):
            bad.append(f"is_core({c.universe_size}-element family member)")
    star_bad = 0
    for _ in range(50):
        a = random_structure(rng, random_vocabulary(rng), rng.randint(1, 5))
        star_bad += not is_core(star(a))
        if a.universe_size <= 4:
            star_bad += not brute_is_core(star(a))
    ok = not bad and not star_bad
    verdict(6, "cores", ok, f"failures {bad or 'none'}, starred non-cores {star_bad}/50")
    assert ok


# 7 --------------------------------------------------------------------------

def injective_within_bound(x, k, n):
    hp = find_injective_hash(x, k, n)
    return (hp is not None and hp.p < prime_bound(n, k) and 0 <= hp.q < hp.p
            and len({hash_eval(hp, m) for m in x}) == len(x))


def test_7_hashing(verdict):
    exhaustive = {}
    for n in (16, 32):
        subsets = list(combinations(range(1, n + 1), 2))
        exhaustive[n] = sum(not injective_within_bound(x, 2, n) for x in subsets), len(subsets)
    rng = random.Random(7000)
    samples = 2000
    fails = sum(not injective_within_bound(rng.sample(range(1, 33), 3), 3, 32) for _ in range(samples))
    rate = fails / samples
    ok = all(f == 0 for f, _ in exhaustive.values()) and rate < 0.01
    detail = ", ".join(f"k=2 n={n}: {t - f}/{t} subsets" for n, (f, t) in exhaustive.items())
    verdict(7, "hashing", ok, f"{detail}, k=3 n=32 failure rate {rate:.4f} over {samples} samples")
    assert ok


# 8 --------------------------------------------------------------------------

def run_fresh(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    proc = subprocess.run([sys.executable, "-m", "homclass", *argv], cwd=CORPUS, env=env,
                          capture_output=True)
    return proc.returncode, proc.stdout


def test_8_cli_determinism(verdict):
    differing, failing = [], []
    for argv in COMMANDS:
        first, second = run_fresh(argv, 1), run_fresh(argv, 2)
        if first[0] != 0:
            failing.append(" ".join(argv[:3]))
        if first != second:
            differing.append(" ".join(argv[:3]))
        else:
            json.loads(first[1])
    ok = not differing and not failing
    verdict(8, "CLI determinism", ok, f"{len(COMMANDS)} commands in two fresh processes, "
            f"differing {differing or 'none'}, failing {failing or 'none'}")
    assert ok
