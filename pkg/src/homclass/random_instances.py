"""Random small instances for oracle cross-checks.

Every sampler takes a :class:`random.Random` and is deterministic given its
state.  Samplers that build homomorphism instances plant a solution about
half of the time so that yes- and no-instances are both common.
"""

from __future__ import annotations

import random
from itertools import combinations

from .logic.syntax import And, Atom, Eq, Exists, Forall, Not, Or
from .structures import (
    EDGE,
    Structure,
    Vocabulary,
    graph,
    is_connected,
    make_family,
    star,
    star_symbol,
)
from .widths import decomposition_from_order, treewidth_exact

SYMBOL_NAMES = ("R", "S", "T")


def random_vocabulary(rng: random.Random, max_symbols: int = 2, max_arity: int = 3) -> Vocabulary:
    k = rng.randint(1, max_symbols)
    return Vocabulary((SYMBOL_NAMES[i], rng.randint(1, max_arity)) for i in range(k))


def random_structure(rng: random.Random, vocab: Vocabulary, n: int, density: float | None = None) -> Structure:
    """Each symbol gets a random number of random tuples."""
    rels = {}
    for sym in vocab:
        space = n ** sym.arity
        if density is None:
            m = rng.randint(0, min(space, 2 + n))
        else:
            m = sum(rng.random() < density for _ in range(space))
        rels[sym.name] = {tuple(rng.randrange(n) for _ in range(sym.arity)) for _ in range(m)}
    return Structure(vocab, n, rels)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Structure:
    return graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_digraph(rng: random.Random, n: int, p: float = 0.4, loops: bool = True) -> Structure:
    arcs = [(u, v) for u in range(n) for v in range(n) if (loops or u != v) and rng.random() < p]
    return Structure(Vocabulary([(EDGE, 2)]), n, {EDGE: arcs})


def random_tree(rng: random.Random, n: int) -> Structure:
    return graph(n, [(v, rng.randrange(v)) for v in range(1, n)])


def random_connected_structure(rng: random.Random, vocab: Vocabulary, n: int, tries: int = 200) -> Structure:
    for _ in range(tries):
        a = random_structure(rng, vocab, n)
        if is_connected(a):
            return a
    # fall back to a path through a binary (or wider) symbol
    sym = next((s for s in vocab if s.arity >= 2), None)
    if sym is None:
        if n == 1:
            return Structure(vocab, 1, {})
        raise ValueError("cannot connect more than one element with unary symbols only")
    tuples = [tuple([i] + [i + 1] * (sym.arity - 1)) for i in range(n - 1)]
    return Structure(vocab, n, {sym.name: tuples})


def plant(rng: random.Random, a: Structure, b: Structure, h=None, injective: bool = False) -> tuple[Structure, tuple]:
    """Add to ``b`` the images of all tuples of ``a`` under ``h`` (random if absent)."""
    if h is None:
        if injective:
            h = tuple(rng.sample(range(b.universe_size), a.universe_size))
        else:
            h = tuple(rng.randrange(b.universe_size) for _ in a.universe)
    rels = {sym.name: set(b.relation(sym.name)) for sym in b.vocabulary}
    for name, t in a.tuples():
        rels[name].add(tuple(h[x] for x in t))
    return Structure(b.vocabulary, b.universe_size, rels), h


def random_target(rng: random.Random, a: Structure, nb: int, *, planted: bool | None = None,
                  injective: bool = False, density: float | None = None) -> Structure:
    """Random right side for ``a``; with ``planted`` a solution is added."""
    b = random_structure(rng, a.vocabulary, nb, density)
    if planted is None:
        planted = rng.random() < 0.5
    if planted and (not injective or nb >= a.universe_size):
        b, _ = plant(rng, a, b, injective=injective)
    return b


def random_colored_target(rng: random.Random, xstar: Structure, nb: int, *, planted: bool | None = None,
                          color_p: float = 0.5) -> Structure:
    """Right side for a starred structure: random relations and random colors."""
    vocab = xstar.vocabulary
    plain = [s for s in vocab if not s.name.startswith("C") or s.arity != 1 or not s.name[1:].isdigit()]
    rels = {}
    base = random_structure(rng, Vocabulary(plain), nb)
    for s in plain:
        rels[s.name] = set(base.relation(s.name))
    for x in xstar.universe:
        rels[star_symbol(x)] = {(y,) for y in range(nb) if rng.random() < color_p}
    b = Structure(vocab, nb, rels)
    if planted is None:
        planted = rng.random() < 0.5
    if planted:
        b, _ = plant(rng, xstar, b)
    return b


def random_decomposition(rng: random.Random, a: Structure):
    """Decomposition from a random elimination order (optimal one half the time)."""
    if rng.random() < 0.5:
        return treewidth_exact(a)[1]
    order = list(a.universe)
    rng.shuffle(order)
    return decomposition_from_order(a, order)


# ---------------------------------------------------------------------------
# formulas

def random_formula(rng: random.Random, vocab: Vocabulary, variables, depth: int,
                   quantifier_budget: int, fragment: str = "full"):
    """Random formula over ``variables`` (all treated as bound or assigned).

    ``fragment`` is ``"full"`` or ``"ae"`` (atoms, conjunction, existential).
    """
    variables = list(variables)
    fresh = f"v{len(variables)}"
    choices = ["atom", "atom"]
    if depth > 0:
        choices += ["and"]
        if fragment == "full":
            choices += ["or", "not"]
    if quantifier_budget > 0:
        choices += ["q", "q"]
    if fragment == "full" and variables:
        choices.append("eq")
    kind = rng.choice(choices) if variables or quantifier_budget > 0 else "true"
    if kind == "atom" and not variables:
        kind = "q" if quantifier_budget > 0 else "true"
    if kind == "true":
        return And(())
    if kind == "atom":
        sym = rng.choice(list(vocab))
        return Atom(sym.name, tuple(rng.choice(variables) for _ in range(sym.arity)))
    if kind == "eq":
        return Eq(rng.choice(variables), rng.choice(variables))
    if kind == "not":
        return Not(random_formula(rng, vocab, variables, depth - 1, quantifier_budget, fragment))
    if kind in ("and", "or"):
        parts = tuple(random_formula(rng, vocab, variables, depth - 1, quantifier_budget, fragment)
                      for _ in range(rng.randint(2, 3)))
        return And(parts) if kind == "and" else Or(parts)
    body = random_formula(rng, vocab, variables + [fresh], depth, quantifier_budget - 1, fragment)
    if fragment == "full" and rng.random() < 0.5:
        return Forall(fresh, body)
    return Exists(fresh, body)


def random_sentence(rng: random.Random, vocab: Vocabulary, max_qr: int = 3, fragment: str = "full"):
    return random_formula(rng, vocab, [], depth=2, quantifier_budget=max_qr, fragment=fragment)


def random_ae_sentence(rng: random.Random, vocab: Vocabulary, max_vars: int = 5):
    """Random {and, exists}-sentence with at most ``max_vars`` quantifiers."""
    budget = [max_vars]

    def build(scope):
        if budget[0] > 0 and (not scope or rng.random() < 0.5):
            budget[0] -= 1
            v = f"x{max_vars - budget[0] - 1}"
            return Exists(v, build(scope + [v]))
        if scope and rng.random() < 0.4 and budget[0] > 0:
            return And(tuple(build(scope) for _ in range(2)))
        if not scope:
            return And(())
        parts = []
        for _ in range(rng.randint(1, 3)):
            sym = rng.choice(list(vocab))
            parts.append(Atom(sym.name, tuple(rng.choice(scope) for _ in range(sym.arity))))
        if rng.random() < 0.1:
            v = rng.choice(scope)
            parts.append(Eq(v, v))
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    return build([])


# ---------------------------------------------------------------------------
# per-reduction samplers: rng -> ReductionOutput

def _small_structure(rng, max_n=4, connected=False):
    vocab = random_vocabulary(rng)
    n = rng.randint(1, max_n)
    if connected:
        if all(s.arity == 1 for s in vocab):
            vocab = Vocabulary(list(vocab.symbols) + [("E", 2)])
        return random_connected_structure(rng, vocab, n)
    return random_structure(rng, vocab, n)


def sample_tree_decomposition(rng):
    from .reductions import reduce_via_tree_decomposition

    a = _small_structure(rng)
    b = random_target(rng, a, rng.randint(1, 5))
    return reduce_via_tree_decomposition(a, b, random_decomposition(rng, a))


def sample_minor_to_host(rng):
    from .minors import random_minor
    from .reductions import reduce_minor_to_host

    g = random_graph(rng, rng.randint(1, 5), rng.uniform(0.3, 0.9))
    while True:
        m, mu = random_minor(g, rng)
        if m.universe_size <= 4:
            break
    b = random_colored_target(rng, star(m), rng.randint(1, 5))
    return reduce_minor_to_host(star(m), b, g, mu)


def sample_gaifman_to_structure(rng):
    from .reductions import reduce_gaifman_to_structure
    from .structures import gaifman

    a = _small_structure(rng)
    g = gaifman(a)
    b = random_colored_target(rng, star(g), rng.randint(1, 5))
    return reduce_gaifman_to_structure(star(g), b, a)


def sample_drop_constants(rng, embedding=False):
    from .reductions import reduce_drop_constants_core
    from .solvers import core

    d = core(_small_structure(rng)).core
    b = random_colored_target(rng, star(d), rng.randint(1, 5))
    return reduce_drop_constants_core(star(d), b, embedding=embedding)


def sample_color_coding(rng):
    from .reductions import color_code_embedding

    a = _small_structure(rng, max_n=3, connected=True)
    while a.universe_size < 2:
        a = _small_structure(rng, max_n=3, connected=True)
    b = random_target(rng, a, rng.randint(2, 5), injective=True)
    return color_code_embedding(a, b)


def sample_connectify_td(rng):
    from .reductions import connectify_td_reduction

    a = _small_structure(rng)
    b = random_target(rng, a, rng.randint(1, 5), injective=True)
    return connectify_td_reduction(a, b)


def sample_connectify_tw(rng):
    from .reductions import connectify_tw_reduction, prepare_tw_decomposition

    a = _small_structure(rng)
    b = random_target(rng, a, rng.randint(1, 5), injective=True)
    td = prepare_tw_decomposition(a, random_decomposition(rng, a))
    return connectify_tw_reduction(a, b, td)


def _colored_path(rng):
    k = rng.randint(2, 4)
    pstar = star(make_family("path", k))
    return pstar, random_colored_target(rng, pstar, rng.randint(1, 5))


def sample_homstar_path_to_dipath(rng):
    from .reductions import homstar_path_to_dipath

    return homstar_path_to_dipath(*_colored_path(rng))


def sample_dipath_to_stpath(rng):
    from .reductions import dipath_to_stpath

    k = rng.randint(2, 4)
    p = make_family("dipath", k)
    return dipath_to_stpath(p, random_target(rng, p, rng.randint(1, 5)))


def _stpath_instance(rng):
    g = random_graph(rng, rng.randint(1, 5), rng.uniform(0.2, 0.7))
    return g, rng.randrange(g.universe_size), rng.randrange(g.universe_size), rng.randint(0, 4)


def sample_stpath_to_dicycle(rng):
    from .reductions import stpath_to_dicycle

    return stpath_to_dicycle(*_stpath_instance(rng))


def sample_stpath_to_cyclestar(rng):
    from .reductions import stpath_to_cyclestar

    return stpath_to_cyclestar(*_stpath_instance(rng))


def sample_path_chain(rng):
    """Colored path through all four steps, ending at a starred odd cycle."""
    from .reductions import compose, dipath_to_stpath, homstar_path_to_dipath, stpath_to_cyclestar

    r1 = homstar_path_to_dipath(*_colored_path(rng))
    r2 = dipath_to_stpath(*r1.target)
    r3 = stpath_to_cyclestar(*r2.target)
    return compose(compose(r1, r2), r3)


def sample_path_chain_dicycle(rng):
    from .reductions import compose, dipath_to_stpath, homstar_path_to_dipath, stpath_to_dicycle

    r1 = homstar_path_to_dipath(*_colored_path(rng))
    r2 = dipath_to_stpath(*r1.target)
    r3 = stpath_to_dicycle(*r2.target)
    return compose(compose(r1, r2), r3)


REDUCTION_SAMPLERS = {
    "tree-decomposition": sample_tree_decomposition,
    "minor-to-host": sample_minor_to_host,
    "gaifman-to-structure": sample_gaifman_to_structure,
    "drop-constants-core": sample_drop_constants,
    "color-coding": sample_color_coding,
    "connectify-td": sample_connectify_td,
    "connectify-tw": sample_connectify_tw,
    "homstar-path-to-dipath": sample_homstar_path_to_dipath,
    "dipath-to-stpath": sample_dipath_to_stpath,
    "stpath-to-dicycle": sample_stpath_to_dicycle,
    "stpath-to-cyclestar": sample_stpath_to_cyclestar,
    "path-chain": sample_path_chain,
    "path-chain-dicycle": sample_path_chain_dicycle,
}
