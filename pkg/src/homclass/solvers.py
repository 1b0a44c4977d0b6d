"""Brute-force oracles and decomposition-driven solvers.

The backtracking oracles go through :mod:`homclass.kernels` (compiled when
available).  The remaining solvers are independent implementations used to
cross-check the oracles: a left-to-right DP over a path decomposition, a
bottom-up DP over starred trees, BFS for bounded st-paths, and the regular
graph shortcut for long simple paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .errors import PreconditionError, SizeBoundExceeded, StructureError
from .structures import (
    Structure,
    adjacency,
    induced_substructure,
    is_connected,
    is_graph,
    require_same_vocabulary,
    unstar,
)
from .widths import PathDecomposition, normalize_path_decomposition, validate_path_decomposition

DECISION_BOUND = 12
CORE_BOUND = 8


@dataclass(frozen=True)
class SolveResult:
    answer: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class CoreResult:
    core: Structure
    retraction: tuple
    carrier: tuple


def _guard(a: Structure, bound, what):
    if bound is not None and a.universe_size > bound:
        raise SizeBoundExceeded(f"{what}: |A| = {a.universe_size} exceeds bound {bound}")


def is_homomorphism(h, a: Structure, b: Structure) -> bool:
    require_same_vocabulary(a, b)
    h = tuple(h)
    if len(h) != a.universe_size:
        raise StructureError(f"map has length {len(h)}, source has {a.universe_size} elements")
    if any(not 0 <= v < b.universe_size for v in h):
        return False
    for sym, rel in a.items():
        target = b.relation_set(sym.name)
        for t in rel:
            if tuple(h[x] for x in t) not in target:
                return False
    return True


def is_embedding(h, a: Structure, b: Structure) -> bool:
    return len(set(h)) == len(tuple(h)) and is_homomorphism(h, a, b)


def hom_exists(a: Structure, b: Structure, *, max_size=DECISION_BOUND, domains=None) -> SolveResult:
    _guard(a, max_size, "hom_exists")
    w = kernels.find(a, b, domains=domains)
    return SolveResult(w is not None, w)


def emb_exists(a: Structure, b: Structure, *, max_size=DECISION_BOUND, domains=None) -> SolveResult:
    _guard(a, max_size, "emb_exists")
    w = kernels.find(a, b, injective=True, domains=domains)
    return SolveResult(w is not None, w)


def count_homs(a: Structure, b: Structure, *, max_size=DECISION_BOUND, domains=None) -> int:
    _guard(a, max_size, "count_homs")
    return kernels.count(a, b, domains=domains)


def count_embs(a: Structure, b: Structure, *, max_size=DECISION_BOUND, domains=None) -> int:
    _guard(a, max_size, "count_embs")
    return kernels.count(a, b, injective=True, domains=domains)


# ---------------------------------------------------------------------------
# cores

def _misses(a: Structure, allowed: set) -> tuple | None:
    """An endomorphism of ``a`` with image inside ``allowed``."""
    doms = [sorted(allowed)] * a.universe_size
    return kernels.find(a, a, domains=doms)


def is_core(a: Structure, *, max_size=CORE_BOUND) -> bool:
    """True iff no endomorphism avoids some element (equivalently all are embeddings)."""
    _guard(a, max_size, "is_core")
    full = set(a.universe)
    return all(_misses(a, full - {v}) is None for v in a.universe)


def core(a: Structure, *, max_size=CORE_BOUND) -> CoreResult:
    """Lexicographically least minimum carrier onto which ``a`` retracts.

    The core size is found by repeatedly replacing the current carrier by the
    image of an endomorphism that avoids one of its elements; the carrier
    reached this way induces a core, so its size is the core size.  Then the
    carriers of that size are tried in lexicographic order.
    """
    _guard(a, max_size, "core")
    current = set(a.universe)
    shrinking = True
    while shrinking:
        shrinking = False
        for v in sorted(current):
            h = _misses(a, current - {v})
            if h is not None:
                current = set(h)
                shrinking = True
                break
    k = len(current)
    for carrier in combinations(a.universe, k):
        inside = set(carrier)
        doms = [[x] if x in inside else list(carrier) for x in a.universe]
        r = kernels.find(a, a, domains=doms)
        if r is not None:
            c, _ = induced_substructure(a, carrier)
            return CoreResult(c, r, carrier)
    raise AssertionError("no retraction onto a carrier of the core size")  # pragma: no cover


def find_isomorphism(a: Structure, b: Structure) -> tuple | None:
    if not a.vocabulary.same_symbols(b.vocabulary) or a.universe_size != b.universe_size:
        return None
    if any(len(rel) != len(b.relation(sym.name)) for sym, rel in a.items()):
        return None
    b = b.reorder(a.vocabulary)
    # a bijection mapping every tuple into the target and preserving tuple
    # counts maps each relation onto its counterpart
    return kernels.find(a, b, injective=True)


def is_isomorphic(a: Structure, b: Structure) -> bool:
    return find_isomorphism(a, b) is not None


def hom_equivalent(a: Structure, b: Structure, *, max_size=DECISION_BOUND) -> bool:
    return (hom_exists(a, b, max_size=max_size).answer
            and hom_exists(b, a, max_size=max_size).answer)


# ---------------------------------------------------------------------------
# decomposition DPs

def _local_ok(f: dict, a_tuples, b: Structure) -> bool:
    for name, t in a_tuples:
        if tuple(f[x] for x in t) not in b.relation_set(name):
            return False
    return True


def solve_via_path_decomposition(a: Structure, b: Structure, pd: PathDecomposition,
                                 *, normalize: bool = True) -> SolveResult:
    """Left-to-right DP over the bags of a path decomposition.

    State ``i`` is the set of homomorphisms from the substructure induced by
    bag ``i`` that extend to all bags seen so far.  Every tuple of ``a`` lies
    inside some bag (its elements form a Gaifman clique), so the local
    checks see every constraint.
    """
    require_same_vocabulary(a, b)
    problems = validate_path_decomposition(a, pd)
    if problems:
        raise PreconditionError("invalid path decomposition: " + "; ".join(problems))
    if normalize:
        pd = normalize_path_decomposition(a, pd)
    bags = [tuple(sorted(x)) for x in pd.bags]
    # each tuple is checked in the first bag containing all its elements
    checks = [[] for _ in bags]
    for name, t in a.tuples():
        s = set(t)
        i = next(i for i, bag in enumerate(bags) if s <= set(bag))
        checks[i].append((name, t))

    def extensions(base: dict, bag, i):
        free = [x for x in bag if x not in base]
        out = []
        for vals in _product(b.universe_size, len(free)):
            f = {x: base[x] for x in bag if x in base}
            f.update(zip(free, vals))
            if _local_ok(f, checks[i], b):
                out.append(tuple(f[x] for x in bag))
        return out

    # layer i: dict restricted-tuple -> back pointer (previous restricted tuple)
    layers = [{f: None for f in extensions({}, bags[0], 0)}]
    for i in range(1, len(bags)):
        prev_bag, bag = bags[i - 1], bags[i]
        layer = {}
        for g in layers[-1]:
            base = {x: v for x, v in zip(prev_bag, g) if x in bag}
            for f in extensions(base, bag, i):
                layer.setdefault(f, g)
        layers.append(layer)
        if not layer:
            return SolveResult(False)
    if not layers[-1]:
        return SolveResult(False)
    h = [None] * a.universe_size
    f = min(layers[-1])
    for i in range(len(bags) - 1, -1, -1):
        for x, v in zip(bags[i], f):
            if h[x] is None:
                h[x] = v
        f = layers[i][f]
    return SolveResult(True, tuple(h))


def _product(nb: int, k: int):
    if k == 0:
        yield ()
        return
    for head in range(nb):
        for rest in _product(nb, k - 1):
            yield (head,) + rest


def _starred_tree(tstar: Structure):
    try:
        t = unstar(tstar)
    except PreconditionError as e:
        raise PreconditionError(f"not a starred tree: {e}") from None
    if len(t.vocabulary) != 1 or t.vocabulary.symbols[0].arity != 2:
        raise PreconditionError("not a starred tree: need exactly one binary symbol besides the constants")
    sym = t.vocabulary.symbols[0].name
    if not is_graph(t, sym) or not is_connected(t) or len(t.relation(sym)) != 2 * (t.universe_size - 1):
        raise PreconditionError("not a starred tree: underlying graph is not a tree")
    return t, sym


def rooted_children(t: Structure, sym: str, root: int = 0):
    """BFS order from ``root`` and the child lists of the rooted tree."""
    adj = adjacency(t, sym)
    children = [[] for _ in t.universe]
    order = [root]
    seen = {root}
    q = deque([root])
    while q:
        v = q.popleft()
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                children[v].append(w)
                order.append(w)
                q.append(w)
    return order, children


def solve_tree_instance(tstar: Structure, b: Structure, root: int = 0) -> SolveResult:
    """Viable-image sets bottom-up, witness top-down (smallest choices)."""
    require_same_vocabulary(tstar, b)
    t, sym = _starred_tree(tstar)
    order, children = rooted_children(t, sym, root)
    edge = b.relation_set(sym)
    viable = [None] * t.universe_size
    for v in reversed(order):
        cands = sorted(x for (x,) in b.relation(f"C{v}"))
        viable[v] = [x for x in cands
                     if all(any((x, y) in edge and (y, x) in edge for y in viable[c])
                            for c in children[v])]
    if not viable[root]:
        return SolveResult(False)
    h = [None] * t.universe_size
    h[root] = viable[root][0]
    for v in order:
        for c in children[v]:
            h[c] = next(y for y in viable[c] if (h[v], y) in edge and (y, h[v]) in edge)
    return SolveResult(True, tuple(h))


# ---------------------------------------------------------------------------
# paths

def _check_vertex(g: Structure, v: int):
    if not 0 <= v < g.universe_size:
        raise PreconditionError(f"vertex {v} outside universe of size {g.universe_size}")


def st_distance(g: Structure, s: int, t: int, symbol: str = "E") -> int | None:
    _check_vertex(g, s)
    _check_vertex(g, t)
    adj = adjacency(g, symbol)
    dist = {s: 0}
    q = deque([s])
    while q:
        v = q.popleft()
        if v == t:
            return dist[v]
        for w in sorted(adj[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return None


def st_path(g: Structure, s: int, t: int, k: int, symbol: str = "E") -> bool:
    """Is there a path with at most ``k`` edges from ``s`` to ``t``?"""
    if k < 0:
        raise PreconditionError("k must be non-negative")
    d = st_distance(g, s, t, symbol)
    return d is not None and d <= k


def st_path_witness(g: Structure, s: int, t: int, k: int, symbol: str = "E") -> list | None:
    """A shortest ``s``-``t`` path as a vertex list if it has at most ``k`` edges."""
    _check_vertex(g, s)
    _check_vertex(g, t)
    adj = adjacency(g, symbol)
    prev = {s: None}
    q = deque([s])
    while q:
        v = q.popleft()
        for w in sorted(adj[v]):
            if w not in prev:
                prev[w] = v
                q.append(w)
    if t not in prev:
        return None
    path = [t]
    while path[-1] != s:
        path.append(prev[path[-1]])
    path.reverse()
    return path if len(path) - 1 <= k else None


def regular_degree(g: Structure) -> int:
    if not is_graph(g):
        raise PreconditionError("regular_path_embed needs an undirected loopless graph")
    degs = {len(nb) for nb in adjacency(g)}
    if len(degs) != 1:
        raise PreconditionError(f"graph is not regular (degrees {sorted(degs)})")
    return degs.pop()


def simple_path_sentence(k: int, nested: bool = True):
    """Sentence true in a graph iff it has a simple path with ``k`` edges."""
    from .logic.syntax import Atom, Eq, Exists, Not, conj

    xs = [f"x{i}" for i in range(k + 1)]
    if not nested:
        body = conj([Not(Eq(xs[i], xs[j])) for i in range(k + 1) for j in range(i + 1, k + 1)]
                    + [Atom("E", (xs[i], xs[i + 1])) for i in range(k)])
        for x in reversed(xs):
            body = Exists(x, body)
        return body
    # each variable is constrained as soon as it is introduced, which keeps the
    # depth-first evaluation from enumerating non-paths
    body = None
    for i in range(k, -1, -1):
        guard = [Not(Eq(xs[j], xs[i])) for j in range(i)]
        if i:
            guard.append(Atom("E", (xs[i - 1], xs[i])))
        parts = guard + ([body] if body is not None else [])
        body = Exists(xs[i], conj(parts))
    return body


def regular_path_embed(g: Structure, k: int, *, nested: bool = True) -> bool:
    """Does a path with ``k`` edges embed into the regular graph ``g``?

    With degree ``d > k`` a greedy walk never gets stuck, so the answer is
    yes; otherwise the question is decided by model checking.
    """
    from .logic.evaluate import model_check

    if k < 0:
        raise PreconditionError("k must be non-negative")
    d = regular_degree(g)
    if d > k:
        return True
    return model_check(g, simple_path_sentence(k, nested), {})
