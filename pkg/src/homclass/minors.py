"""Minor maps: validation, brute-force search and random minors."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError, SizeBoundExceeded
from .structures import Structure, adjacency, edges, graph, is_graph

MINOR_HOST_BOUND = 10


@dataclass(frozen=True)
class MinorMap:
    """``branch_sets[m]`` is the host vertex set realizing minor vertex ``m``."""

    branch_sets: tuple

    @classmethod
    def make(cls, sets):
        return cls(tuple(frozenset(s) for s in sets))


def _connected(vs: frozenset, adj) -> bool:
    if not vs:
        return False
    start = min(vs)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def validate_minor_map(m: Structure, g: Structure, mu: MinorMap) -> list[str]:
    problems = []
    if not is_graph(m) or not is_graph(g):
        problems.append("minor and host must be undirected loopless graphs")
        return problems
    if len(mu.branch_sets) != m.universe_size:
        return [f"{len(mu.branch_sets)} branch sets for {m.universe_size} minor vertices"]
    adj = adjacency(g)
    for i, s in enumerate(mu.branch_sets):
        if not s:
            problems.append(f"branch set {i} is empty")
        elif any(not 0 <= v < g.universe_size for v in s):
            problems.append(f"branch set {i} leaves the host universe")
        elif not _connected(s, adj):
            problems.append(f"branch set {i} is not connected")
    for i, j in combinations(range(len(mu.branch_sets)), 2):
        if mu.branch_sets[i] & mu.branch_sets[j]:
            problems.append(f"branch sets {i} and {j} overlap")
    for u, v in edges(m):
        if not any(w in adj[x] for x in mu.branch_sets[u] for w in mu.branch_sets[v]):
            problems.append(f"no host edge between branch sets of minor edge ({u},{v})")
    return problems


def connected_subsets(g: Structure) -> list[frozenset]:
    """All nonempty connected vertex sets, ordered by size then sorted contents."""
    adj = adjacency(g)
    out = []
    for k in range(1, g.universe_size + 1):
        for c in combinations(g.universe, k):
            s = frozenset(c)
            if _connected(s, adj):
                out.append(s)
    return out


def find_minor_map(m: Structure, g: Structure, *, max_size=MINOR_HOST_BOUND) -> MinorMap | None:
    """First minor map in the search order, or ``None``.

    Minor vertices are handled in index order; each picks a connected host
    set disjoint from the earlier ones, with a cross edge to every earlier
    neighbour.  Candidate sets are tried by size then lexicographically.
    """
    if not is_graph(m) or not is_graph(g):
        raise PreconditionError("find_minor_map needs undirected loopless graphs")
    if max_size is not None and g.universe_size > max_size:
        raise SizeBoundExceeded(f"find_minor_map: host has {g.universe_size} > {max_size} vertices")
    k = m.universe_size
    if k > g.universe_size or len(edges(m)) > len(edges(g)):
        return None
    adj = adjacency(g)
    madj = adjacency(m)
    nbhd = {}
    cands = connected_subsets(g)
    for s in cands:
        nbhd[s] = frozenset().union(*(adj[v] for v in s)) - s
    chosen: list[frozenset] = []

    def extend(i, used, free_count):
        if i == k:
            return True
        for s in cands:
            if len(s) > free_count - (k - i - 1):
                break
            if s & used:
                continue
            if any(not (nbhd[s] & chosen[j]) for j in madj[i] if j < i):
                continue
            chosen.append(s)
            if extend(i + 1, used | s, free_count - len(s)):
                return True
            chosen.pop()
        return False

    if extend(0, frozenset(), g.universe_size):
        return MinorMap(tuple(chosen))
    return None


def random_minor(g: Structure, rng: random.Random, steps: int | None = None):
    """Random minor of ``g`` by vertex/edge deletions and edge contractions.

    Returns ``(minor, minor_map)``; the minor keeps at least one vertex.
    """
    if not is_graph(g):
        raise PreconditionError("random_minor needs an undirected loopless graph")
    sets = [frozenset({v}) for v in g.universe]
    es = {frozenset(e) for e in edges(g)}
    if steps is None:
        steps = rng.randint(0, g.universe_size)
    for _ in range(steps):
        op = rng.choice(("vertex", "edge", "contract"))
        if op == "vertex" and len(sets) > 1:
            x = rng.randrange(len(sets))
            sets.pop(x)
            es = {_shift(e, x) for e in es if x not in e}
        elif op == "edge" and es:
            es.discard(rng.choice(sorted(es, key=sorted)))
        elif op == "contract" and es:
            i, j = sorted(rng.choice(sorted(es, key=sorted)))
            sets[i] = sets[i] | sets[j]
            sets.pop(j)
            merged = set()
            for e in es:
                e = frozenset(i if v == j else v for v in e)
                if len(e) == 2:
                    merged.add(_shift(e, j))
            es = merged
    minor = graph(len(sets), [tuple(sorted(e)) for e in es])
    return minor, MinorMap(tuple(sets))


def _shift(e: frozenset, removed: int) -> frozenset:
    return frozenset(v - 1 if v > removed else v for v in e)
