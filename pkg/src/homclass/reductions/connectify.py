"""Making embedding instances connected without losing the width bound.

Both constructions add one fresh binary symbol to the left structure and
interpret it by ``B x B`` on the right, so embeddings are unchanged.

* :func:`connectify_td` adds the edges of an optimal elimination forest plus
  edges from the root of the first component to the other roots; tree depth
  grows by at most one.
* :func:`connectify_tw` adds ``X_t x X_t`` for every bag of a tree
  decomposition whose bags have at least two elements and whose adjacent
  bags intersect; the decomposition stays valid.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..errors import PreconditionError
from ..structures import Structure, adjacency, connected_components, graph, require_same_vocabulary
from ..widths import (
    RootedForest,
    TreeDecomposition,
    treedepth_exact,
    treewidth_exact,
    validate_tree_decomposition,
)
from .base import ReductionOutput

TD_SYMBOL = "Etd"
TW_SYMBOL = "Rtw"


@dataclass(frozen=True)
class Connectified:
    structure: Structure
    symbol: str
    forest: RootedForest | None = None
    decomposition: TreeDecomposition | None = None
    td_bound: int | None = None


def _fresh(a: Structure, symbol: str):
    if symbol in a.vocabulary:
        raise PreconditionError(f"symbol {symbol!r} already in the vocabulary")


def expand_target(b: Structure, symbol: str) -> Structure:
    """``b`` with ``symbol`` interpreted by all pairs."""
    _fresh(b, symbol)
    return b.with_relations({symbol: (2, [(x, y) for x in b.universe for y in b.universe])})


def connectify_td(a: Structure, symbol: str = TD_SYMBOL, forest: RootedForest | None = None) -> Connectified:
    _fresh(a, symbol)
    if forest is None:
        depth, forest = treedepth_exact(a)
    else:
        depth = forest.height
    pairs = set()
    for v, p in enumerate(forest.parent):
        if p is not None:
            pairs |= {(v, p), (p, v)}
    comps = connected_components(a)
    root_of = {}
    for v in a.universe:
        r = v
        while forest.parent[r] is not None:
            r = forest.parent[r]
        root_of[v] = r
    first = root_of[comps[0][0]]
    for comp in comps[1:]:
        r = root_of[comp[0]]
        if r != first:
            pairs |= {(first, r), (r, first)}
    out = a.with_relations({symbol: (2, pairs)})
    return Connectified(out, symbol, forest=forest, td_bound=depth + 1)


def prepare_tw_decomposition(a: Structure, td: TreeDecomposition) -> TreeDecomposition:
    """Make adjacent bags intersect and every bag hold two or more elements.

    Rooting the tree at node 0, a bag disjoint from its parent receives the
    parent's smallest element (keeping occurrences connected); then bags
    contained in a neighbour are merged into it.  Width grows by at most one.
    With a one-element universe the single bag ``{0}`` is returned.
    """
    problems = validate_tree_decomposition(a, td)
    if problems:
        raise PreconditionError("invalid tree decomposition: " + "; ".join(problems))
    if a.universe_size == 1:
        return TreeDecomposition.make([], [{0}])
    bags = [set(x) for x in td.bags]
    adj = adjacency(td.tree)
    parent = {0: None}
    order = [0]
    q = deque([0])
    while q:
        t = q.popleft()
        for s in sorted(adj[t]):
            if s not in parent:
                parent[s] = t
                order.append(s)
                q.append(s)
    for t in order[1:]:
        if not bags[t] & bags[parent[t]]:
            bags[t].add(min(bags[parent[t]]))
    nbrs = {t: set(adj[t]) for t in range(len(bags))}
    alive = set(range(len(bags)))
    changed = True
    while changed:
        changed = False
        for c in sorted(alive):
            t = next((t for t in sorted(nbrs[c]) if bags[c] <= bags[t]), None)
            if t is None:
                continue
            for d in nbrs[c] - {t}:
                nbrs[d].discard(c)
                nbrs[d].add(t)
                nbrs[t].add(d)
            nbrs[t].discard(c)
            alive.discard(c)
            del nbrs[c]
            changed = True
            break
    keep = sorted(alive)
    new = {t: i for i, t in enumerate(keep)}
    edges = {(min(new[t], new[s]), max(new[t], new[s])) for t in keep for s in nbrs[t]}
    return TreeDecomposition(graph(len(keep), sorted(edges)), tuple(frozenset(bags[t]) for t in keep))


def _tw_preconditions(a: Structure, td: TreeDecomposition) -> list[str]:
    problems = validate_tree_decomposition(a, td)
    if a.universe_size > 1 and any(len(x) < 2 for x in td.bags):
        problems.append("a bag has fewer than two elements")
    for s, t in td.tree.relation("E"):
        if not td.bags[s] & td.bags[t]:
            problems.append(f"adjacent bags {s} and {t} are disjoint")
    return problems


def connectify_tw(a: Structure, td: TreeDecomposition | None = None,
                  symbol: str = TW_SYMBOL) -> Connectified:
    """Expansion by ``symbol = union of X_t x X_t``.

    Without ``td`` an optimal decomposition is computed and prepared with
    :func:`prepare_tw_decomposition`; a given ``td`` must already satisfy
    the bag conditions.
    """
    _fresh(a, symbol)
    if td is None:
        td = prepare_tw_decomposition(a, treewidth_exact(a)[1])
    problems = _tw_preconditions(a, td)
    if problems:
        raise PreconditionError("decomposition unsuitable for connectification: " + "; ".join(problems))
    pairs = {(x, y) for bag in td.bags for x in bag for y in bag}
    return Connectified(a.with_relations({symbol: (2, pairs)}), symbol, decomposition=td)


def _identity_reduction(name, a, b, conn: Connectified) -> ReductionOutput:
    ident = lambda h: tuple(h)
    require_same_vocabulary(a, b)
    bprime = expand_target(b.reorder(a.vocabulary), conn.symbol)
    params = {"symbol": conn.symbol}
    if conn.td_bound is not None:
        params["td_bound"] = conn.td_bound
    if conn.decomposition is not None:
        params["bags"] = [sorted(x) for x in conn.decomposition.bags]
    return ReductionOutput(name, "emb", "emb", (a, b), (conn.structure, bprime),
                           ident, ident, params, parsimonious=True)


def connectify_td_reduction(a: Structure, b: Structure, symbol: str = TD_SYMBOL) -> ReductionOutput:
    return _identity_reduction("connectify-td", a, b, connectify_td(a, symbol))


def connectify_tw_reduction(a: Structure, b: Structure, td: TreeDecomposition | None = None,
                            symbol: str = TW_SYMBOL) -> ReductionOutput:
    return _identity_reduction("connectify-tw", a, b, connectify_tw(a, td, symbol))
