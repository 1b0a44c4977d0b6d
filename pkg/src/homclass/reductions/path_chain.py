"""Colored paths to directed paths to st-paths to cycles.

Vertex codes: in layered graphs ``(i, u)`` is ``i * n + u``; in the st-path
graph built from a directed-path instance ``s = 0``, ``t = 1`` and
``(i, u) = 2 + i * n + u``.

An st-path instance ``(G, s, t, k)`` asks for a path with at most ``k``
edges.  Before building cycles it is rewritten (:func:`exact_length_form`)
into a bipartite instance whose yes-instances are exactly those with an
``s``-``t`` walk of exactly ``K`` edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from ..structures import (
    EDGE,
    Structure,
    adjacency,
    digraph,
    graph,
    make_family,
    require_same_vocabulary,
    star,
    star_symbol,
    unstar,
)
from .base import ReductionOutput


def _path_len(pstar: Structure) -> int:
    p = unstar(pstar)
    k = p.universe_size
    if k < 2:
        raise PreconditionError("colored paths need at least two vertices")
    if p != make_family("path", k):
        raise PreconditionError("left side is not a starred undirected path 0-1-...-(k-1)")
    return k


def homstar_path_to_dipath(pstar: Structure, b: Structure) -> ReductionOutput:
    """``(P_k*, B)`` to ``(dipath_k, B')`` on the layers ``[k] x B``.

    ``(i, b) -> (i+1, b')`` is an arc when ``b`` is in ``C_i``, ``b'`` in
    ``C_{i+1}`` and ``b``, ``b'`` are adjacent in both directions in ``B``.
    """
    require_same_vocabulary(pstar, b)
    k = _path_len(pstar)
    n = b.universe_size
    e = b.relation_set(EDGE)
    cols = [sorted(v for (v,) in b.relation(star_symbol(i))) for i in range(k)]
    arcs = [(i * n + x, (i + 1) * n + y)
            for i in range(k - 1) for x in cols[i] for y in cols[i + 1]
            if (x, y) in e and (y, x) in e]
    target = (make_family("dipath", k), digraph(k * n, arcs))

    def forward(h):
        return tuple(i * n + h[i] for i in range(k))

    def backward(g):
        return tuple(v % n for v in g)

    return ReductionOutput("homstar-path-to-dipath", "hom", "hom", (pstar, b), target,
                           forward, backward, {"k": k}, parsimonious=True)


def dipath_to_stpath(p: Structure, g: Structure) -> ReductionOutput:
    """``(dipath_k, G)`` to ``(G', s, t, k + 2)``.

    ``G'`` is the symmetric closure of the layered arcs ``(i,u) -> (i+1,v)``
    for arcs ``(u, v)`` of ``G``, plus ``s`` joined to layer 0 and ``t`` to
    layer ``k - 1``.  Every ``s``-``t`` path has ``k + 1`` edges or at least
    ``k + 3`` (parity), so the bound ``k + 2`` admits only straight ones.
    """
    require_same_vocabulary(p, g)
    k = p.universe_size
    if k < 1 or p != (make_family("dipath", k) if k >= 2 else digraph(1)):
        raise PreconditionError("left side is not a directed path 0->1->...->(k-1)")
    n = g.universe_size
    s, t = 0, 1
    code = lambda i, u: 2 + i * n + u
    es = [(code(i, u), code(i + 1, v)) for i in range(k - 1) for u, v in g.relation(EDGE)]
    es += [(s, code(0, u)) for u in g.universe]
    es += [(t, code(k - 1, u)) for u in g.universe]
    gp = graph(2 + k * n, es)

    def forward(h):
        return [s] + [code(i, h[i]) for i in range(k)] + [t]

    def backward(path):
        inner = list(path)[1:-1]
        if len(inner) != k:
            raise PreconditionError(f"path has {len(inner) + 1} edges, expected {k + 1}")
        return tuple((v - 2) % n for v in inner)

    return ReductionOutput("dipath-to-stpath", "hom", "stpath", (p, g), (gp, s, t, k + 2),
                           forward, backward, {"k": k})


# ---------------------------------------------------------------------------
# exact-length normal form

@dataclass(frozen=True)
class ExactLength:
    """``(H, s, t, K)`` where ``s``-``t`` walks with exactly ``K`` edges
    exist iff the source has an ``s``-``t`` path with at most ``k`` edges.

    ``H`` is bipartite.  In ``direct`` mode it is the source graph itself
    (already bipartite, ``K`` chosen with the right parity); in ``layered``
    mode it has layers ``0..k`` of the source joined along edges and by a
    lazy "stay" step, so every ``s``-``t`` walk has at least ``K`` edges.
    Fresh vertices may be chained in front of ``s`` to adjust ``K``.
    """

    graph: Structure
    s: int
    t: int
    length: int
    base_n: int  # vertices of the source graph
    layers: int  # 1 in direct mode
    prefix: int  # fresh vertices in front of s, coded after the layers
    mode: str


def _two_coloring(g: Structure):
    adj = adjacency(g)
    color = {}
    for start in g.universe:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def exact_length_form(g: Structure, s: int, t: int, k: int, *, even: bool = False,
                      minimum: int = 0, mode: str | None = None) -> ExactLength:
    """Normal form of ``(g, s, t, k)``.  With ``even`` the length is made even
    and at least ``minimum`` by prepending fresh neighbours of ``s``."""
    if k < 0:
        raise PreconditionError("k must be non-negative")
    n = g.universe_size
    for v in (s, t):
        if not 0 <= v < n:
            raise PreconditionError(f"vertex {v} outside universe")
    adj = adjacency(g)
    color = _two_coloring(g) if mode in (None, "direct") else None
    direct = False
    if color is not None:
        length = k if (color[s] ^ color[t]) == k % 2 else k - 1
        direct = length >= 0 and not (s == t and length > 0 and not adj[s])
    if mode == "direct" and not direct:
        raise PreconditionError("direct mode needs a bipartite instance with a usable parity")
    if direct:
        layers, es = 1, [(u, v) for u in g.universe for v in adj[u] if u < v]
        src, tgt = s, t
    else:
        layers, length = k + 1, k
        es = []
        for i in range(k):
            for u in g.universe:
                es.append((i * n + u, (i + 1) * n + u))
                es.extend((i * n + u, (i + 1) * n + v) for v in adj[u])
        src, tgt = s, k * n + t
    total = layers * n
    prefix = 0
    while even and (length % 2 or length < minimum):
        es.append((total + prefix, src))
        src = total + prefix
        prefix += 1
        length += 1
    h = graph(total + prefix, es)
    return ExactLength(h, src, tgt, length, n, layers, prefix, "direct" if direct else "layered")


def walk_to_source_path(ex: ExactLength, walk) -> list:
    """Project a walk of the normal form back to a simple path of the source."""
    verts = [v % ex.base_n for v in walk if v < ex.layers * ex.base_n]
    steps = [verts[0]]
    for v in verts[1:]:
        if v != steps[-1]:
            steps.append(v)
    # shortcut cycles so the result is a simple path
    out = []
    pos = {}
    for v in steps:
        if v in pos:
            del out[pos[v] + 1:]
            pos = {x: i for i, x in enumerate(out)}
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def source_path_to_walk(ex: ExactLength, path) -> list:
    """Walk of the normal form with exactly ``ex.length`` edges along ``path``."""
    path = list(path)
    d = len(path) - 1
    n = ex.base_n
    if ex.mode == "layered":
        k = ex.layers - 1
        if d > k:
            raise PreconditionError(f"path has {d} edges, bound is {k}")
        body = [i * n + path[min(i, d)] for i in range(ex.layers)]
    else:
        body = list(path)
    walk = [ex.layers * n + j for j in range(ex.prefix - 1, -1, -1)] + body
    missing = ex.length - (len(walk) - 1)
    if missing < 0 or missing % 2:
        raise PreconditionError("path length does not fit the normal form")
    if missing:
        if len(walk) > 1:
            x, y = walk[-2], walk[-1]
        else:
            y = walk[-1]
            x = min(adjacency(ex.graph)[y])
        walk += [x, y] * (missing // 2)
    return walk


def _cycle_graph(ex: ExactLength):
    """Arcs on positions ``0..L-1`` of ``H``: position ``i`` to ``i + 1``
    along edges of ``H``, and ``t`` at the last position back to ``s``."""
    h = ex.graph
    nh = h.universe_size
    adj = adjacency(h)
    L = ex.length + 1
    arcs = [(i * nh + u, (i + 1) * nh + v)
            for i in range(L - 1) for u in h.universe for v in adj[u]]
    arcs.append(((L - 1) * nh + ex.t, ex.s))
    return L, nh, arcs


def stpath_to_dicycle(g: Structure, s: int, t: int, k: int) -> ReductionOutput:
    """``(G, s, t, k)`` to ``(dicycle_L, G')`` with ``L`` odd.

    ``G'`` has ``L`` layers of the normal form ``H`` with arcs from layer
    ``i`` to ``i + 1`` along edges of ``H`` and one arc from ``t`` in the
    last layer back to ``s`` in layer 0.  Closed walks of length ``L`` are
    exactly one lap: an ``s``-``t`` walk of ``H`` with ``L - 1`` edges.
    """
    ex = exact_length_form(g, s, t, k, even=True, minimum=2)
    L, nh, arcs = _cycle_graph(ex)
    target = (make_family("dicycle", L), digraph(L * nh, arcs))

    def forward(path):
        walk = source_path_to_walk(ex, path)
        return tuple(i * nh + w for i, w in enumerate(walk))

    def backward(hom):
        return walk_to_source_path(ex, _unroll(hom, nh, L))

    return ReductionOutput("stpath-to-dicycle", "stpath", "hom", (g, s, t, k), target,
                           forward, backward, {"k": k, "cycle_length": L, "prefix": ex.prefix})


def _unroll(hom, nh, L):
    """H-walk of a cycle homomorphism, starting at the vertex in layer 0."""
    start = next(i for i, v in enumerate(hom) if v // nh == 0)
    return [hom[(start + i) % L] % nh for i in range(L)]


def stpath_to_cyclestar(g: Structure, s: int, t: int, k: int) -> ReductionOutput:
    """``(G, s, t, k)`` to ``(C_L*, G'')``: the previous graph made symmetric
    and colored by layer, ``C_i = {i} x H``."""
    ex = exact_length_form(g, s, t, k, even=True, minimum=2)
    L, nh, arcs = _cycle_graph(ex)
    cyc = star(make_family("cycle", L))
    sym = set(arcs) | {(v, u) for u, v in arcs}
    rels = {EDGE: sym}
    for i in range(L):
        rels[star_symbol(i)] = [(i * nh + v,) for v in range(nh)]
    target = (cyc, Structure(cyc.vocabulary, L * nh, rels))

    def forward(path):
        walk = source_path_to_walk(ex, path)
        return tuple(i * nh + w for i, w in enumerate(walk))

    def backward(hom):
        return walk_to_source_path(ex, [v % nh for v in hom])

    return ReductionOutput("stpath-to-cyclestar", "stpath", "hom", (g, s, t, k), target,
                           forward, backward, {"k": k, "cycle_length": L, "prefix": ex.prefix})

