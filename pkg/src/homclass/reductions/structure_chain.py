"""The chain minor -> host -> structure -> core without constants -> any structure.

Each function takes an instance with constants (left side ``X*`` for a
graph or structure ``X``, right side over the same vocabulary) and returns a
:class:`ReductionOutput`.
"""

from __future__ import annotations

from itertools import product

from ..errors import PreconditionError
from ..minors import MinorMap, validate_minor_map
from ..solvers import CORE_BOUND, CoreResult, is_core
from ..structures import (
    EDGE,
    Structure,
    direct_product,
    gaifman,
    induced_substructure,
    is_graph,
    require_same_vocabulary,
    star,
    star_symbol,
    unstar,
)
from .base import ReductionOutput


def _colors(b: Structure, x: int) -> list[int]:
    return sorted(v for (v,) in b.relation(star_symbol(x)))


def reduce_minor_to_host(mstar: Structure, b: Structure, g: Structure, mu: MinorMap) -> ReductionOutput:
    """``(M*, B)`` to ``(G*, B')`` for a minor map ``mu`` of ``M`` into ``G``.

    ``B' = (M x B) + {bot}`` where ``(m1,b1) ~ (m2,b2)`` iff ``m1 = m2``
    forces ``b1 = b2`` and an ``M``-edge forces a ``B``-edge; ``bot`` is
    adjacent to everything.  Host vertices in the branch set of ``m`` get the
    colors ``{m} x C_m``, the others ``{bot}``.
    """
    require_same_vocabulary(mstar, b)
    m = unstar(mstar)
    problems = validate_minor_map(m, g, mu)
    if problems:
        raise PreconditionError("invalid minor map: " + "; ".join(problems))
    nm, nb = m.universe_size, b.universe_size
    bot = nm * nb
    m_edge = m.relation_set(EDGE)
    b_edge = b.relation_set(EDGE)
    enc = lambda mi, bi: mi * nb + bi
    arcs = set()
    for (m1, b1), (m2, b2) in product(product(range(nm), range(nb)), repeat=2):
        if m1 == m2 and b1 != b2:
            continue
        if (m1, m2) in m_edge and (b1, b2) not in b_edge:
            continue
        arcs.add((enc(m1, b1), enc(m2, b2)))
    for v in range(bot + 1):
        arcs.add((bot, v))
        arcs.add((v, bot))
    owner = {v: mi for mi, s in enumerate(mu.branch_sets) for v in s}
    gstar = star(g)
    rels = {EDGE: arcs}
    for v in g.universe:
        if v in owner:
            rels[star_symbol(v)] = [(enc(owner[v], bi),) for bi in _colors(b, owner[v])]
        else:
            rels[star_symbol(v)] = [(bot,)]
    bprime = Structure(gstar.vocabulary, bot + 1, rels)

    def forward(h):
        return tuple(enc(owner[v], h[owner[v]]) if v in owner else bot for v in g.universe)

    def backward(hg):
        return tuple(hg[min(mu.branch_sets[mi])] % nb for mi in range(nm))

    return ReductionOutput(
        name="minor-to-host",
        source_kind="hom",
        target_kind="hom",
        source=(mstar, b),
        target=(gstar, bprime),
        forward=forward,
        backward=backward,
        params={"minor_map": [sorted(s) for s in mu.branch_sets]},
        parsimonious=True,
    )


def reduce_gaifman_to_structure(gstar: Structure, b: Structure, a: Structure) -> ReductionOutput:
    """``(G*, B)`` to ``(A*, B')`` for a structure ``A`` with Gaifman graph ``G``.

    ``B'`` lives on ``A x B``: the colors are ``C'_x = {x} x C_x`` and a
    tuple over ``R`` is kept when its first coordinates form a tuple of
    ``R^A`` and every pair of distinct first coordinates carries a ``B``-edge
    on the second coordinates.
    """
    require_same_vocabulary(gstar, b)
    g = unstar(gstar)
    if not is_graph(g):
        raise PreconditionError("left side must be a starred undirected graph")
    if g.universe_size != a.universe_size or gaifman(a).relation_set(EDGE) != g.relation_set(EDGE):
        raise PreconditionError("the Gaifman graph of the structure differs from the given graph")
    nb = b.universe_size
    b_edge = b.relation_set(EDGE)
    enc = lambda x, y: x * nb + y
    astar = star(a)
    rels = {}
    for sym, rel in a.items():
        out = []
        for t in rel:
            distinct = sorted(set(t))
            for vals in product(range(nb), repeat=len(distinct)):
                val = dict(zip(distinct, vals))
                if all((val[x], val[y]) in b_edge for x in distinct for y in distinct if x != y):
                    out.append(tuple(enc(x, val[x]) for x in t))
        rels[sym.name] = out
    for x in a.universe:
        rels[star_symbol(x)] = [(enc(x, y),) for y in _colors(b, x)]
    bprime = Structure(astar.vocabulary, a.universe_size * nb, rels)

    def forward(h):
        return tuple(enc(x, h[x]) for x in a.universe)

    def backward(h2):
        return tuple(v % nb for v in h2)

    return ReductionOutput(
        name="gaifman-to-structure",
        source_kind="hom",
        target_kind="hom",
        source=(gstar, b),
        target=(astar, bprime),
        forward=forward,
        backward=backward,
        params={"structure_universe": a.universe_size},
        parsimonious=True,
    )


def reduce_drop_constants_core(dstar: Structure, b: Structure, *, embedding: bool = False,
                               core_bound=CORE_BOUND) -> ReductionOutput:
    """``(D*, B)`` to ``(D, B')`` for a core ``D``.

    ``B'`` is the substructure of ``D x B`` (constants dropped from ``B``)
    induced by the pairs ``(d, b)`` with ``b`` in ``C_d``.  With
    ``embedding`` the target is read as an embedding instance.
    """
    require_same_vocabulary(dstar, b)
    d = unstar(dstar)
    if not is_core(d, max_size=core_bound):
        raise PreconditionError("left side is not the starred expansion of a core")
    b_plain = b.restrict(d.vocabulary.names).reorder(d.vocabulary)
    prod, codec = direct_product(d, b_plain)
    keep = [codec.encode(x, y) for x in d.universe for y in _colors(b, x)]
    if keep:
        bprime, carrier = induced_substructure(prod, keep)
    else:
        # no element is colorable: the empty target admits no homomorphism
        bprime, carrier = Structure(d.vocabulary, 0), ()
    pos = {old: i for i, old in enumerate(carrier)}

    def forward(h):
        return tuple(pos[codec.encode(x, h[x])] for x in d.universe)

    def backward(g):
        pairs = [codec.decode(carrier[v]) for v in g]
        sigma = tuple(p[0] for p in pairs)
        # sigma is an automorphism of the core; sigma^m = id for its order m
        power = tuple(d.universe)
        while True:
            nxt = tuple(sigma[x] for x in power)
            if nxt == tuple(d.universe):
                break
            power = nxt  # ends as sigma^(m-1)
        return tuple(pairs[power[x]][1] for x in d.universe)

    return ReductionOutput(
        name="drop-constants-core",
        source_kind="hom",
        target_kind="emb" if embedding else "hom",
        source=(dstar, b),
        target=(d, bprime),
        forward=forward,
        backward=backward,
        params={"target_universe": len(carrier), "embedding": embedding},
        parsimonious=False,
    )


def reduce_core_to_structure(cr: CoreResult, a: Structure, b: Structure) -> ReductionOutput:
    """``(core(A), B)`` to ``(A, B)`` through the retraction and inclusion."""
    require_same_vocabulary(a, b)
    carrier = cr.carrier
    pos = {x: i for i, x in enumerate(carrier)}

    def forward(h):
        return tuple(h[pos[cr.retraction[x]]] for x in a.universe)

    def backward(g):
        return tuple(g[x] for x in carrier)

    return ReductionOutput(
        name="core-to-structure",
        source_kind="hom",
        target_kind="hom",
        source=(cr.core, b),
        target=(a, b),
        forward=forward,
        backward=backward,
        params={"carrier": list(carrier)},
    )


def reduce_add_constants(a: Structure, b: Structure) -> ReductionOutput:
    """``(A, B)`` to ``(A*, B')`` where every color of ``B'`` is all of ``B``."""
    require_same_vocabulary(a, b)
    astar = star(a)
    bprime = b.reorder(a.vocabulary).with_relations(
        {star_symbol(x): (1, [(y,) for y in b.universe]) for x in a.universe})
    ident = lambda h: tuple(h)
    return ReductionOutput(
        name="add-constants",
        source_kind="hom",
        target_kind="hom",
        source=(a, b),
        target=(astar, bprime),
        forward=ident,
        backward=ident,
        parsimonious=True,
    )
