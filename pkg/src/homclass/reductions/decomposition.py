"""From a homomorphism instance with a tree decomposition to a starred tree.

The target left side is ``T*`` for the decomposition tree ``T``.  Elements
of the target right side ``B'`` are partial homomorphisms ``f`` from ``A``
to ``B``; ``(f, g)`` is an edge when ``f`` and ``g`` agree on their common
domain (so every element carries a loop) and ``C_t`` holds the ``f`` whose
domain is the bag ``X_t``.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations, product

from ..errors import PreconditionError
from ..structures import Structure, require_same_vocabulary, star
from ..widths import TreeDecomposition, validate_tree_decomposition, width
from .base import ReductionOutput


def partial_homs(a: Structure, b: Structure, dom: tuple):
    """All homomorphisms from the substructure induced by ``dom``, as value tuples."""
    inside = set(dom)
    pos = {x: i for i, x in enumerate(dom)}
    local = [(b.relation_set(name), t) for name, t in a.tuples() if set(t) <= inside]
    out = []
    for vals in product(range(b.universe_size), repeat=len(dom)):
        if all(tuple(vals[pos[x]] for x in t) in rel for rel, t in local):
            out.append(vals)
    return out


def reduce_via_tree_decomposition(a: Structure, b: Structure, td: TreeDecomposition,
                                  *, literal: bool = False) -> ReductionOutput:
    """Homomorphism instance ``(A, B)`` to ``(T*, B')`` preserving hom counts.

    By default ``B'`` holds only partial homomorphisms whose domain is a bag.
    With ``literal`` it holds every partial homomorphism with at most
    ``width + 1`` elements in its domain, the empty one included.
    """
    require_same_vocabulary(a, b)
    problems = validate_tree_decomposition(a, td)
    if problems:
        raise PreconditionError("invalid tree decomposition: " + "; ".join(problems))
    w = width(td)
    bags = [tuple(sorted(x)) for x in td.bags]
    if literal:
        domains = [d for r in range(w + 2) for d in combinations(a.universe, r)]
    else:
        domains = sorted(set(bags), key=lambda d: (len(d), d))
    elements = []  # (domain, values)
    for d in domains:
        elements.extend((d, vals) for vals in partial_homs(a, b, d))
    index = {e: i for i, e in enumerate(elements)}
    # an empty universe only arises when no bag admits a partial hom, so
    # the source is a no-instance and so is the degenerate target
    elements_n = len(elements)

    by_domain = defaultdict(list)
    for i, (d, vals) in enumerate(elements):
        by_domain[d].append(i)
    edges = set()
    dom_list = list(by_domain)
    for d1 in dom_list:
        for d2 in dom_list:
            common = sorted(set(d1) & set(d2))
            p1 = [d1.index(x) for x in common]
            p2 = [d2.index(x) for x in common]
            groups = defaultdict(list)
            for j in by_domain[d2]:
                groups[tuple(elements[j][1][i] for i in p2)].append(j)
            for i in by_domain[d1]:
                key = tuple(elements[i][1][k] for k in p1)
                for j in groups.get(key, ()):
                    edges.add((i, j))

    m = len(bags)
    tree_sym = "E"
    tstar = star(td.tree)
    vocab = tstar.vocabulary
    rels = {tree_sym: edges}
    for t, bag in enumerate(bags):
        rels[f"C{t}"] = [(i,) for i in by_domain.get(bag, ())]
    bprime = Structure(vocab, elements_n, rels)

    def forward(h):
        return tuple(index[(bag, tuple(h[x] for x in bag))] for bag in bags)

    def backward(g):
        h = [None] * a.universe_size
        for t in range(m):
            d, vals = elements[g[t]]
            for x, v in zip(d, vals):
                h[x] = v
        return tuple(h)

    return ReductionOutput(
        name="tree-decomposition",
        source_kind="hom",
        target_kind="hom",
        source=(a, b),
        target=(tstar, bprime),
        forward=forward,
        backward=backward,
        params={"width": w, "bags": m, "literal": literal, "target_universe": elements_n},
        parsimonious=True,
    )

