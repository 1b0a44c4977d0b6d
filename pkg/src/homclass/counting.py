"""Counting homomorphisms: constants removed by inclusion-exclusion, a tree
dynamic program, and parsimony checks for the count-preserving reductions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import kernels
from .errors import InvariantFailure, PreconditionError, SizeBoundExceeded
from .solvers import CORE_BOUND, _starred_tree, count_homs, rooted_children
from .structures import (
    Structure,
    direct_product,
    induced_substructure,
    require_same_vocabulary,
    star_symbol,
    unstar,
)

INCL_EXCL_BOUND = 10


def count_automorphisms(a: Structure, *, max_size=CORE_BOUND) -> int:
    """Number of bijective endomorphisms of ``a``."""
    if max_size is not None and a.universe_size > max_size:
        raise SizeBoundExceeded(f"|A| = {a.universe_size} exceeds bound {max_size}")
    # on a finite structure a bijective endomorphism is exactly an injective one
    return kernels.count(a, a, injective=True)


@dataclass
class CountQuery:
    subset: tuple[int, ...]  # S, sorted
    instance: tuple  # (A, B_S)
    count: int


@dataclass
class CountQueryLog:
    entries: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def left_sides(self) -> set:
        return {q.instance[0] for q in self.entries}

    def as_list(self) -> list[dict]:
        return [{"subset": list(q.subset), "target_universe": q.instance[1].universe_size,
                 "count": q.count} for q in self.entries]


def subset_target(a: Structure, b_plain: Structure, colors: list, subset) -> Structure:
    """``B_S``: the part of ``A x B`` induced on pairs ``(x, y)`` with
    ``x`` in ``subset`` and ``y`` in ``C_x``."""
    prod, codec = direct_product(a, b_plain)
    keep = [codec.encode(x, y) for x in sorted(subset) for y in colors[x]]
    if not keep:
        return Structure(a.vocabulary, 0)
    return induced_substructure(prod, keep)[0]


def count_star_via_inclusion_exclusion(
    astar: Structure,
    b: Structure,
    oracle: Callable[[Structure, Structure], int] | None = None,
    *,
    max_size=INCL_EXCL_BOUND,
) -> tuple[int, CountQueryLog]:
    """Count homomorphisms ``A* -> B`` using only counts of ``A -> B_S``.

    Homomorphisms ``A -> B_A`` whose first coordinate is onto are pairs of
    an automorphism of ``A`` and a homomorphism ``A* -> B``, so their number
    divided by ``|Aut(A)|`` is the answer.  That number comes from the
    subset counts by inclusion-exclusion.  The oracle (default: brute-force
    counting) is asked once per nonempty subset, in bitmask order.
    """
    require_same_vocabulary(astar, b)
    a = unstar(astar)
    n = a.universe_size
    if max_size is not None and n > max_size:
        raise SizeBoundExceeded(f"|A| = {n} exceeds bound {max_size}")
    if oracle is None:
        oracle = lambda x, y: count_homs(x, y, max_size=None)
    log = CountQueryLog()
    if n == 0:
        return 1, log
    b_plain = b.restrict(a.vocabulary.names).reorder(a.vocabulary)
    colors = [sorted(y for (y,) in b.relation(star_symbol(x))) for x in a.universe]
    onto = 0
    for mask in range(1, 1 << n):
        subset = tuple(x for x in range(n) if mask >> x & 1)
        bs = subset_target(a, b_plain, colors, subset)
        c = int(oracle(a, bs))
        log.entries.append(CountQuery(subset, (a, bs), c))
        onto += c if (n - len(subset)) % 2 == 0 else -c
    aut = count_automorphisms(a, max_size=None)
    if onto % aut:
        raise InvariantFailure(f"inclusion-exclusion total {onto} not divisible by |Aut(A)| = {aut}")
    return onto // aut, log


def td_dp_count(tstar: Structure, b: Structure, root: int = 0) -> int:
    """Homomorphisms from a starred tree, counted bottom-up.

    ``N[v][y]`` is the number of homomorphisms of the subtree at ``v``
    sending ``v`` to ``y``; it is the product over children ``c`` of the sum
    of ``N[c][y']`` over ``y'`` in ``C_c`` adjacent to ``y`` in both
    directions.
    """
    require_same_vocabulary(tstar, b)
    t, sym = _starred_tree(tstar)
    if not 0 <= root < t.universe_size:
        raise PreconditionError(f"root {root} outside the tree")
    order, children = rooted_children(t, sym, root)
    edge = b.relation_set(sym)
    nbrs = {y: [z for z in b.universe if (y, z) in edge and (z, y) in edge] for y in b.universe}
    table: list[dict] = [{} for _ in t.universe]
    for v in reversed(order):
        for (y,) in b.relation(star_symbol(v)):
            total = 1
            for c in children[v]:
                total *= sum(table[c].get(z, 0) for z in nbrs[y])
                if not total:
                    break
            table[v][y] = total
    return sum(table[root].values())


def count_via_tree_decomposition(a: Structure, b: Structure, td=None) -> int:
    """Count through the (count-preserving) tree-decomposition reduction."""
    from .reductions import reduce_via_tree_decomposition
    from .widths import treewidth_exact

    if td is None:
        td = treewidth_exact(a)[1]
    ro = reduce_via_tree_decomposition(a, b, td)
    return count_homs(*ro.target, max_size=None)


# ---------------------------------------------------------------------------
# parsimony

PARSIMONIOUS = ("tree-decomposition", "minor-to-host", "gaifman-to-structure")


@dataclass
class ParsimonyReport:
    name: str
    trials: int
    seed: int
    equal: int = 0
    nonzero: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.equal == self.trials

    def as_dict(self) -> dict:
        return {"name": self.name, "trials": self.trials, "seed": self.seed, "equal": self.equal,
                "nonzero": self.nonzero, "mismatches": list(self.mismatches), "ok": self.ok}


def check_parsimony(reduction_name: str, trials: int = 200, seed: int = 0) -> ParsimonyReport:
    """Compare source and target hom counts on random instances."""
    from .random_instances import REDUCTION_SAMPLERS

    if reduction_name not in PARSIMONIOUS:
        raise PreconditionError(f"{reduction_name!r} is not registered as parsimonious "
                                f"(registered: {', '.join(PARSIMONIOUS)})")
    sampler = REDUCTION_SAMPLERS[reduction_name]
    rng = random.Random(seed)
    rep = ParsimonyReport(reduction_name, trials, seed)
    for i in range(trials):
        ro = sampler(rng)
        src = count_homs(*ro.source, max_size=None)
        tgt = count_homs(*ro.target, max_size=None)
        if src == tgt:
            rep.equal += 1
            rep.nonzero += src > 0
        else:
            rep.mismatches.append({"trial": i, "source": src, "target": tgt})
    return rep
