"""Independent brute-force oracles shared by the test modules.

None of these call into the search kernels or the width solvers; they
enumerate directly and are only meant for tiny inputs.
"""

from functools import lru_cache
from itertools import permutations, product

from homclass.logic import And, Atom, Eq, Exists, Not, Or
from homclass.minors import MinorMap, validate_minor_map
from homclass.structures import adjacency, gaifman


# -- homomorphisms ------------------------------------------------------------

def enumerate_homs(a, b, injective=False):
    """All maps ``|A| -> |B|`` that preserve every tuple."""
    out = []
    for h in product(range(b.universe_size), repeat=a.universe_size):
        if injective and len(set(h)) < len(h):
            continue
        if all(tuple(h[x] for x in t) in b.relation_set(n) for n, t in a.tuples()):
            out.append(h)
    return out


def brute_count(a, b, injective=False):
    return len(enumerate_homs(a, b, injective))


def brute_core_size(a):
    """Smallest image size of an endomorphism (the core's size)."""
    return min(len(set(h)) for h in enumerate_homs(a, a))


def brute_is_core(a):
    return all(len(set(h)) == a.universe_size for h in enumerate_homs(a, a))


# -- widths -----------------------------------------------------------------

def tw_by_orders(g):
    n = g.universe_size
    adj0 = adjacency(gaifman(g))
    best = n - 1
    for order in permutations(range(n)):
        adj = [set(s) for s in adj0]
        w = 0
        for v in order:
            nb = adj[v]
            w = max(w, len(nb))
            for x in nb:
                adj[x] |= nb - {x}
                adj[x].discard(v)
            adj[v] = set()
        best = min(best, w)
    return max(best, 0)


def pw_by_orders(g):
    n = g.universe_size
    adj = adjacency(gaifman(g))
    best = n
    for order in permutations(range(n)):
        w = 0
        for i in range(n):
            prefix = set(order[:i + 1])
            w = max(w, sum(1 for v in prefix if adj[v] - prefix))
        best = min(best, w)
    return best


def td_recursive(g):
    """td = max over components; for connected G, 1 + min over removed vertex."""
    adj = adjacency(gaifman(g))

    @lru_cache(maxsize=None)
    def td(vs):
        if not vs:
            return 0
        comps, left = [], set(vs)
        while left:
            start = min(left)
            comp, stack = {start}, [start]
            while stack:
                v = stack.pop()
                for w in adj[v] & left:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            comps.append(frozenset(comp))
        if len(comps) > 1:
            return max(td(c) for c in comps)
        if len(vs) == 1:
            return 1
        return 1 + min(td(vs - {v}) for v in vs)

    return td(frozenset(range(g.universe_size)))


# -- minors -------------------------------------------------------------------

def minor_by_labelling(m, g):
    """Label every host vertex with a minor vertex or 'unused' and check."""
    k, n = m.universe_size, g.universe_size
    for lab in product(range(-1, k), repeat=n):
        sets = [frozenset(v for v in range(n) if lab[v] == i) for i in range(k)]
        if any(not s for s in sets):
            continue
        if validate_minor_map(m, g, MinorMap(tuple(sets))) == []:
            return True
    return False


# -- logic --------------------------------------------------------------------

def _free(phi):
    if isinstance(phi, Atom):
        return set(phi.args)
    if isinstance(phi, Eq):
        return {phi.left, phi.right}
    if isinstance(phi, Not):
        return _free(phi.body)
    if isinstance(phi, (And, Or)):
        return set().union(*[_free(p) for p in phi.parts]) if phi.parts else set()
    return _free(phi.body) - {phi.var}


def satisfying_table(a, phi):
    """Bottom-up: the set of satisfying assignments, as frozensets of
    (variable, element) pairs over the free variables of ``phi``."""
    free = sorted(_free(phi))
    universe = range(a.universe_size)
    all_rows = [frozenset(zip(free, vals)) for vals in product(universe, repeat=len(free))]
    if isinstance(phi, Atom):
        rel = a.relation_set(phi.symbol)
        return {r for r in all_rows if tuple(dict(r)[v] for v in phi.args) in rel}
    if isinstance(phi, Eq):
        return {r for r in all_rows if dict(r)[phi.left] == dict(r)[phi.right]}
    if isinstance(phi, Not):
        return set(all_rows) - satisfying_table(a, phi.body)
    if isinstance(phi, (And, Or)):
        tables = [(set(_free(p)), satisfying_table(a, p)) for p in phi.parts]
        out = set()
        for r in all_rows:
            d = dict(r)
            hits = [frozenset((v, d[v]) for v in fv) in t for fv, t in tables]
            if (all(hits) if isinstance(phi, And) else any(hits)):
                out.add(r)
        return out
    inner = satisfying_table(a, phi.body)
    inner_free = _free(phi.body)
    out = set()
    for r in all_rows:
        d = dict(r)
        hits = [frozenset((v, (e if v == phi.var else d[v])) for v in inner_free) in inner
                for e in universe]
        if (any(hits) if isinstance(phi, Exists) else all(hits)):
            out.add(r)
    return out


def naive_holds(a, sentence):
    return frozenset() in satisfying_table(a, sentence)

