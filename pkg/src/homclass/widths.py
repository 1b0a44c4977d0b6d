"""Tree/path decompositions, elimination forests and exact width measures.

All exact algorithms are subset dynamic programs over at most ``2**n``
vertex sets; ties are broken towards the smallest vertex index.  Heights of
rooted forests count vertices, so a single vertex has height 1 and
``treedepth_exact`` of an edge is 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ParseError, PreconditionError, SizeBoundExceeded
from .structures import Structure, adjacency, gaifman, graph

DEFAULT_TREEWIDTH_BOUND = 9
DEFAULT_PATHWIDTH_BOUND = 9
DEFAULT_TREEDEPTH_BOUND = 10


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Structure  # graph on nodes 0..m-1
    bags: tuple[frozenset, ...]

    @classmethod
    def make(cls, tree_edges: Iterable[tuple[int, int]], bags: Sequence[Iterable[int]]):
        bags = tuple(frozenset(b) for b in bags)
        return cls(graph(len(bags), tree_edges), bags)


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset, ...]

    @classmethod
    def make(cls, bags: Sequence[Iterable[int]]):
        return cls(tuple(frozenset(b) for b in bags))

    def as_tree(self) -> TreeDecomposition:
        m = len(self.bags)
        return TreeDecomposition(graph(m, [(i, i + 1) for i in range(m - 1)]), self.bags)


@dataclass(frozen=True)
class RootedForest:
    """``parent[v]`` is ``None`` for roots."""

    parent: tuple

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(v for v, p in enumerate(self.parent) if p is None)

    def children(self) -> list[list[int]]:
        ch = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                ch[p].append(v)
        return ch

    def ancestors(self, v: int) -> list[int]:
        """Proper ancestors of ``v``, nearest first."""
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def depth(self, v: int) -> int:
        return 1 + len(self.ancestors(v))

    @property
    def height(self) -> int:
        return max((self.depth(v) for v in range(self.n)), default=0)


def width(td) -> int:
    return max((len(b) for b in td.bags), default=0) - 1


# ---------------------------------------------------------------------------
# validators

def _tree_problems(t: Structure) -> list[str]:
    m = t.universe_size
    adj = adjacency(t)
    rel = t.relation_set("E") if "E" in t.vocabulary else frozenset()
    problems = []
    if any(u == v or (v, u) not in rel for u, v in rel):
        problems.append("decomposition tree is not an undirected loopless graph")
    n_edges = sum(len(a) for a in adj) // 2
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != m or n_edges != m - 1:
        problems.append("decomposition graph is not a tree")
    return problems


def validate_tree_decomposition(a: Structure, td: TreeDecomposition) -> list[str]:
    """Coverage, edge coverage against the Gaifman graph, connected occurrences."""
    problems = []
    m = len(td.bags)
    if m == 0:
        return ["decomposition has no bags"]
    if td.tree.universe_size != m:
        problems.append(f"tree has {td.tree.universe_size} nodes but there are {m} bags")
        return problems
    problems += _tree_problems(td.tree)
    for i, bag in enumerate(td.bags):
        bad = [x for x in bag if not 0 <= x < a.universe_size]
        if bad:
            problems.append(f"bag {i} has out-of-range elements {sorted(bad)}")
    covered = set().union(*td.bags)
    missing = set(a.universe) - covered
    if missing:
        problems.append(f"elements not covered: {sorted(missing)}")
    for u, v in sorted({(min(p), max(p)) for p in gaifman(a).relation("E")}):
        if not any(u in b and v in b for b in td.bags):
            problems.append(f"edge ({u},{v}) not inside any bag")
    adj = adjacency(td.tree)
    for x in sorted(covered):
        nodes = {i for i, b in enumerate(td.bags) if x in b}
        start = min(nodes)
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in nodes and s not in seen:
                    seen.add(s)
                    stack.append(s)
        if seen != nodes:
            problems.append(f"occurrences of element {x} are not connected")
    return problems


def validate_path_decomposition(a: Structure, pd: PathDecomposition) -> list[str]:
    return validate_tree_decomposition(a, pd.as_tree())


def validate_forest(g: Structure, f: RootedForest) -> list[str]:
    """Acyclicity and the closure property against the Gaifman graph of ``g``."""
    problems = []
    if f.n != g.universe_size:
        return [f"forest has {f.n} vertices, structure has {g.universe_size}"]
    for v in range(f.n):
        seen = {v}
        p = f.parent[v]
        while p is not None:
            if not 0 <= p < f.n:
                problems.append(f"parent of a vertex on the chain of {v} out of range")
                break
            if p in seen:
                problems.append(f"parent chain of {v} has a cycle")
                break
            seen.add(p)
            p = f.parent[p]
    if problems:
        return problems
    anc = [set(f.ancestors(v)) for v in range(f.n)]
    for u, v in sorted({(min(p), max(p)) for p in gaifman(g).relation("E")}):
        if u not in anc[v] and v not in anc[u]:
            problems.append(f"edge ({u},{v}) is not an ancestor/descendant pair")
    return problems


# ---------------------------------------------------------------------------
# exact widths

def _masks(a: Structure):
    adj = adjacency(gaifman(a))
    return [sum(1 << w for w in nb) for nb in adj]


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _guard(a: Structure, bound, what):
    if bound is not None and a.universe_size > bound:
        raise SizeBoundExceeded(f"{what}: universe {a.universe_size} exceeds bound {bound}")


def treewidth_exact(a: Structure, bound: int | None = DEFAULT_TREEWIDTH_BOUND):
    """Optimal width and decomposition via elimination orderings.

    ``TW(S) = min_v max(TW(S - v), |Q(S - v, v)|)`` where ``Q(S, v)`` is the set
    of vertices outside ``S + v`` reachable from ``v`` through ``S``.
    """
    _guard(a, bound, "treewidth_exact")
    n = a.universe_size
    nbr = _masks(a)
    full = (1 << n) - 1

    def q(s, v):
        # vertices outside s|v reachable from v with interior in s
        reach = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nb = nbr[u]
                out |= nb & ~s & ~(1 << v)
                nxt |= nb & s & ~reach
            reach |= nxt
            frontier = nxt
        return bin(out).count("1")

    @lru_cache(maxsize=None)
    def tw(s):
        if s == 0:
            return -1, None
        best = None
        for v in _bits(s):
            rest = s & ~(1 << v)
            val = max(tw(rest)[0], q(rest, v))
            if best is None or val < best[0]:
                best = (val, v)
        return best

    value = max(tw(full)[0], 0)
    order = []
    s = full
    while s:
        v = tw(s)[1]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()  # elimination order: first eliminated first
    td = decomposition_from_order(a, order)
    tw.cache_clear()
    return value, td


def decomposition_from_order(a: Structure, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition from an elimination ordering (fill-in construction)."""
    n = a.universe_size
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(s) for s in adjacency(gaifman(a))]
    bags = []
    parent_of = []
    for v in order:
        higher = {w for w in adj[v] if pos[w] > pos[v]}
        bags.append(frozenset(higher | {v}))
        for x in higher:
            adj[x] |= higher - {x}
        parent_of.append(min(higher, key=pos.__getitem__) if higher else None)
    edges = []
    roots = []
    for i, p in enumerate(parent_of):
        if p is None:
            roots.append(i)
        else:
            edges.append((i, pos[p]))
    for r in roots[:-1]:
        edges.append((r, roots[-1]))
    return TreeDecomposition.make(edges, bags) if n else None


def pathwidth_exact(a: Structure, bound: int | None = DEFAULT_PATHWIDTH_BOUND):
    """Optimal width via vertex separation over layouts.

    ``P(S) = min_{v in S} max(P(S - v), |boundary(S - v)|)`` where the boundary
    of a prefix is the set of its vertices with a neighbour outside it.
    """
    _guard(a, bound, "pathwidth_exact")
    n = a.universe_size
    nbr = _masks(a)
    full = (1 << n) - 1

    def boundary(s):
        return [u for u in _bits(s) if nbr[u] & ~s]

    @lru_cache(maxsize=None)
    def pw(s):
        if s == 0:
            return 0, None
        best = None
        for v in _bits(s):
            rest = s & ~(1 << v)
            val = max(pw(rest)[0], len(boundary(rest)))
            if best is None or val < best[0]:
                best = (val, v)
        return best

    value = pw(full)[0]
    layout = []
    s = full
    while s:
        v = pw(s)[1]
        layout.append(v)
        s &= ~(1 << v)
    layout.reverse()
    pw.cache_clear()
    bags = []
    prefix = 0
    for v in layout:
        bags.append(frozenset(boundary(prefix)) | {v})
        prefix |= 1 << v
    return value, PathDecomposition(tuple(bags))


def treedepth_exact(a: Structure, bound: int | None = DEFAULT_TREEDEPTH_BOUND):
    """Tree depth with an optimal elimination forest.

    For a connected vertex set: 1 if a single vertex, else
    ``1 + min_v max_C td(C)`` over components ``C`` of the set minus ``v``.
    """
    _guard(a, bound, "treedepth_exact")
    n = a.universe_size
    nbr = _masks(a)

    def components(s):
        comps = []
        rest = s
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                nxt = 0
                for u in _bits(frontier):
                    nxt |= nbr[u] & s & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rest &= ~comp
        return comps

    @lru_cache(maxsize=None)
    def td(s):  # s connected
        if s & (s - 1) == 0:
            return 1, None
        best = None
        for v in _bits(s):
            val = 1 + max(td(c)[0] for c in components(s & ~(1 << v)))
            if best is None or val < best[0]:
                best = (val, v)
        return best

    parent = [None] * n

    def build(s, par):
        if s & (s - 1) == 0:
            parent[_bits(s)[0]] = par
            return
        v = td(s)[1]
        parent[v] = par
        for c in components(s & ~(1 << v)):
            build(c, v)

    value = 0
    for comp in components((1 << n) - 1):
        value = max(value, td(comp)[0])
        build(comp, None)
    td.cache_clear()
    return value, RootedForest(tuple(parent))


# ---------------------------------------------------------------------------
# conversions

def normalize_path_decomposition(a: Structure, pd: PathDecomposition) -> PathDecomposition:
    """Nonempty bags, consecutive bags in strict inclusion, same width.

    Between consecutive bags ``X`` and ``Y`` the elements of ``X - Y`` are
    removed one at a time (ascending), then those of ``Y - X`` are added.
    When ``X`` and ``Y`` are disjoint the chain passes through
    ``{min X, min Y}``, which can raise a width-0 decomposition to width 1.
    """
    problems = validate_path_decomposition(a, pd)
    if problems:
        raise PreconditionError("invalid path decomposition: " + "; ".join(problems))
    bags = [b for b in pd.bags if b]
    out = [bags[0]]
    for nxt in bags[1:]:
        cur = out[-1]
        if nxt == cur:
            continue
        if cur & nxt:
            for x in sorted(cur - nxt):
                cur = cur - {x}
                out.append(cur)
            for x in sorted(nxt - cur):
                cur = cur | {x}
                out.append(cur)
        else:
            x, y = min(cur), min(nxt)
            for z in sorted(cur - {x}):
                cur = cur - {z}
                out.append(cur)
            out.append(frozenset({x, y}))
            cur = frozenset({y})
            out.append(cur)
            for z in sorted(nxt - {y}):
                cur = cur | {z}
                out.append(cur)
    # drop immediate repeats created at the seams
    cleaned = [out[0]]
    for b in out[1:]:
        if b != cleaned[-1]:
            cleaned.append(b)
    return PathDecomposition(tuple(cleaned))


def is_normalized(pd: PathDecomposition) -> bool:
    if any(not b for b in pd.bags):
        return False
    return all(x < y or y < x for x, y in zip(pd.bags, pd.bags[1:]))


def forest_to_tree_decomposition(a: Structure, f: RootedForest) -> TreeDecomposition:
    """Bag of node ``t`` is ``t`` plus its ancestors; trees joined at the roots."""
    problems = validate_forest(a, f)
    if problems:
        raise PreconditionError("forest does not witness the closure: " + "; ".join(problems))
    bags = [frozenset([v, *f.ancestors(v)]) for v in range(f.n)]
    edges = [(v, p) for v, p in enumerate(f.parent) if p is not None]
    roots = f.roots
    edges += [(r, roots[0]) for r in roots[1:]]
    return TreeDecomposition.make(edges, bags)


# ---------------------------------------------------------------------------
# text form used in CLI reports: one bag per line

def format_decomposition(td) -> list[str]:
    if isinstance(td, PathDecomposition):
        lines = ["path"]
        lines += [f"bag {i}: " + " ".join(map(str, sorted(b))) for i, b in enumerate(td.bags)]
        return lines
    lines = ["tree"]
    lines += [f"bag {i}: " + " ".join(map(str, sorted(b))) for i, b in enumerate(td.bags)]
    lines += [f"edge {u} {v}" for u, v in sorted({(min(e), max(e)) for e in td.tree.relation("E")})]
    return lines


def parse_decomposition(lines: Sequence[str]):
    if not lines or lines[0] not in ("tree", "path"):
        raise ParseError("decomposition must start with 'tree' or 'path'", 1)
    bags, tree_edges = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("bag "):
            head, _, rest = line.partition(":")
            try:
                idx = int(head.split()[1])
                bag = frozenset(int(w) for w in rest.split())
            except (ValueError, IndexError):
                raise ParseError(f"bad bag line {line!r}", lineno) from None
            if idx != len(bags):
                raise ParseError(f"bag index {idx} out of sequence", lineno)
            bags.append(bag)
        elif line.startswith("edge ") and lines[0] == "tree":
            try:
                _, u, v = line.split()
                tree_edges.append((int(u), int(v)))
            except ValueError:
                raise ParseError(f"bad edge line {line!r}", lineno) from None
        else:
            raise ParseError(f"unexpected line {line!r}", lineno)
    if lines[0] == "path":
        return PathDecomposition(tuple(bags))
    return TreeDecomposition.make(tree_edges, bags)


def forest_lines(f: RootedForest) -> list[str]:
    return ["parent " + " ".join("-" if p is None else str(p) for p in f.parent)]
