"""Finite relational structures over explicit vocabularies.

Elements are dense indices ``0..n-1``.  Relations are stored as sorted
tuples of tuples so that two structures compare equal exactly when they
serialize identically.  Symmetric relations (graphs) carry both directed
tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import PreconditionError, StructureError, VocabularyMismatch

Tuple = tuple  # element tuples are plain tuples of ints

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


@dataclass(frozen=True, order=True)
class RelSymbol:
    name: str
    arity: int


class Vocabulary:
    """Ordered list of relation symbols with unique names."""

    __slots__ = ("symbols", "_arity")

    def __init__(self, symbols: Iterable[RelSymbol | tuple] = ()):
        syms = []
        for s in symbols:
            if not isinstance(s, RelSymbol):
                s = RelSymbol(*s)
            syms.append(s)
        self.symbols = tuple(syms)
        arity = {}
        for s in self.symbols:
            if s.name in arity:
                raise StructureError(f"duplicate relation symbol {s.name!r}")
            arity[s.name] = s.arity
        self._arity = arity

    def __iter__(self) -> Iterator[RelSymbol]:
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, name):
        return name in self._arity

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        inner = ", ".join(f"{s.name}/{s.arity}" for s in self.symbols)
        return f"Vocabulary({inner})"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.symbols)

    def arity(self, name: str) -> int:
        return self._arity[name]

    def same_symbols(self, other: "Vocabulary") -> bool:
        """Equality as a set of symbols, ignoring declaration order."""
        return self._arity == other._arity

    def extend(self, extra: Iterable[RelSymbol | tuple]) -> "Vocabulary":
        return Vocabulary(self.symbols + tuple(Vocabulary(extra).symbols))

    def restrict(self, names: Iterable[str]) -> "Vocabulary":
        keep = set(names)
        return Vocabulary(s for s in self.symbols if s.name in keep)


def vocabulary(*pairs) -> Vocabulary:
    """``vocabulary(("E", 2), ("C0", 1))`` shorthand."""
    return Vocabulary(pairs)


class Structure:
    """A finite relational structure.

    Construction never raises on malformed tuples; :func:`validate` reports
    them.  Use :meth:`checked` when the input comes from outside.
    """

    __slots__ = ("vocabulary", "universe_size", "_rels", "__dict__")

    def __init__(self, vocab: Vocabulary, universe_size: int,
                 relations: Mapping[str, Iterable[Sequence[int]]] | None = None):
        if not isinstance(vocab, Vocabulary):
            vocab = Vocabulary(vocab)
        relations = dict(relations or {})
        unknown = set(relations) - set(vocab.names)
        if unknown:
            raise StructureError(f"relations for undeclared symbols: {sorted(unknown)}")
        self.vocabulary = vocab
        self.universe_size = int(universe_size)
        self._rels = tuple(
            tuple(sorted(tuple(int(x) for x in t) for t in relations.get(name, ())))
            for name in vocab.names
        )

    @classmethod
    def checked(cls, vocab, universe_size, relations=None) -> "Structure":
        s = cls(vocab, universe_size, relations)
        problems = validate(s)
        if problems:
            raise StructureError("invalid structure: " + "; ".join(problems))
        return s

    # -- access --------------------------------------------------------
    @property
    def n(self) -> int:
        return self.universe_size

    @property
    def universe(self) -> range:
        return range(self.universe_size)

    def relation(self, name: str) -> tuple:
        return self._rels[self._index[name]]

    def relation_set(self, name: str) -> frozenset:
        return self._sets[self._index[name]]

    def items(self) -> Iterator[tuple[RelSymbol, tuple]]:
        return zip(self.vocabulary.symbols, self._rels)

    def tuples(self) -> Iterator[tuple[str, tuple]]:
        for sym, rel in self.items():
            for t in rel:
                yield sym.name, t

    @cached_property
    def _index(self):
        return {name: i for i, name in enumerate(self.vocabulary.names)}

    @cached_property
    def _sets(self):
        return tuple(frozenset(rel) for rel in self._rels)

    # -- derived structures --------------------------------------------
    def with_relations(self, extra: Mapping[str, tuple[int, Iterable]]) -> "Structure":
        """Expansion by new symbols: ``{name: (arity, tuples)}``."""
        clash = [name for name in extra if name in self.vocabulary]
        if clash:
            raise StructureError(f"symbols already present: {clash}")
        vocab = self.vocabulary.extend((name, ar) for name, (ar, _) in extra.items())
        rels = {s.name: rel for s, rel in self.items()}
        rels.update({name: tuples for name, (_, tuples) in extra.items()})
        return Structure(vocab, self.universe_size, rels)

    def restrict(self, names: Iterable[str]) -> "Structure":
        vocab = self.vocabulary.restrict(names)
        return Structure(vocab, self.universe_size,
                         {name: self.relation(name) for name in vocab.names})

    def reorder(self, vocab: Vocabulary) -> "Structure":
        """Same structure, symbols listed in the order of ``vocab``."""
        if not vocab.same_symbols(self.vocabulary):
            raise VocabularyMismatch(f"{vocab} vs {self.vocabulary}")
        return Structure(vocab, self.universe_size,
                         {name: self.relation(name) for name in vocab.names})

    # -- dunder --------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, Structure)
                and self.universe_size == other.universe_size
                and self.vocabulary == other.vocabulary
                and self._rels == other._rels)

    def __hash__(self):
        return hash((self.vocabulary, self.universe_size, self._rels))

    def __repr__(self):
        rels = ", ".join(f"{s.name}={list(rel)}" for s, rel in self.items())
        return f"Structure(n={self.universe_size}, {rels})"


def validate(s: Structure) -> list[str]:
    """Every arity mismatch, out-of-range index, duplicate tuple and bad symbol."""
    problems = []
    if s.universe_size < 1:
        problems.append(f"universe size {s.universe_size} < 1")
    for sym, rel in s.items():
        if not sym.name or not _NAME_RE.match(sym.name):
            problems.append(f"bad symbol name {sym.name!r}")
        if sym.arity < 1:
            problems.append(f"symbol {sym.name} has arity {sym.arity} < 1")
        prev = None
        for t in rel:
            if len(t) != sym.arity:
                problems.append(f"{sym.name}{t}: arity {len(t)} != {sym.arity}")
            bad = [x for x in t if not 0 <= x < s.universe_size]
            if bad:
                problems.append(f"{sym.name}{t}: index out of range {bad} (universe {s.universe_size})")
            if t == prev:
                problems.append(f"{sym.name}{t}: duplicate tuple")
            prev = t
    return problems


def require_valid(s: Structure) -> None:
    problems = validate(s)
    if problems:
        raise StructureError("invalid structure: " + "; ".join(problems))


def require_same_vocabulary(a: Structure, b: Structure) -> None:
    if not a.vocabulary.same_symbols(b.vocabulary):
        raise VocabularyMismatch(f"vocabularies differ: {a.vocabulary} vs {b.vocabulary}")


# ---------------------------------------------------------------------------
# graphs

EDGE = "E"
GRAPH_VOCABULARY = Vocabulary([(EDGE, 2)])


def graph(n: int, edges: Iterable[tuple[int, int]] = (), symbol: str = EDGE) -> Structure:
    """Undirected graph: symmetric closure of ``edges``."""
    arcs = set()
    for u, v in edges:
        if u == v:
            raise StructureError(f"loop at {u} in an undirected graph")
        arcs.add((u, v))
        arcs.add((v, u))
    return Structure(Vocabulary([(symbol, 2)]), n, {symbol: arcs})


def digraph(n: int, arcs: Iterable[tuple[int, int]] = (), symbol: str = EDGE) -> Structure:
    return Structure(Vocabulary([(symbol, 2)]), n, {symbol: set(map(tuple, arcs))})


def is_graph(s: Structure, symbol: str = EDGE) -> bool:
    """Single binary symbol, irreflexive and symmetric."""
    if len(s.vocabulary) != 1 or symbol not in s.vocabulary or s.vocabulary.arity(symbol) != 2:
        return False
    rel = s.relation_set(symbol)
    return all(u != v and (v, u) in rel for u, v in rel)


def adjacency(g: Structure, symbol: str = EDGE) -> list[set[int]]:
    """Undirected adjacency sets of the given binary relation (loops dropped)."""
    adj = [set() for _ in g.universe]
    for u, v in g.relation(symbol):
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def edges(g: Structure, symbol: str = EDGE) -> list[tuple[int, int]]:
    """Undirected edge list ``u < v``."""
    return sorted({(min(u, v), max(u, v)) for u, v in g.relation(symbol) if u != v})


# ---------------------------------------------------------------------------
# structural algebra

def gaifman(a: Structure) -> Structure:
    pairs = set()
    for _, t in a.tuples():
        for x in t:
            for y in t:
                if x != y:
                    pairs.add((x, y))
    return Structure(GRAPH_VOCABULARY, a.universe_size, {EDGE: pairs})


def star_symbol(i: int) -> str:
    return f"C{i}"


def star(a: Structure) -> Structure:
    """Expansion by unary ``C<i> = {i}`` for every element."""
    clash = [star_symbol(i) for i in a.universe if star_symbol(i) in a.vocabulary]
    if clash:
        raise StructureError(f"star: symbols already present: {clash}")
    return a.with_relations({star_symbol(i): (1, [(i,)]) for i in a.universe})


def star_vocabulary(vocab: Vocabulary, n: int) -> Vocabulary:
    return vocab.extend((star_symbol(i), 1) for i in range(n))


def unstar(astar: Structure) -> Structure:
    """Inverse of :func:`star`; checks the constants really are ``{i}``."""
    names = [star_symbol(i) for i in astar.universe]
    for i, name in enumerate(names):
        if name not in astar.vocabulary or astar.relation(name) != ((i,),):
            raise PreconditionError(f"not a starred structure: {name} is not {{{i}}}")
    keep = [s for s in astar.vocabulary.names if s not in set(names)]
    return astar.restrict(keep)


def is_starred(s: Structure) -> bool:
    try:
        unstar(s)
    except PreconditionError:
        return False
    return True


@dataclass(frozen=True)
class ProductCodec:
    """Pairs ``(x, y)`` of a product universe as ``x * right_size + y``."""

    left_size: int
    right_size: int

    def encode(self, x: int, y: int) -> int:
        return x * self.right_size + y

    def decode(self, i: int) -> tuple[int, int]:
        return divmod(i, self.right_size)


def direct_product(a: Structure, b: Structure) -> tuple[Structure, ProductCodec]:
    require_same_vocabulary(a, b)
    codec = ProductCodec(a.universe_size, b.universe_size)
    rels = {}
    for sym, rel_a in a.items():
        rel_b = b.relation(sym.name)
        rels[sym.name] = [tuple(codec.encode(x, y) for x, y in zip(s, t))
                          for s in rel_a for t in rel_b]
    return Structure(a.vocabulary, a.universe_size * b.universe_size, rels), codec


def induced_substructure(a: Structure, x: Iterable[int]) -> tuple[Structure, tuple[int, ...]]:
    """Substructure on ``x``, densely reindexed in increasing order.

    Returns the structure and the carrier: new index ``i`` is old ``carrier[i]``.
    """
    carrier = tuple(sorted(set(x)))
    if not carrier:
        raise PreconditionError("induced substructure of the empty set")
    if carrier[0] < 0 or carrier[-1] >= a.universe_size:
        raise PreconditionError(f"index out of range in {carrier}")
    new = {old: i for i, old in enumerate(carrier)}
    rels = {sym.name: [tuple(new[v] for v in t) for t in rel if all(v in new for v in t)]
            for sym, rel in a.items()}
    return Structure(a.vocabulary, len(carrier), rels), carrier


def disjoint_union(parts: Sequence[Structure]) -> tuple[Structure, tuple[int, ...]]:
    """Union with universes shifted; returns the offset of every part."""
    if not parts:
        raise PreconditionError("disjoint union of no structures")
    vocab = parts[0].vocabulary
    offsets = []
    rels = {name: [] for name in vocab.names}
    total = 0
    for p in parts:
        require_same_vocabulary(parts[0], p)
        offsets.append(total)
        for name, t in p.tuples():
            rels[name].append(tuple(v + total for v in t))
        total += p.universe_size
    return Structure(vocab, total, rels), tuple(offsets)


def connected_components(a: Structure) -> list[tuple[int, ...]]:
    """Components of the Gaifman graph, ordered by their minimum element."""
    adj = [set() for _ in a.universe]
    for _, t in a.tuples():
        for x in t:
            adj[x].update(t)
    seen = [False] * a.universe_size
    comps = []
    for start in a.universe:
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(a: Structure) -> bool:
    return len(connected_components(a)) == 1


def size(a: Structure) -> int:
    return (len(a.vocabulary) + a.universe_size
            + sum(len(rel) * sym.arity for sym, rel in a.items()))


# ---------------------------------------------------------------------------
# generator families

FAMILIES = ("dipath", "path", "dicycle", "cycle", "ditree_bin",
            "tree_bin_labeled", "tree_bin", "grid")


def _bin_children(k: int):
    # heap numbering of {0,1}^{<=k}: lambda=0, children of i are 2i+1 (x0), 2i+2 (x1)
    n = 2 ** (k + 1) - 1
    inner = 2 ** k - 1
    return n, [(i, 2 * i + 1) for i in range(inner)], [(i, 2 * i + 2) for i in range(inner)]


def make_family(kind: str, k: int) -> Structure:
    """Generators of the standard classes on 0-based universes."""
    if kind in ("dipath", "path", "dicycle", "cycle"):
        if k < 2:
            raise PreconditionError(f"{kind} needs k >= 2, got {k}")
        arcs = [(i, i + 1) for i in range(k - 1)]
        if kind in ("dicycle", "cycle"):
            arcs.append((k - 1, 0))
        if kind.startswith("di"):
            return digraph(k, arcs)
        return graph(k, arcs)
    if kind in ("ditree_bin", "tree_bin_labeled", "tree_bin"):
        if k < 0:
            raise PreconditionError(f"{kind} needs k >= 0, got {k}")
        n, s0, s1 = _bin_children(k)
        if kind == "tree_bin":
            return graph(n, s0 + s1)
        if kind == "ditree_bin":
            return Structure(Vocabulary([("S0", 2), ("S1", 2)]), n, {"S0": s0, "S1": s1})
        sym = lambda arcs: arcs + [(v, u) for u, v in arcs]
        return Structure(Vocabulary([("S0", 2), ("S1", 2)]), n, {"S0": sym(s0), "S1": sym(s1)})
    if kind == "grid":
        if k < 1:
            raise PreconditionError(f"grid needs k >= 1, got {k}")
        idx = lambda r, c: r * k + c
        es = [(idx(r, c), idx(r, c + 1)) for r in range(k) for c in range(k - 1)]
        es += [(idx(r, c), idx(r + 1, c)) for r in range(k - 1) for c in range(k)]
        return graph(k * k, es)
    raise PreconditionError(f"unknown family {kind!r}; expected one of {FAMILIES}")


def complete_graph(n: int) -> Structure:
    return graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def all_tuples(n: int, arity: int) -> Iterator[tuple[int, ...]]:
    return product(range(n), repeat=arity)
