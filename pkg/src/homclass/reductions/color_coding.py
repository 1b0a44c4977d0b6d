"""Color coding: embeddings of a connected ``A`` as homomorphisms from ``A*``.

The target right side is the disjoint union, over all color functions
``f = g . h_{p,q}`` (``g`` maps hash values to elements of ``A``), of ``B``
expanded by ``C_a = f^{-1}(a)``.  Colors are pairwise disjoint inside each
component, so homomorphisms from the connected ``A*`` are embeddings into a
single component.

The union is never built wholesale: :class:`LazyUnion` names components by
keys ``(p, q, g)`` and yields them on demand.  Only the values of ``g`` on
the image of ``h_{p,q}`` matter, so by default ``g`` ranges over maps from
that image (other hash values go to element 0) and colorings already seen
are skipped; ``dedupe=False`` walks every ``g`` on ``{0..k^2-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .. import kernels
from ..errors import PreconditionError, SizeBoundExceeded
from ..structures import Structure, disjoint_union, is_connected, require_same_vocabulary, star, star_symbol
from .base import ReductionOutput
from .hashing import find_injective_hash, hash_pairs

COLOR_CODING_BOUND = 3


@dataclass
class LazyUnion:
    base: Structure  # B without colors
    k: int  # |A|
    dedupe: bool = True

    @property
    def n(self) -> int:
        return self.base.universe_size

    def hash_values(self, p: int, q: int) -> tuple:
        kk = self.k * self.k
        return tuple((q * (y + 1) % p) % kk for y in self.base.universe)

    def coloring(self, key) -> tuple:
        """Color of every element of ``B`` under the component ``key``."""
        p, q, g = key
        return tuple(g[v] for v in self.hash_values(p, q))

    def keys(self):
        kk = self.k * self.k
        for p, q in hash_pairs(self.n, self.k):
            if self.dedupe:
                image = sorted(set(self.hash_values(p, q)))
                for vals in product(range(self.k), repeat=len(image)):
                    g = [0] * kk
                    for v, c in zip(image, vals):
                        g[v] = c
                    yield p, q, tuple(g)
            else:
                for g in product(range(self.k), repeat=kk):
                    yield p, q, g

    def component(self, key) -> Structure:
        col = self.coloring(key)
        return self.base.with_relations(
            {star_symbol(a): (1, [(y,) for y in self.base.universe if col[y] == a])
             for a in range(self.k)})

    def components(self):
        """``(key, component)`` pairs, skipping repeated colorings when deduping."""
        seen = set()
        for key in self.keys():
            col = self.coloring(key)
            if self.dedupe:
                if col in seen:
                    continue
                seen.add(col)
            yield key, self.component(key)

    def solve(self, astar: Structure):
        """First ``(key, h)`` with ``h`` a homomorphism into that component."""
        for key, comp in self.components():
            h = kernels.find(astar, comp)
            if h is not None:
                return key, h
        return None

    def materialize(self, limit: int = 2000):
        """The explicit disjoint union and the keys in component order."""
        keys, parts = [], []
        for key, comp in self.components():
            keys.append(key)
            parts.append(comp)
            if len(parts) > limit:
                raise SizeBoundExceeded(f"more than {limit} components")
        if not parts:
            return None, []
        union, _ = disjoint_union(parts)
        return union, keys


def color_code_embedding(a: Structure, b: Structure, *, dedupe: bool = True,
                         max_size=COLOR_CODING_BOUND) -> ReductionOutput:
    """Embedding instance ``(A, B)`` to ``(A*, union of colored copies of B)``."""
    require_same_vocabulary(a, b)
    if not is_connected(a):
        raise PreconditionError("color coding needs a connected left side")
    k = a.universe_size
    if max_size is not None and k > max_size:
        raise SizeBoundExceeded(f"color coding: |A| = {k} exceeds bound {max_size}")
    b = b.reorder(a.vocabulary)
    union = LazyUnion(b, k, dedupe)
    astar = star(a)

    def forward(e):
        image = [y + 1 for y in e]
        hp = find_injective_hash(image, k, b.universe_size)
        if hp is None:
            raise PreconditionError("no hash in the family is injective on the embedding's image")
        kk = k * k
        g = [0] * kk
        for x, y in enumerate(e):
            g[(hp.q * (y + 1) % hp.p) % kk] = x
        return (hp.p, hp.q, tuple(g)), tuple(e)

    def backward(w):
        _, h = w
        return tuple(h)

    return ReductionOutput(
        name="color-coding",
        source_kind="emb",
        target_kind="hom_union",
        source=(a, b),
        target=(astar, union),
        forward=forward,
        backward=backward,
        params={"k": k, "n": b.universe_size, "dedupe": dedupe,
                "pairs": sum(1 for _ in hash_pairs(b.universe_size, k))},
    )

