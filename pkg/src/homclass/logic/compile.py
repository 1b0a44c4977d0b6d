"""Between structures and existential-conjunctive sentences.

* :func:`canonical_conjunction` writes one atom per tuple.
* :func:`build_phi_A` produces a sentence equivalent to "``a`` maps into the
  model" whose quantifier rank is the tree depth of the core of ``a``: it
  nests one quantifier per node of an optimal elimination forest and puts
  the canonical conjunction of each root-to-leaf path at the leaf.
* :func:`sentence_to_structure` goes back from an {and, exists}-sentence to
  its canonical structure, and :func:`treedepth_of_sentence_bound` reads a
  tree-depth bound off the quantifier nesting.
"""

from __future__ import annotations

from ..errors import PreconditionError, VocabularyMismatch
from ..structures import Structure, Vocabulary, induced_substructure
from ..widths import RootedForest, treedepth_exact
from .syntax import And, Atom, Eq, Exists, Not, Or, conj, exists_all, free_vars

REJECT_SENTENCE = Exists("x", Not(Eq("x", "x")))


def var_name(i: int, prefix: str = "x") -> str:
    return f"{prefix}{i}"


def canonical_conjunction(a: Structure, names=None):
    """Quantifier-free conjunction over variables ``x0..x{n-1}``."""
    names = names or [var_name(i) for i in a.universe]
    return conj(Atom(sym, tuple(names[v] for v in t)) for sym, t in a.tuples())


def canonical_sentence(a: Structure):
    """Existential closure of the canonical conjunction (all elements quantified)."""
    return exists_all([var_name(i) for i in a.universe], canonical_conjunction(a))


def build_phi_A(a: Structure, w: int, *, core_bound=None):
    """Sentence of quantifier rank ``td(core(a))`` true in ``b`` iff ``a -> b``.

    Raises :class:`PreconditionError` when the core has tree depth above ``w``.
    """
    from ..solvers import CORE_BOUND, core

    c = core(a, max_size=core_bound or CORE_BOUND).core
    depth, forest = treedepth_exact(c)
    if depth > w:
        raise PreconditionError(f"tree depth of the core is {depth} > {w}")
    return phi_from_forest(c, forest)


def phi_from_forest(c: Structure, forest: RootedForest):
    """Nested sentence along ``forest``, which must witness the closure property."""
    children = forest.children()

    def node(t, path):
        path = path + [t]
        if not children[t]:
            sub, carrier = induced_substructure(c, path)
            body = canonical_conjunction(sub, [var_name(v) for v in carrier])
        else:
            body = conj(node(d, path) for d in children[t])
        return Exists(var_name(t), body)

    return conj(node(r, []) for r in forest.roots)


# ---------------------------------------------------------------------------
# sentences to structures

def _check_fragment(phi):
    if isinstance(phi, Atom):
        return
    if isinstance(phi, Eq):
        if phi.left != phi.right:
            raise PreconditionError(
                f"equality {phi.left} = {phi.right} between distinct variables is not supported")
        return
    if isinstance(phi, And):
        for p in phi.parts:
            _check_fragment(p)
        return
    if isinstance(phi, Exists):
        _check_fragment(phi.body)
        return
    kind = type(phi).__name__
    raise PreconditionError(f"{kind} is outside the existential-conjunctive fragment")


def standardize_apart(phi):
    """Rename bound variables to ``v0, v1, ...`` in order of quantification.

    Returns the renamed formula and, per new variable, the name of the
    variable that encloses it (``None`` at top level).
    """
    parents: list = []

    def walk(f, env, enclosing):
        if isinstance(f, Atom):
            return Atom(f.symbol, tuple(env[v] for v in f.args))
        if isinstance(f, Eq):
            return Eq(env[f.left], env[f.right])
        if isinstance(f, Not):
            return Not(walk(f.body, env, enclosing))
        if isinstance(f, (And, Or)):
            return type(f)(tuple(walk(p, env, enclosing) for p in f.parts))
        new = var_name(len(parents), "v")
        parents.append(enclosing)
        body = walk(f.body, {**env, f.var: new}, new)
        return type(f)(new, body)

    if free_vars(phi):
        raise PreconditionError(f"not a sentence: free variables {sorted(free_vars(phi))}")
    return walk(phi, {}, None), parents


def _atoms(phi, out):
    if isinstance(phi, Atom):
        out.append(phi)
    elif isinstance(phi, And):
        for p in phi.parts:
            _atoms(p, out)
    elif isinstance(phi, Exists):
        _atoms(phi.body, out)
    return out


def sentence_to_structure(phi, vocabulary: Vocabulary | None = None) -> Structure:
    """Canonical structure of an {and, exists}-sentence.

    Element ``i`` is the ``i``-th quantified variable after renaming apart;
    ``x = x`` conjuncts are dropped.  Without ``vocabulary`` the symbols are
    those used, in order of first occurrence.
    """
    _check_fragment(phi)
    renamed, parents = standardize_apart(phi)
    if not parents:
        raise PreconditionError("sentence quantifies no variable; structures need a nonempty universe")
    atoms = _atoms(renamed, [])
    if vocabulary is None:
        arities: dict = {}
        for at in atoms:
            if arities.setdefault(at.symbol, len(at.args)) != len(at.args):
                raise VocabularyMismatch(f"{at.symbol} used with two arities")
        vocabulary = Vocabulary(arities.items())
    rels: dict = {name: set() for name in vocabulary.names}
    for at in atoms:
        if at.symbol not in vocabulary or vocabulary.arity(at.symbol) != len(at.args):
            raise VocabularyMismatch(f"atom {at.symbol}/{len(at.args)} not in {vocabulary}")
        rels[at.symbol].add(tuple(int(v[1:]) for v in at.args))
    return Structure(vocabulary, len(parents), rels)


def nesting_forest(phi) -> RootedForest:
    """Quantifier nesting as a rooted forest on the renamed variables."""
    _check_fragment(phi)
    _, parents = standardize_apart(phi)
    return RootedForest(tuple(None if p is None else int(p[1:]) for p in parents))


def treedepth_of_sentence_bound(phi) -> int:
    """Height of the quantifier nesting forest.

    Every atom lies in the scope of all its variables, so they sit on one
    chain of the forest; the forest therefore witnesses the closure property
    for the canonical structure, and its height bounds that tree depth.
    """
    return nesting_forest(phi).height
