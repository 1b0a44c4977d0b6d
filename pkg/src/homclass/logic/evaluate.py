"""Depth-first model checking.

Quantifiers loop over the universe in increasing order, extending the one
shared assignment in place and restoring it afterwards, so the evaluator
keeps a single assignment plus the recursion stack of the formula.
"""

from __future__ import annotations

from ..errors import PreconditionError, VocabularyMismatch
from ..structures import Structure
from .syntax import And, Atom, Eq, Exists, Forall, Not, Or, free_vars, symbols

_UNSET = object()


def check_vocabulary(a: Structure, phi) -> None:
    for name, arity in symbols(phi).items():
        if name not in a.vocabulary:
            raise VocabularyMismatch(f"formula uses {name!r}, absent from the structure")
        if a.vocabulary.arity(name) != arity:
            raise VocabularyMismatch(f"{name} has arity {a.vocabulary.arity(name)}, formula uses {arity}")


def model_check(a: Structure, phi, alpha: dict | None = None) -> bool:
    """Does ``a`` satisfy ``phi`` under ``alpha`` (variable -> element)?"""
    alpha = dict(alpha or {})
    missing = free_vars(phi) - set(alpha)
    if missing:
        raise PreconditionError(f"unassigned free variables: {sorted(missing)}")
    check_vocabulary(a, phi)
    if any(not 0 <= v < a.universe_size for v in alpha.values()):
        raise PreconditionError("assignment leaves the universe")
    return _holds(a, phi, alpha)


def _holds(a: Structure, phi, alpha: dict) -> bool:
    if isinstance(phi, Atom):
        return tuple(alpha[v] for v in phi.args) in a.relation_set(phi.symbol)
    if isinstance(phi, Eq):
        return alpha[phi.left] == alpha[phi.right]
    if isinstance(phi, Not):
        return not _holds(a, phi.body, alpha)
    if isinstance(phi, And):
        return all(_holds(a, p, alpha) for p in phi.parts)
    if isinstance(phi, Or):
        return any(_holds(a, p, alpha) for p in phi.parts)
    want = isinstance(phi, Exists)
    if not want and not isinstance(phi, Forall):
        raise TypeError(f"not a formula: {phi!r}")
    saved = alpha.get(phi.var, _UNSET)
    result = not want
    for e in a.universe:
        alpha[phi.var] = e
        if _holds(a, phi.body, alpha) == want:
            result = want
            break
    if saved is _UNSET:
        del alpha[phi.var]
    else:
        alpha[phi.var] = saved
    return result
