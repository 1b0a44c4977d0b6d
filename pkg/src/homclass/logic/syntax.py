"""Formula abstract syntax, printing and syntactic measures.

``And(())`` is the truth constant (printed ``true``) and ``Or(())`` is
falsity (printed ``false``).  The printer parenthesizes exactly enough for
:func:`homclass.logic.parser.parse` to rebuild the same tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True)
class Atom:
    symbol: str
    args: tuple


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Atom, Eq, Not, And, Or, Exists, Forall]
TRUE = And(())
FALSE = Or(())


def conj(parts: Iterable[Formula]) -> Formula:
    """Conjunction without the one-part wrapper (``true`` when empty)."""
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Or(parts)


def exists_all(variables: Iterable[str], body: Formula) -> Formula:
    """``exists v1. ... exists vk. body`` with ``v1`` outermost."""
    for v in reversed(tuple(variables)):
        body = Exists(v, body)
    return body


def qr(phi: Formula) -> int:
    """Quantifier rank: maximal nesting depth of quantifiers."""
    if isinstance(phi, (Atom, Eq)):
        return 0
    if isinstance(phi, Not):
        return qr(phi.body)
    if isinstance(phi, (And, Or)):
        return max((qr(p) for p in phi.parts), default=0)
    return 1 + qr(phi.body)


def free_vars(phi: Formula) -> frozenset:
    if isinstance(phi, Atom):
        return frozenset(phi.args)
    if isinstance(phi, Eq):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        return frozenset().union(*(free_vars(p) for p in phi.parts))
    return free_vars(phi.body) - {phi.var}


def is_sentence(phi: Formula) -> bool:
    return not free_vars(phi)


def symbols(phi: Formula) -> dict:
    """Relation symbols used, with the arity of their first occurrence."""
    out: dict = {}

    def walk(f):
        if isinstance(f, Atom):
            out.setdefault(f.symbol, len(f.args))
        elif isinstance(f, Not):
            walk(f.body)
        elif isinstance(f, (And, Or)):
            for p in f.parts:
                walk(p)
        elif isinstance(f, (Exists, Forall)):
            walk(f.body)

    walk(phi)
    return out


def size(phi: Formula) -> int:
    """Number of AST nodes."""
    if isinstance(phi, (Atom, Eq)):
        return 1
    if isinstance(phi, (And, Or)):
        return 1 + sum(size(p) for p in phi.parts)
    return 1 + size(phi.body)


# ---------------------------------------------------------------------------
# printing

def _is_const(phi) -> bool:
    return isinstance(phi, (And, Or)) and not phi.parts


def _operand(phi: Formula) -> str:
    text = to_text(phi)
    if isinstance(phi, (Atom, Not)) or _is_const(phi):
        return text
    return f"({text})"


def to_text(phi: Formula) -> str:
    if isinstance(phi, Atom):
        return f"{phi.symbol}({','.join(phi.args)})"
    if isinstance(phi, Eq):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, Not):
        return "!" + _operand(phi.body)
    if isinstance(phi, And):
        if not phi.parts:
            return "true"
        return " & ".join(_operand(p) for p in phi.parts)
    if isinstance(phi, Or):
        if not phi.parts:
            return "false"
        return " | ".join(_operand(p) for p in phi.parts)
    if isinstance(phi, Exists):
        return f"exists {phi.var}. {to_text(phi.body)}"
    if isinstance(phi, Forall):
        return f"forall {phi.var}. {to_text(phi.body)}"
    raise TypeError(f"not a formula: {phi!r}")
