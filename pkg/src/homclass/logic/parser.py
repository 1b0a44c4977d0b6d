"""Recursive-descent parser for the ``.fo`` formula syntax.

::

    formula  := quant | disj
    quant    := ("exists" | "forall") VAR "." formula
    disj     := conj ("|" conj)*
    conj     := unary ("&" unary)*
    unary    := "!" unary | quant | primary
    primary  := "(" formula ")" | "true" | "false" | SYM "(" VAR ("," VAR)* ")" | VAR "=" VAR

A quantifier's scope extends as far right as possible.  ``#`` starts a
comment that runs to the end of the line.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from ..structures import Vocabulary
from .syntax import FALSE, TRUE, And, Atom, Eq, Exists, Forall, Not, Or

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[()!&|=.,])")
_KEYWORDS = {"exists", "forall", "true", "false"}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", *_where(text, pos))
        if m.group("id"):
            tokens.append(("id", m.group("id"), pos))
        elif m.group("op"):
            tokens.append((m.group("op"), m.group("op"), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


def _where(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.vocab = vocab
        self.arities: dict = {}

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.i]
        return ParseError(msg, *_where(self.text, tok[2]))

    def peek(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            return None
        if value is not None and tok[1] != value:
            return None
        return tok

    def expect(self, kind, what=None):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise self.error(f"expected {what or kind!r}, found {found}")
        self.i += 1
        return tok

    def variable(self):
        tok = self.expect("id", "variable")
        if tok[1] in _KEYWORDS:
            raise self.error(f"keyword {tok[1]!r} used as a variable", tok)
        return tok[1]

    def formula(self):
        if self.peek("id", "exists") or self.peek("id", "forall"):
            return self.quant()
        return self.disj()

    def quant(self):
        kw = self.expect("id")[1]
        var = self.variable()
        self.expect(".", ".")
        body = self.formula()
        return Exists(var, body) if kw == "exists" else Forall(var, body)

    def disj(self):
        parts = [self.conj()]
        while self.peek("|"):
            self.i += 1
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self):
        parts = [self.unary()]
        while self.peek("&"):
            self.i += 1
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        if self.peek("!"):
            self.i += 1
            return Not(self.unary())
        if self.peek("id", "exists") or self.peek("id", "forall"):
            return self.quant()
        return self.primary()

    def primary(self):
        if self.peek("("):
            self.i += 1
            phi = self.formula()
            self.expect(")", ")")
            return phi
        tok = self.expect("id", "formula")
        name = tok[1]
        if name == "true":
            return TRUE
        if name == "false":
            return FALSE
        if name in _KEYWORDS:
            raise self.error(f"misplaced keyword {name!r}", tok)
        if self.peek("="):
            self.i += 1
            return Eq(name, self.variable())
        if not self.peek("("):
            raise self.error(f"expected '(' or '=' after {name!r}")
        self.i += 1
        args = [self.variable()]
        while self.peek(","):
            self.i += 1
            args.append(self.variable())
        self.expect(")", ")")
        self.check_arity(name, len(args), tok)
        return Atom(name, tuple(args))

    def check_arity(self, name, arity, tok):
        if self.vocab is not None:
            if name not in self.vocab:
                raise self.error(f"unknown relation symbol {name!r}", tok)
            expected = self.vocab.arity(name)
        else:
            expected = self.arities.setdefault(name, arity)
        if expected != arity:
            raise self.error(f"{name} has arity {expected}, used with {arity} arguments", tok)


def parse(text: str, vocabulary: Vocabulary | None = None):
    """Parse one formula.  With ``vocabulary`` given, atoms are checked
    against it; otherwise each symbol must be used with a single arity."""
    p = _Parser(text, vocabulary)
    phi = p.formula()
    if not p.peek("eof"):
        raise p.error(f"unexpected {p.tokens[p.i][1]!r} after complete formula")
    return phi
