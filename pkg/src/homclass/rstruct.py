"""Reader and writer for the line-oriented ``.rstruct`` format.

::

    structure <name>
    universe <n>
    relation <SYM> <arity>
    <i1> ... <i_arity>
    end

``#`` starts a comment.  Several blocks may share a file; names are unique
per file.  Output lists symbols in vocabulary order and tuples sorted, so
parse/serialize round-trips byte for byte.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

from .errors import ParseError
from .structures import Structure, Vocabulary, validate


def parse(text: str) -> dict[str, Structure]:
    out: dict[str, Structure] = {}
    name = None
    n = None
    symbols: list[tuple[str, int]] = []
    rels: dict[str, list] = {}
    current = None
    start_line = 0

    def finish(lineno):
        if n is None:
            raise ParseError(f"structure {name!r} has no universe line", lineno)
        s = Structure(Vocabulary(symbols), n, rels)
        problems = validate(s)
        if problems:
            raise ParseError(f"structure {name!r} invalid: " + "; ".join(problems), start_line)
        out[name] = s

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if name is None:
            if head != "structure" or len(words) != 2:
                raise ParseError(f"expected 'structure <name>', got {line!r}", lineno)
            name = words[1]
            if name in out:
                raise ParseError(f"duplicate structure name {name!r}", lineno)
            n, symbols, rels, current, start_line = None, [], {}, None, lineno
            continue
        if head == "universe":
            if len(words) != 2 or n is not None:
                raise ParseError("bad or repeated universe line", lineno)
            n = _int(words[1], lineno)
        elif head == "relation":
            if len(words) != 3:
                raise ParseError("expected 'relation <SYM> <arity>'", lineno)
            sym, arity = words[1], _int(words[2], lineno)
            if sym in rels:
                raise ParseError(f"relation {sym!r} declared twice", lineno)
            symbols.append((sym, arity))
            rels[sym] = []
            current = (sym, arity)
        elif head == "end":
            if len(words) != 1:
                raise ParseError("trailing text after 'end'", lineno)
            finish(lineno)
            name = None
        elif head == "structure":
            raise ParseError("missing 'end' before new structure", lineno)
        else:
            if current is None:
                raise ParseError(f"tuple outside a relation block: {line!r}", lineno)
            t = tuple(_int(w, lineno) for w in words)
            if len(t) != current[1]:
                raise ParseError(f"tuple {t} has length {len(t)}, {current[0]} has arity {current[1]}", lineno)
            rels[current[0]].append(t)
    if name is not None:
        raise ParseError(f"structure {name!r} not terminated by 'end'")
    return out


def _int(word, lineno):
    try:
        v = int(word)
    except ValueError:
        raise ParseError(f"expected an integer, got {word!r}", lineno) from None
    if v < 0:
        raise ParseError(f"negative integer {v}", lineno)
    return v


def serialize_one(name: str, s: Structure) -> str:
    lines = [f"structure {name}", f"universe {s.universe_size}"]
    for sym, rel in s.items():
        lines.append(f"relation {sym.name} {sym.arity}")
        lines.extend(" ".join(map(str, t)) for t in rel)
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize(structures: Mapping[str, Structure]) -> str:
    return "".join(serialize_one(name, s) for name, s in structures.items())


def load(path) -> dict[str, Structure]:
    return parse(Path(path).read_text())


def dump(structures: Mapping[str, Structure], path) -> None:
    Path(path).write_text(serialize(structures))
