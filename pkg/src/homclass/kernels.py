"""Homomorphism search kernels and backend selection.

The compiled extension ``homclass._kernel`` is used when it imports;
otherwise the pure-Python implementation runs.  Setting the environment
variable ``HOMCLASS_PURE_PYTHON=1`` forces the fallback.  Both backends
share one flat problem encoding and return identical results.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import prod

from . import _kernel_py
from .structures import Structure, require_same_vocabulary

try:
    if os.environ.get("HOMCLASS_PURE_PYTHON"):
        raise ImportError("pure Python kernel requested")
    from . import _kernel as _kernel_c
    import numpy as _np
except ImportError:  # pragma: no cover - depends on the build
    _kernel_c = None

BACKEND = "cython" if _kernel_c is not None else "python"
_INT64_SAFE = 2 ** 62


@dataclass
class Problem:
    """A homomorphism search instance in flat form.

    ``domains[x]`` lists the candidate images of variable ``x`` in ascending
    order, already filtered by every constraint that mentions ``x`` alone.
    The remaining constraints are ``(cons_vars[i], cons_rel[i])`` and are
    checked when ``max(cons_vars[i])`` is assigned.
    """

    na: int
    nb: int
    domains: list
    cons_vars: list
    cons_rel: list
    rel_sets: list
    checks_for: list
    _flat: tuple | None = None


def compile_problem(a: Structure, b: Structure, domains=None) -> Problem:
    require_same_vocabulary(a, b)
    na, nb = a.universe_size, b.universe_size
    if domains is None:
        doms = [set(range(nb)) for _ in range(na)]
    else:
        doms = [set(range(nb)) if d is None else set(d) for d in domains]
    rel_sets, cons_vars, cons_rel = [], [], []
    seen = set()
    for sym, rel_a in a.items():
        target = b.relation_set(sym.name)
        rid = len(rel_sets)
        rel_sets.append(target)
        for t in rel_a:
            distinct = set(t)
            if len(distinct) == 1:
                x = t[0]
                doms[x] = {v for v in doms[x] if (v,) * len(t) in target}
            elif (rid, t) not in seen:
                seen.add((rid, t))
                cons_vars.append(t)
                cons_rel.append(rid)
    checks_for = [[] for _ in range(na)]
    for ci, t in enumerate(cons_vars):
        checks_for[max(t)].append(ci)
    return Problem(na, nb, [sorted(d) for d in doms], cons_vars, cons_rel, rel_sets, checks_for)


def _flatten(p: Problem):
    if p._flat is not None:
        return p._flat
    np = _np
    dom_ptr = [0]
    dom_val = []
    for d in p.domains:
        dom_val.extend(d)
        dom_ptr.append(len(dom_val))
    chk_ptr = [0]
    chk_con = []
    for cs in p.checks_for:
        chk_con.extend(cs)
        chk_ptr.append(len(chk_con))
    con_ptr = [0]
    con_var = []
    for t in p.cons_vars:
        con_var.extend(t)
        con_ptr.append(len(con_var))
    rel_ptr = [0]
    rel_key = []
    for rel in p.rel_sets:
        keys = []
        for t in rel:
            key, mult = 0, 1
            for v in t:
                key += v * mult
                mult *= p.nb
            keys.append(key)
        rel_key.extend(sorted(keys))
        rel_ptr.append(len(rel_key))
    arr = lambda xs: np.asarray(xs, dtype=np.int64)
    p._flat = tuple(map(arr, (dom_ptr, dom_val, chk_ptr, chk_con, con_ptr,
                              con_var, p.cons_rel, rel_ptr, rel_key)))
    return p._flat


def _compiled_ok(p: Problem, count: bool) -> bool:
    if _kernel_c is None:
        return False
    max_arity = max((len(t) for t in p.cons_vars), default=1)
    if max(p.nb, 1) ** max_arity >= _INT64_SAFE:
        return False
    if count and prod(len(d) for d in p.domains) >= _INT64_SAFE:
        return False
    return True


def run(p: Problem, injective: bool = False, count: bool = False, backend: str | None = None):
    """Search ``p``; returns ``(count_or_found_flag, first_witness)``."""
    if any(not d for d in p.domains):
        return 0, None
    if injective and p.na > p.nb:
        return 0, None
    use_c = _compiled_ok(p, count) if backend in (None, "cython") else False
    if backend == "cython" and not use_c:
        raise RuntimeError("compiled kernel unavailable for this problem")
    if use_c:
        found, first = _kernel_c.search(p.na, p.nb, *_flatten(p), injective, count)
        return int(found), (tuple(int(v) for v in first) if first is not None else None)
    return _kernel_py.search(p, injective, count)


def find(a: Structure, b: Structure, *, injective=False, domains=None, backend=None):
    """First homomorphism (lexicographically least) or ``None``."""
    _, first = run(compile_problem(a, b, domains), injective, False, backend)
    return first


def count(a: Structure, b: Structure, *, injective=False, domains=None, backend=None) -> int:
    found, _ = run(compile_problem(a, b, domains), injective, True, backend)
    return found
