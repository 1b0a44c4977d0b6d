"""Reduction outputs, witness checking and oracle-based verification.

Instances are tagged by kind:

``hom`` / ``emb``
    ``(A, B)``; a witness is a map ``tuple`` from ``A`` to ``B``.
``stpath``
    ``(G, s, t, k)``: is there an ``s``-``t`` path with at most ``k`` edges?
    A witness is the vertex list of such a path (a walk is accepted).
``hom_union``
    ``(A, U)`` where ``U`` is a lazily enumerated disjoint union (see
    :mod:`homclass.reductions.color_coding`); a witness is ``(key, h)``
    with ``h`` a homomorphism into the component named ``key``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .. import solvers
from ..structures import Structure, adjacency

KINDS = ("hom", "emb", "stpath", "hom_union")


@dataclass
class ReductionOutput:
    name: str
    source_kind: str
    target_kind: str
    source: tuple
    target: tuple
    forward: Callable  # source witness -> target witness
    backward: Callable  # target witness -> source witness
    params: dict = field(default_factory=dict)
    parsimonious: bool = False


def is_walk(g: Structure, s: int, t: int, k: int, walk) -> bool:
    walk = list(walk)
    if not walk or walk[0] != s or walk[-1] != t or len(walk) - 1 > k:
        return False
    if any(not 0 <= v < g.universe_size for v in walk):
        return False
    adj = adjacency(g)
    return all(v in adj[u] for u, v in zip(walk, walk[1:]))


def check_witness(kind: str, instance: tuple, w) -> bool:
    try:
        if kind == "hom":
            return solvers.is_homomorphism(w, *instance)
        if kind == "emb":
            return solvers.is_embedding(w, *instance)
        if kind == "stpath":
            return is_walk(*instance, w)
        if kind == "hom_union":
            a, union = instance
            key, h = w
            return solvers.is_homomorphism(h, a, union.component(key))
    except (TypeError, ValueError, KeyError, IndexError):
        return False
    raise ValueError(f"unknown instance kind {kind!r}")


def solve(kind: str, instance: tuple):
    """Oracle answer and witness (``None`` on no-instances)."""
    if kind == "hom":
        r = solvers.hom_exists(*instance, max_size=None)
        return r.answer, r.witness
    if kind == "emb":
        r = solvers.emb_exists(*instance, max_size=None)
        return r.answer, r.witness
    if kind == "stpath":
        w = solvers.st_path_witness(*instance)
        return w is not None, w
    if kind == "hom_union":
        a, union = instance
        w = union.solve(a)
        return w is not None, w
    raise ValueError(f"unknown instance kind {kind!r}")


def count(kind: str, instance: tuple) -> int:
    if kind == "hom":
        return solvers.count_homs(*instance, max_size=None)
    if kind == "emb":
        return solvers.count_embs(*instance, max_size=None)
    raise ValueError(f"no counting oracle for kind {kind!r}")


@dataclass
class VerificationReport:
    name: str
    source_answer: bool
    target_answer: bool
    forward_ok: bool | None = None
    backward_ok: bool | None = None
    roundtrip_ok: bool | None = None
    source_count: int | None = None
    target_count: int | None = None
    failures: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.source_answer == self.target_answer

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "source_answer": self.source_answer,
            "target_answer": self.target_answer,
            "agree": self.agree,
            "forward_ok": self.forward_ok,
            "backward_ok": self.backward_ok,
            "roundtrip_ok": self.roundtrip_ok,
            "source_count": self.source_count,
            "target_count": self.target_count,
            "failures": list(self.failures),
        }


def verify_reduction(ro: ReductionOutput, source_oracle=None, target_oracle=None,
                     *, counts: bool | None = None) -> VerificationReport:
    """Check decision agreement, both translators and (if parsimonious) counts.

    Oracles map an instance to ``(answer, witness)``; the defaults are the
    brute-force solvers for the instance kind.
    """
    source_oracle = source_oracle or (lambda inst: solve(ro.source_kind, inst))
    target_oracle = target_oracle or (lambda inst: solve(ro.target_kind, inst))
    s_ans, s_wit = source_oracle(ro.source)
    t_ans, t_wit = target_oracle(ro.target)
    rep = VerificationReport(ro.name, bool(s_ans), bool(t_ans))
    if rep.source_answer != rep.target_answer:
        rep.failures.append(f"decision mismatch: source {s_ans}, target {t_ans}")
    if s_wit is not None:
        try:
            fw = ro.forward(s_wit)
            rep.forward_ok = check_witness(ro.target_kind, ro.target, fw)
        except Exception as e:  # translator crashed: report, do not raise
            fw = None
            rep.forward_ok = False
            rep.failures.append(f"forward translator raised {type(e).__name__}: {e}")
        if rep.forward_ok is False and fw is not None:
            rep.failures.append("forward image of a source witness is not a target witness")
        if rep.forward_ok:
            try:
                back = ro.backward(fw)
                rep.roundtrip_ok = check_witness(ro.source_kind, ro.source, back)
            except Exception as e:
                rep.roundtrip_ok = False
                rep.failures.append(f"backward(forward(w)) raised {type(e).__name__}: {e}")
            if rep.roundtrip_ok is False:
                rep.failures.append("backward(forward(w)) is not a source witness")
    if t_wit is not None:
        try:
            bw = ro.backward(t_wit)
            rep.backward_ok = check_witness(ro.source_kind, ro.source, bw)
        except Exception as e:
            rep.backward_ok = False
            rep.failures.append(f"backward translator raised {type(e).__name__}: {e}")
        if rep.backward_ok is False and not any("backward translator" in f for f in rep.failures):
            rep.failures.append("backward image of a target witness is not a source witness")
    if counts is None:
        counts = ro.parsimonious
    if counts:
        rep.source_count = count(ro.source_kind, ro.source)
        rep.target_count = count(ro.target_kind, ro.target)
        if rep.source_count != rep.target_count:
            rep.failures.append(f"count mismatch: source {rep.source_count}, target {rep.target_count}")
    return rep


def compose(first: ReductionOutput, second: ReductionOutput) -> ReductionOutput:
    """``second`` must have been built on ``first.target``."""
    if second.source is not first.target and second.source != first.target:
        raise ValueError("second reduction does not start at the first one's target")
    return ReductionOutput(
        name=f"{first.name}+{second.name}",
        source_kind=first.source_kind,
        target_kind=second.target_kind,
        source=first.source,
        target=second.target,
        forward=lambda w: second.forward(first.forward(w)),
        backward=lambda w: first.backward(second.backward(w)),
        params={"steps": [first.name, second.name], first.name: first.params, second.name: second.params},
        parsimonious=first.parsimonious and second.parsimonious,
    )
