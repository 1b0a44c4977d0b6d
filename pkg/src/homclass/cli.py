"""Command-line front end.

Every invocation prints one JSON report on stdout (keys sorted, no timing
unless ``--timing``) and diagnostics on stderr.  Exit codes: 0 ok, 2 input
could not be parsed or read, 3 semantic error (vocabulary mismatch, failed
precondition), 4 size bound exceeded, 5 internal invariant failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from pathlib import Path

from . import counting, rstruct, solvers
from .errors import HomclassError, InvariantFailure, ParseError, PreconditionError, StructureError
from .kernels import BACKEND
from .structures import Structure, is_starred, size, unstar

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_BOUND, EXIT_INTERNAL = 0, 2, 3, 4, 5

FINITE_SAMPLE_NOTE = (
    "finite-sample diagnostic: the classification concerns infinite classes of "
    "structures and cannot be decided from a finite sample"
)


# ---------------------------------------------------------------------------
# helpers

def digest(path) -> dict:
    data = Path(path).read_bytes()
    return {"path": str(path), "sha256": hashlib.sha256(data).hexdigest()}


def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def load_structures(path) -> dict[str, Structure]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return rstruct.parse(text)


def pick(structures: dict, name: str, path) -> Structure:
    if name not in structures:
        raise StructureError(f"no structure named {name!r} in {path} "
                             f"(available: {', '.join(sorted(structures)) or 'none'})")
    return structures[name]


def describe(s: Structure) -> dict:
    return {"universe": s.universe_size, "size": size(s),
            "vocabulary": [[sym.name, sym.arity] for sym in s.vocabulary]}


# ---------------------------------------------------------------------------
# solve / count

def cmd_solve(args) -> dict:
    structs = load_structures(args.file)
    a, b = pick(structs, args.left, args.file), pick(structs, args.right, args.file)
    bound = args.max_size
    if args.problem == "emb" and args.method != "brute":
        raise PreconditionError("the decomposition methods solve the homomorphism problem only")
    extra = {}
    if args.method == "brute":
        fn = solvers.hom_exists if args.problem == "hom" else solvers.emb_exists
        res = fn(a, b, max_size=bound)
    elif args.method == "path-dp":
        from .widths import pathwidth_exact

        pw, pd = pathwidth_exact(a, bound=bound)
        res = solvers.solve_via_path_decomposition(a, b, pd)
        extra = {"pathwidth": pw}
    else:
        res, extra = _solve_tree_dp(a, b, bound)
    return {"problem": args.problem, "method": args.method, "answer": res.answer,
            "witness": list(res.witness) if res.witness is not None else None, **extra}


def _solve_tree_dp(a, b, bound):
    """Starred trees go straight to the tree DP; other left sides go through
    the tree-decomposition reduction first."""
    if is_starred(a):
        try:
            return solvers.solve_tree_instance(a, b), {"route": "starred-tree"}
        except PreconditionError:
            pass
    from .reductions import reduce_via_tree_decomposition
    from .widths import treewidth_exact

    tw, td = treewidth_exact(a, bound=bound)
    ro = reduce_via_tree_decomposition(a, b, td)
    r = solvers.solve_tree_instance(*ro.target)
    if not r.answer:
        return solvers.SolveResult(False), {"route": "tree-decomposition", "treewidth": tw}
    w = ro.backward(r.witness)
    if not solvers.is_homomorphism(w, a, b):
        raise InvariantFailure("tree DP witness does not translate back to a homomorphism")
    return solvers.SolveResult(True, tuple(w)), {"route": "tree-decomposition", "treewidth": tw}


def cmd_count(args) -> dict:
    structs = load_structures(args.file)
    a, b = pick(structs, args.left, args.file), pick(structs, args.right, args.file)
    out = {"problem": args.problem, "method": args.method}
    if args.problem == "emb":
        if args.method != "brute":
            raise PreconditionError("embeddings are counted by brute force only")
        out["count"] = solvers.count_embs(a, b, max_size=args.max_size)
        return out
    if args.method == "brute":
        out["count"] = solvers.count_homs(a, b, max_size=args.max_size)
    elif args.method == "incl-excl":
        if not is_starred(a):
            raise PreconditionError("inclusion-exclusion counts instances with a starred left side")
        n, log = counting.count_star_via_inclusion_exclusion(a, b, max_size=args.max_size)
        out.update(count=n, queries=len(log), automorphisms=counting.count_automorphisms(unstar(a), max_size=None))
    elif args.method == "td-dp":
        out["count"] = counting.td_dp_count(a, b)
    else:
        from .widths import treewidth_exact

        td = treewidth_exact(a, bound=args.max_size)[1]
        out["count"] = counting.count_via_tree_decomposition(a, b, td)
    return out


# ---------------------------------------------------------------------------
# measures / core / classify

def measures(a: Structure, bound) -> dict:
    from .widths import (
        forest_lines,
        format_decomposition,
        pathwidth_exact,
        treedepth_exact,
        treewidth_exact,
        validate_forest,
        validate_path_decomposition,
        validate_tree_decomposition,
    )
    from .structures import gaifman

    tw, td = treewidth_exact(a, bound=bound)
    pw, pd = pathwidth_exact(a, bound=bound)
    dp, forest = treedepth_exact(a, bound=bound)
    problems = (validate_tree_decomposition(a, td) + validate_path_decomposition(a, pd)
                + validate_forest(gaifman(a), forest))
    if problems:
        raise InvariantFailure("computed witness fails validation: " + "; ".join(problems))
    return {"tw": tw, "pw": pw, "td": dp,
            "tree_decomposition": format_decomposition(td),
            "path_decomposition": format_decomposition(pd),
            "elimination_forest": forest_lines(forest)}


def cmd_measures(args) -> dict:
    structs = load_structures(args.file)
    a = pick(structs, args.name, args.file)
    return {"name": args.name, **describe(a), **measures(a, args.max_size)}


def cmd_core(args) -> dict:
    structs = load_structures(args.file)
    a = pick(structs, args.name, args.file)
    cr = solvers.core(a, max_size=args.max_size)
    out = {"name": args.name, "is_core": cr.core.universe_size == a.universe_size,
           "core": describe(cr.core), "carrier": list(cr.carrier),
           "retraction": list(cr.retraction),
           "core_rstruct": rstruct.serialize_one(f"{args.name}_core", cr.core)}
    if args.out:
        rstruct.dump({f"{args.name}_core": cr.core}, args.out)
        out["out"] = str(args.out)
    return out


def classify_label(rows: list[dict], pw_threshold: int, td_threshold: int) -> tuple[str, dict]:
    """A measure counts as large if its maximum exceeds the threshold or it
    grows from the smallest to the largest core of the sample."""
    ordered = sorted(rows, key=lambda r: (r["core_universe"], r["name"]))

    def large(key, threshold):
        vals = [r[key] for r in ordered]
        growing = len(vals) > 1 and ordered[-1]["core_universe"] > ordered[0]["core_universe"] \
            and vals[-1] > vals[0]
        return max(vals) > threshold or growing, growing

    pw_large, pw_growing = large("pw", pw_threshold)
    td_large, td_growing = large("td", td_threshold)
    if pw_large:
        label = "tree-degree candidates"
    elif td_large:
        label = "path-degree"
    else:
        label = "para-L regime"
    return label, {"pw_large": pw_large, "pw_growing": pw_growing,
                   "td_large": td_large, "td_growing": td_growing}


def cmd_classify(args) -> dict:
    structs = load_structures(args.file)
    names = args.names or sorted(structs)
    if not names:
        raise StructureError("empty sample")
    rows = []
    for name in names:
        a = pick(structs, name, args.file)
        c = solvers.core(a, max_size=args.max_size).core
        m = measures(c, args.max_size)
        rows.append({"name": name, "universe": a.universe_size, "core_universe": c.universe_size,
                     "tw": m["tw"], "pw": m["pw"], "td": m["td"]})
    label, flags = classify_label(rows, args.pw_threshold, args.td_threshold)
    return {"sample": rows, "max_tw": max(r["tw"] for r in rows), "max_pw": max(r["pw"] for r in rows),
            "max_td": max(r["td"] for r in rows), "pw_threshold": args.pw_threshold,
            "td_threshold": args.td_threshold, "label": label, **flags, "note": FINITE_SAMPLE_NOTE}


# ---------------------------------------------------------------------------
# logic

def load_formula(path, vocabulary=None):
    from .logic import parse

    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse(text, vocabulary)


def cmd_mc(args) -> dict:
    from .logic import is_sentence, model_check, qr, to_text

    structs = load_structures(args.file)
    a = pick(structs, args.name, args.file)
    # parsed on its own so that a symbol missing from the structure is reported
    # as a vocabulary mismatch rather than a syntax error
    phi = load_formula(args.formula)
    if not is_sentence(phi):
        raise PreconditionError("model checking from the command line needs a sentence")
    return {"structure": args.name, "formula": to_text(phi), "qr": qr(phi), "value": model_check(a, phi)}


def cmd_compile_phi(args) -> dict:
    from .logic import REJECT_SENTENCE, build_phi_A, qr, to_text

    structs = load_structures(args.file)
    a = pick(structs, args.name, args.file)
    try:
        phi = build_phi_A(a, args.width, core_bound=args.max_size)
        rejected = False
    except PreconditionError as e:
        print(f"compile-phi: {e}; emitting the unsatisfiable sentence", file=sys.stderr)
        phi, rejected = REJECT_SENTENCE, True
    text = to_text(phi)
    out = {"name": args.name, "width": args.width, "rejected": rejected, "sentence": text, "qr": qr(phi)}
    if args.out:
        Path(args.out).write_text(text + "\n")
        out["out"] = str(args.out)
    return out


# ---------------------------------------------------------------------------
# reductions

REDUCTIONS = ("tree-decomposition", "minor-to-host", "gaifman-to-structure", "drop-constants-core",
              "core-to-structure", "add-constants", "color-coding", "connectify-td", "connectify-tw",
              "homstar-path-to-dipath", "dipath-to-stpath", "stpath-to-dicycle",
              "stpath-to-cyclestar", "path-chain", "path-chain-dicycle")


def _need(args, attr, flag, name):
    v = getattr(args, attr)
    if v is None:
        raise PreconditionError(f"reduction {name} needs {flag}")
    return v


def build_reduction(args):
    from . import reductions as R
    from .minors import find_minor_map

    name = args.reduction
    structs = load_structures(args.file)
    get = lambda attr, flag: pick(structs, _need(args, attr, flag, name), args.file)
    if name in ("stpath-to-dicycle", "stpath-to-cyclestar"):
        g = get("left", "--left (graph)")
        inst = (g, _need(args, "s", "--s", name), _need(args, "t", "--t", name), _need(args, "k", "--k", name))
        return (R.stpath_to_dicycle if name == "stpath-to-dicycle" else R.stpath_to_cyclestar)(*inst)
    a, b = get("left", "--left"), get("right", "--right")
    if name == "tree-decomposition":
        from .widths import treewidth_exact

        return R.reduce_via_tree_decomposition(a, b, treewidth_exact(a)[1], literal=args.literal)
    if name == "minor-to-host":
        g = get("host", "--host")
        m = unstar(a)
        mu = find_minor_map(m, g)
        if mu is None:
            raise PreconditionError("the left structure is not a minor of the host graph")
        return R.reduce_minor_to_host(a, b, g, mu)
    if name == "gaifman-to-structure":
        return R.reduce_gaifman_to_structure(a, b, get("structure", "--structure"))
    if name == "drop-constants-core":
        return R.reduce_drop_constants_core(a, b, embedding=args.embedding)
    if name == "core-to-structure":
        return R.reduce_core_to_structure(solvers.core(a), a, b)
    if name == "add-constants":
        return R.reduce_add_constants(a, b)
    if name == "color-coding":
        return R.color_code_embedding(a, b)
    if name == "connectify-td":
        return R.connectify_td_reduction(a, b)
    if name == "connectify-tw":
        return R.connectify_tw_reduction(a, b)
    if name == "homstar-path-to-dipath":
        return R.homstar_path_to_dipath(a, b)
    if name == "dipath-to-stpath":
        return R.dipath_to_stpath(a, b)
    if name in ("path-chain", "path-chain-dicycle"):
        r1 = R.homstar_path_to_dipath(a, b)
        r2 = R.dipath_to_stpath(*r1.target)
        last = R.stpath_to_cyclestar if name == "path-chain" else R.stpath_to_dicycle
        return R.compose(R.compose(r1, r2), last(*r2.target))
    raise PreconditionError(f"unknown reduction {name!r}")


def target_structures(ro) -> tuple[dict, dict]:
    """Named structures of the target instance and any scalar fields."""
    if ro.target_kind == "stpath":
        g, s, t, k = ro.target
        return {"graph": g}, {"s": s, "t": t, "k": k}
    if ro.target_kind == "hom_union":
        astar, union = ro.target
        u, keys = union.materialize()
        if u is None:
            u = Structure(astar.vocabulary, 0)
        return {"left": astar, "right": u}, {"components": len(keys)}
    left, right = ro.target
    return {"left": left, "right": right}, {}


def cmd_reduce(args) -> dict:
    ro = build_reduction(args)
    named, scalars = target_structures(ro)
    out = {"reduction": ro.name, "source_kind": ro.source_kind, "target_kind": ro.target_kind,
           "parsimonious": ro.parsimonious, "params": jsonable(ro.params),
           "target": {k: describe(v) for k, v in named.items()}, **scalars}
    if args.out:
        rstruct.dump(named, args.out)
        out["out"] = str(args.out)
    if args.trace:
        steps = ro.params.get("steps") if isinstance(ro.params, dict) else None
        lines = []
        if steps:
            lines = _trace_lines(ro.params)
        else:
            lines = [{"name": ro.name, "params": jsonable(ro.params)}]
        Path(args.trace).write_text("".join(json.dumps(x, sort_keys=True) + "\n" for x in lines))
        out["trace"] = str(args.trace)
    return out


def _trace_lines(params) -> list[dict]:
    out = []
    for step in params["steps"]:
        sub = params[step]
        if isinstance(sub, dict) and "steps" in sub:
            out += _trace_lines(sub)
        else:
            out.append({"name": step, "params": jsonable(sub)})
    return out


def cmd_verify(args) -> dict:
    from .reductions import verify_reduction

    if args.random:
        from .random_instances import REDUCTION_SAMPLERS

        if args.reduction not in REDUCTION_SAMPLERS:
            raise PreconditionError(f"no random sampler for {args.reduction!r}")
        rng = random.Random(args.seed)
        sampler = REDUCTION_SAMPLERS[args.reduction]
        yes = ok = 0
        failures = []
        for i in range(args.trials):
            rep = verify_reduction(sampler(rng))
            yes += rep.source_answer
            if rep.ok:
                ok += 1
            elif len(failures) < 10:
                failures.append({"trial": i, "failures": rep.failures})
        return {"reduction": args.reduction, "trials": args.trials, "seed": args.seed,
                "yes_instances": yes, "passed": ok, "failures": failures, "ok": ok == args.trials}
    if args.file is None:
        raise PreconditionError("verify needs an instance file or --random")
    ro = build_reduction(args)
    rep = verify_reduction(ro)
    return {"reduction": ro.name, **rep.as_dict(), "ok": rep.ok}


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homclass", description=__doc__.splitlines()[0])
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide hom/emb existence")
    s.add_argument("file")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--problem", choices=("hom", "emb"), default="hom")
    s.add_argument("--method", choices=("brute", "path-dp", "tree-dp"), default="brute")
    s.add_argument("--max-size", type=int, default=solvers.DECISION_BOUND)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("count", help="count homomorphisms or embeddings")
    s.add_argument("file")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--problem", choices=("hom", "emb"), default="hom")
    s.add_argument("--method", choices=("brute", "incl-excl", "td-dp", "tree-reduction"), default="brute")
    s.add_argument("--max-size", type=int, default=solvers.DECISION_BOUND)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("measures", help="exact treewidth, pathwidth and tree depth with witnesses")
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--max-size", type=int, default=9)
    s.set_defaults(func=cmd_measures)

    s = sub.add_parser("core", help="compute the core and a retraction")
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--max-size", type=int, default=solvers.CORE_BOUND)
    s.add_argument("--out", help="write the core as .rstruct")
    s.set_defaults(func=cmd_core)

    s = sub.add_parser("classify", help="width profile of the cores of a finite sample")
    s.add_argument("file")
    s.add_argument("names", nargs="*", help="structures to include (default: all in the file)")
    s.add_argument("--pw-threshold", type=int, default=2)
    s.add_argument("--td-threshold", type=int, default=3)
    s.add_argument("--max-size", type=int, default=solvers.CORE_BOUND)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("mc", help="model-check a sentence")
    s.add_argument("formula", help=".fo file")
    s.add_argument("file", help=".rstruct file")
    s.add_argument("name")
    s.set_defaults(func=cmd_mc)

    s = sub.add_parser("compile-phi", help="sentence equivalent to 'the structure maps here'")
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--width", type=int, required=True, help="tree-depth budget w")
    s.add_argument("--max-size", type=int, default=solvers.CORE_BOUND)
    s.add_argument("--out", help="write the sentence as .fo")
    s.set_defaults(func=cmd_compile_phi)

    for cmd, func in (("reduce", cmd_reduce), ("verify", cmd_verify)):
        s = sub.add_parser(cmd, help=f"{cmd} an instance through a named reduction")
        s.add_argument("reduction", choices=REDUCTIONS)
        s.add_argument("file", nargs="?" if cmd == "verify" else None)
        s.add_argument("--left")
        s.add_argument("--right")
        s.add_argument("--host", help="host graph (minor-to-host)")
        s.add_argument("--structure", help="structure with the left graph as Gaifman graph")
        s.add_argument("--s", type=int)
        s.add_argument("--t", type=int)
        s.add_argument("--k", type=int)
        s.add_argument("--literal", action="store_true", help="literal partial-hom universe")
        s.add_argument("--embedding", action="store_true", help="read the target as an embedding instance")
        if cmd == "reduce":
            s.add_argument("--out", help="write the target instance as .rstruct")
            s.add_argument("--trace", help="write reduction parameters as JSON lines")
        else:
            s.add_argument("--random", action="store_true", help="verify on random instances")
            s.add_argument("--trials", type=int, default=200)
            s.add_argument("--seed", type=int, default=0)
        s.set_defaults(func=func)
    return p


def exit_code(e: BaseException) -> int:
    return getattr(e, "exit_code", EXIT_INTERNAL)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = [digest(getattr(args, k)) for k in ("formula", "file")
              if getattr(args, k, None) and Path(getattr(args, k)).is_file()]
    t0 = time.perf_counter()
    try:
        result = args.func(args)
    except HomclassError as e:
        print(f"homclass {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return exit_code(e)
    report = {"command": args.command, "inputs": inputs, "result": jsonable(result)}
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6), "backend": BACKEND}
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
