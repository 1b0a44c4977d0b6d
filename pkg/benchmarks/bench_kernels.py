#!/usr/bin/env python3
"""Compare the compiled search kernel with the pure-Python fallback.

Each workload is run on both backends; results must agree, and the table
reports the best-of-``--repeat`` wall time and the speedup.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

import argparse
import json
import random
import sys
import time

from homclass import kernels
from homclass.structures import complete_graph, make_family
from homclass.random_instances import random_graph


def workloads(seed: int):
    rng = random.Random(seed)
    dense = random_graph(rng, 12, 0.5)
    sparse = random_graph(rng, 12, 0.3)
    return [
        ("count C8 -> K3", make_family("cycle", 8), complete_graph(3), "count", False),
        ("count C10 -> K4", make_family("cycle", 10), complete_graph(4), "count", False),
        ("count P8 -> random G(12,.5)", make_family("path", 8), dense, "count", False),
        ("count emb P6 -> random G(12,.5)", make_family("path", 6), dense, "count", True),
        ("find grid3 -> C5", make_family("grid", 3), make_family("cycle", 5), "find", False),
        ("find emb K4 -> random G(12,.3)", complete_graph(4), sparse, "find", True),
        ("find K4 -> random G(12,.5)", complete_graph(4), dense, "find", False),
    ]


def best_time(fn, repeat):
    best, out = None, None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="also write the rows as JSON")
    args = p.parse_args(argv)

    if kernels.BACKEND != "cython":
        print("compiled kernel not available; build with 'pip install -e . --no-build-isolation'",
              file=sys.stderr)
        return 1
    rows = []
    print(f"{'workload':36s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}  result")
    for name, a, b, mode, inj in workloads(args.seed):
        fn = kernels.count if mode == "count" else kernels.find
        tp, rp = best_time(lambda: fn(a, b, injective=inj, backend="python"), args.repeat)
        tc, rc = best_time(lambda: fn(a, b, injective=inj, backend="cython"), args.repeat)
        if rp != rc:
            print(f"backends disagree on {name}: {rp} vs {rc}", file=sys.stderr)
            return 2
        speedup = tp / tc if tc > 0 else float("inf")
        rows.append({"workload": name, "python_s": tp, "cython_s": tc, "speedup": speedup,
                     "result": rp if mode == "count" else rp is not None})
        print(f"{name:36s} {tp:10.4f} {tc:10.4f} {speedup:8.1f}  {rows[-1]['result']}")
    if args.json:
        with open(args.json, "w") as f:
            json.dump(rows, f, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
