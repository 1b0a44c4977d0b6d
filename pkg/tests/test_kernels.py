"""Compiled and pure-Python kernels must agree on every search."""

import random

import pytest

from homclass import kernels
from homclass.random_instances import random_structure, random_target, random_vocabulary
from homclass.structures import complete_graph, make_family

from oracles import brute_count

needs_compiled = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernel not built")


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("backend", ["python", pytest.param("cython", marks=needs_compiled)])
def test_against_enumeration(backend):
    rng = random.Random(7)
    for _ in range(150):
        vocab = random_vocabulary(rng)
        a = random_structure(rng, vocab, rng.randint(1, 4))
        b = random_target(rng, a, rng.randint(1, 4))
        for inj in (False, True):
            expected = brute_count(a, b, inj)
            assert kernels.count(a, b, injective=inj, backend=backend) == expected
            h = kernels.find(a, b, injective=inj, backend=backend)
            assert (h is not None) == (expected > 0)


@needs_compiled
def test_backends_identical_witnesses():
    rng = random.Random(3)
    for _ in range(200):
        vocab = random_vocabulary(rng)
        a = random_structure(rng, vocab, rng.randint(1, 5))
        b = random_target(rng, a, rng.randint(1, 5))
        doms = [sorted(rng.sample(range(b.universe_size), rng.randint(1, b.universe_size)))
                for _ in a.universe]
        for inj in (False, True):
            assert kernels.find(a, b, injective=inj, domains=doms, backend="python") == \
                kernels.find(a, b, injective=inj, domains=doms, backend="cython")
            assert kernels.count(a, b, injective=inj, domains=doms, backend="python") == \
                kernels.count(a, b, injective=inj, domains=doms, backend="cython")


def test_first_witness_is_lexicographically_least():
    assert kernels.find(make_family("cycle", 4), complete_graph(3)) == (0, 1, 0, 1)


def test_path_colouring_count():
    # 3 * 2^(n-1) proper colourings of a path with 3 colours
    p = make_family("path", 12)
    assert kernels.count(p, complete_graph(3)) == 3 * 2 ** 11


def test_environment_forces_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, HOMCLASS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import homclass; print(homclass.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
