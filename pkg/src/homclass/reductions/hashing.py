"""The hash family ``h_{p,q}(m) = (q*m mod p) mod k**2`` on ``{1..n}``.

Primes range over ``p < k**2 * log2(n)`` (strict, real-valued bound) and
``q`` over ``0..p-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ..errors import PreconditionError


@dataclass(frozen=True)
class HashParams:
    n: int
    k: int
    p: int
    q: int


def prime_bound(n: int, k: int) -> float:
    return k * k * math.log2(n) if n >= 1 else 0.0


@lru_cache(maxsize=None)
def primes_below(bound: float) -> tuple[int, ...]:
    """Primes ``p`` with ``p < bound``."""
    top = math.ceil(bound)  # p < bound  <=>  p <= top - 1 for integers
    if top <= 2:
        return ()
    sieve = bytearray([1]) * top
    sieve[0] = sieve[1] = 0
    for i in range(2, int(top ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, top, i)))
    return tuple(i for i in range(top) if sieve[i] and i < bound)


def hash_pairs(n: int, k: int):
    """All admissible ``(p, q)`` in scan order."""
    for p in primes_below(prime_bound(n, k)):
        for q in range(p):
            yield p, q


def hash_eval(hp: HashParams, m: int) -> int:
    if not 1 <= m <= hp.n:
        raise PreconditionError(f"hash argument {m} outside 1..{hp.n}")
    return (hp.q * m % hp.p) % (hp.k * hp.k)


def find_injective_hash(x, k: int, n: int) -> HashParams | None:
    """First ``(p, q)`` in scan order whose hash is injective on ``x``."""
    x = sorted(set(x))
    if len(x) > k:
        raise PreconditionError(f"set of size {len(x)} exceeds k = {k}")
    if any(not 1 <= m <= n for m in x):
        raise PreconditionError(f"elements must lie in 1..{n}")
    kk = k * k
    for p, q in hash_pairs(n, k):
        if len({(q * m % p) % kk for m in x}) == len(x):
            return HashParams(n, k, p, q)
    return None
