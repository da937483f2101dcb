"""Prime generation and the asymptotic approximants used as spectral targets.

p_n ~ n log n by the prime number theorem; the four-term Cesaro refinement

    p_n ~ n log n + n log log n - n + n (log log n - 2) / log n

is what the comparisons against eigenvalue growth actually use, since the
bare n log n undershoots by ~10% even at n = 10^6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LimitTooLarge, OutOfDomain

__all__ = ["PrimeTable", "sieve", "nth_prime", "pnt_asymptotic", "cesaro"]

_SIEVE_MAX = 1_000_000_000


@dataclass
class PrimeTable:
    limit: int
    primes: np.ndarray  # int64, ascending

    @property
    def count(self) -> int:
        return int(self.primes.size)

    def nth(self, n: int) -> int:
        """1-indexed: nth(1) = 2."""
        if not 1 <= n <= self.count:
            raise OutOfDomain(f"table up to {self.limit} holds {self.count} primes, asked for #{n}")
        return int(self.primes[n - 1])


def sieve(limit: int) -> PrimeTable:
    """Eratosthenes up to and including limit."""
    limit = int(limit)
    if limit < 2:
        raise OutOfDomain(f"sieve limit must be >= 2, got {limit}")
    if limit > _SIEVE_MAX:
        raise LimitTooLarge(f"sieve limit {limit} exceeds {_SIEVE_MAX}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return PrimeTable(limit=limit, primes=np.flatnonzero(flags).astype(np.int64))


def nth_prime(n: int) -> int:
    """The n-th prime, sieving to the Rosser bound n(log n + log log n) first."""
    if n < 1:
        raise OutOfDomain(f"prime index must be >= 1, got {n}")
    if n < 6:
        return (2, 3, 5, 7, 11)[n - 1]
    ln = math.log(n)
    bound = math.ceil(n * (ln + math.log(ln))) + 10
    while True:
        table = sieve(min(bound, _SIEVE_MAX))
        if table.count >= n:
            return table.nth(n)
        if bound >= _SIEVE_MAX:
            raise LimitTooLarge(f"prime #{n} lies beyond the sieve ceiling {_SIEVE_MAX}")
        bound *= 2


def pnt_asymptotic(n: int) -> float:
    """Leading-order p_n ~ n log n (n >= 2)."""
    if n < 2:
        raise OutOfDomain(f"n log n approximant needs n >= 2, got {n}")
    return n * math.log(n)


def cesaro(n: int) -> float:
    """Four-term Cesaro expansion of p_n (n >= 3 so log log n > 0)."""
    if n < 3:
        raise OutOfDomain(f"Cesaro expansion needs n >= 3, got {n}")
    ln = math.log(n)
    lln = math.log(ln)
    return n * (ln + lln - 1.0 + (lln - 2.0) / ln)
