"""Incremental prime sieve and prime-power encodings."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, prod

from sympy import factorint

_primes: list[int] = [2, 3, 5, 7, 11, 13]
_limit = 16  # every prime below _limit is in _primes


def _extend(limit: int) -> None:
    """Sieve the segment [_limit, limit) using the primes already known."""
    global _limit
    if limit <= _limit:
        return
    lo = _limit
    segment = bytearray([1]) * (limit - lo)
    for p in _primes_up_to(isqrt(limit - 1)):
        first = max(p * p, (lo + p - 1) // p * p)
        segment[first - lo :: p] = bytes(len(range(first - lo, limit - lo, p)))
    _primes.extend(lo + i for i, flag in enumerate(segment) if flag)
    _limit = limit


def _primes_up_to(x: int) -> list[int]:
    if x >= _limit:
        _extend(x + 1)
    from bisect import bisect_right

    return _primes[: bisect_right(_primes, x)]


def nth_prime(k: int) -> int:
    """The k-th prime, 1-indexed: nth_prime(1) == 2."""
    if k < 1:
        raise ValueError("k must be >= 1")
    while len(_primes) < k:
        _extend(2 * _limit)
    return _primes[k - 1]


def primes(count: int) -> list[int]:
    nth_prime(max(count, 1))
    return _primes[:count]


@dataclass(frozen=True)
class PrimeEncoding:
    """Maximal prime powers of a positive integer, in arbitrary order."""
    factors: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, PrimeEncoding):
            return NotImplemented
        return sorted(self.factors) == sorted(other.factors)

    def __hash__(self):
        return hash(tuple(sorted(self.factors)))

    def __str__(self):
        return "#".join(str(z) for z in self.factors)

    @classmethod
    def parse(cls, text: str) -> "PrimeEncoding":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(z) for z in text.split("#")))


def prime_encode(m: int) -> PrimeEncoding:
    if m < 1:
        raise ValueError("prime encoding needs m >= 1")
    return PrimeEncoding(tuple(p**e for p, e in sorted(factorint(m).items())))


def prime_decode(e: PrimeEncoding) -> int:
    return prod(e.factors)
