"""Segmented sieve of Eratosthenes over odd integers.

Segments are a fixed 2**20 odd integers wide, so memory use and the
segment boundaries do not depend on the caller or the platform. Residue
filtering (``q = 1 mod p``) is applied after sieving each segment.
"""

from __future__ import annotations

import math
from typing import Iterator, Optional

import numpy as np

SEGMENT_ODDS = 1 << 20


def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit by a plain (unsegmented) sieve."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p::2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


class PrimeEngine:
    """Streams the primes in ``[lo, bound]`` in increasing order.

    With ``modulus`` set, only primes congruent to ``residue`` modulo it are
    emitted. An engine is single-consumer; for parallel work create one
    engine per disjoint ``[lo, bound]`` range.
    """

    def __init__(self, bound: int, modulus: Optional[int] = None, residue: int = 1, lo: int = 2):
        if bound < 2:
            raise ValueError("bound must be at least 2")
        self.bound = int(bound)
        self.modulus = modulus
        self.residue = residue
        self.lo = max(2, int(lo))
        self._base = small_primes(math.isqrt(self.bound) + 1)[1:]  # odd base primes

    def _filter(self, arr):
        if self.modulus is None:
            return arr
        return arr[arr % self.modulus == self.residue % self.modulus]

    def segments(self) -> Iterator[np.ndarray]:
        """Yield the primes one segment at a time as int64 arrays."""
        if self.lo <= 2 <= self.bound:
            first = self._filter(np.array([2], dtype=np.int64))
            if first.size:
                yield first
        # odd numbers are indexed by k -> 2k + 1; segments start on fixed multiples
        k_lo = max(1, self.lo // 2)
        k_hi = (self.bound - 1) // 2  # inclusive
        seg_start = (k_lo // SEGMENT_ODDS) * SEGMENT_ODDS
        while seg_start <= k_hi:
            seg_end = min(seg_start + SEGMENT_ODDS, k_hi + 1)
            mask = np.ones(seg_end - seg_start, dtype=bool)
            lo_val = 2 * seg_start + 1
            hi_val = 2 * (seg_end - 1) + 1
            for p in self._base:
                p = int(p)
                sq = p * p
                if sq > hi_val:
                    break
                start = max(sq, ((lo_val + p - 1) // p) * p)
                if start % 2 == 0:
                    start += p
                mask[(start - 1) // 2 - seg_start::p] = False
            if seg_start == 0:
                mask[0] = False  # 1 is not prime
            out = 2 * (np.flatnonzero(mask) + seg_start) + 1
            out = out[out >= self.lo]
            out = self._filter(out.astype(np.int64))
            if out.size:
                yield out
            seg_start = seg_end

    def __iter__(self) -> Iterator[int]:
        for seg in self.segments():
            yield from seg.tolist()

    def array(self) -> np.ndarray:
        parts = list(self.segments())
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def count(self) -> int:
        return sum(int(seg.size) for seg in self.segments())


def primes_up_to(X: int, modulus: Optional[int] = None, residue: int = 1) -> np.ndarray:
    """Array of primes <= X, optionally restricted to ``residue`` mod ``modulus``."""
    return PrimeEngine(X, modulus, residue).array()


def prime_pi(X: int) -> int:
    """Number of primes <= X."""
    return 0 if X < 2 else PrimeEngine(X).count()


def split_range(lo: int, hi: int, chunk: int):
    """Contiguous ``[a, b]`` ranges covering ``[lo, hi]``, aligned to multiples of ``chunk``.

    The partition depends only on the range and ``chunk``, never on the
    number of workers, which keeps floating-point reductions reproducible.
    """
    out = []
    a = lo
    while a <= hi:
        b = min(hi, (a // chunk + 1) * chunk - 1)
        out.append((a, b))
        a = b + 1
    return out
