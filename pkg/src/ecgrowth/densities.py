"""Closed-form and empirical densities.

The rank-zero expression (1 - 1/p)(1 - prod_{q = 1 mod p, q <= X}(1 - (q+1)/(2q^2)))
is evaluated through its logarithm: every factor is within 1e-2 of 1, so
log1p keeps full precision per term and math.fsum makes the sum exactly
rounded. Partial sums come from fixed prime ranges, so the value does not
depend on the number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from .arith import POINT_COUNT_CAP, EllipticCurve, is_prime, trace_of_frobenius, traces_batch
from .errors import CapExceeded, DuplicatePrime, RamifiedOrBadPrime, SmallPrime
from .localdata import local_data_table, minimal_model
from .primes import PrimeEngine, split_range

EXPRESSION_CHUNK = 1 << 24
SCAN_CHUNK = 1 << 21

CM_J_INVARIANTS = frozenset({
    0, 1728, -3375, 8000, -32768, 54000, 287496, -884736, -12288000, 16581375,
    -884736000, -147197952000, -262537412640768000,
})


@dataclass(frozen=True)
class DensityResult:
    p: int
    X: int
    value: float
    term_count: int
    log_sum: float = 0.0
    naive_value: Optional[float] = None

    def formatted(self) -> str:
        return format_6g(self.value)


def format_6g(value: float) -> str:
    return format(value, ".6g")


def _expression_chunk(ps, a, b):
    primes = PrimeEngine(b, lo=a).array().astype(np.float64)
    out = []
    for p in ps:
        q = primes[primes % p == 1]
        terms = np.log1p(-(q + 1.0) / (2.0 * q * q))
        out.append((math.fsum(terms.tolist()), float(np.prod(1.0 - (q + 1.0) / (2.0 * q * q))), int(q.size)))
    return out


def rank_zero_table(ps: Iterable[int], X: int, workers: int = 1,
                    progress: Optional[Callable[[int, int], None]] = None) -> list:
    """DensityResult for every p in ``ps`` from a single sieve pass to X."""
    ps = list(ps)
    for p in ps:
        if p < 3 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
    if X < 2:
        raise ValueError("X must be at least 2")
    chunks = split_range(2, X, EXPRESSION_CHUNK)
    if workers <= 1 or len(chunks) == 1:
        parts = []
        for i, (a, b) in enumerate(chunks):
            parts.append(_expression_chunk(ps, a, b))
            if progress:
                progress(i + 1, len(chunks))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_expression_chunk, ps, a, b) for a, b in chunks]
            parts = []
            for i, fut in enumerate(futures):
                parts.append(fut.result())
                if progress:
                    progress(i + 1, len(chunks))
    results = []
    for k, p in enumerate(ps):
        S = math.fsum(part[k][0] for part in parts)
        naive = 1.0
        for part in parts:
            naive *= part[k][1]
        n = sum(part[k][2] for part in parts)
        scale = 1.0 - 1.0 / p
        results.append(DensityResult(p, X, scale * -math.expm1(S) + 0.0, n, S, scale * (1.0 - naive)))
    return results


def rank_zero_expression(p: int, X: int, workers: int = 1) -> DensityResult:
    return rank_zero_table([p], X, workers)[0]


def tame_lower_bound(primes: Iterable[int]) -> Fraction:
    """prod (q + 1) / (2 q^2) over distinct primes q."""
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise DuplicatePrime("primes must be distinct")
    out = Fraction(1)
    for q in primes:
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        out *= Fraction(q + 1, 2 * q * q)
    return out


def gl2_order(p: int) -> int:
    return (p * p - 1) * (p * p - p)


BRUTEFORCE_MAX_P = 13


def chebotarev_set_size(p: int, mode: str = "formula") -> int:
    """#{g in GL2(F_p) : tr g = 2, det g = 1}."""
    if p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if mode == "formula":
        return p * p
    if mode != "bruteforce":
        raise ValueError(f"unknown mode {mode!r}")
    if p > BRUTEFORCE_MAX_P:
        raise CapExceeded(f"brute force enumeration is limited to p <= {BRUTEFORCE_MAX_P}")
    a, b, c, d = np.indices((p, p, p, p), dtype=np.int64)
    tr = (a + d) % p
    det = (a * d - b * c) % p
    return int(np.count_nonzero((tr == 2 % p) & (det == 1)))


def eigenvalue_one_count(p: int) -> int:
    """#{g in GL2(F_p) : 1 is an eigenvalue of g}, by enumeration."""
    if p > BRUTEFORCE_MAX_P:
        raise CapExceeded(f"brute force enumeration is limited to p <= {BRUTEFORCE_MAX_P}")
    a, b, c, d = np.indices((p, p, p, p), dtype=np.int64)
    det = (a * d - b * c) % p
    return int(np.count_nonzero((det != 0) & (((a - 1) * (d - 1) - b * c) % p == 0)))


def frobenius_in_s(curve: EllipticCurve, p: int, q: int) -> bool:
    """Whether Frob_q has trace 2 and determinant 1 mod p."""
    E = minimal_model(curve)
    if q == p or E.disc % q == 0:
        raise RamifiedOrBadPrime(f"q = {q} divides N p")
    if q % p != 1:
        return False
    return trace_of_frobenius(E, q) % p == 2 % p


def density_lower_bound(p: int) -> Fraction:
    if p < 5 or not is_prime(p):
        raise SmallPrime("the density bound is stated for primes p >= 5")
    return Fraction(p, (p - 1) ** 2 * (p + 1))


def enemy_proportion_prediction(p: int, has_cm: bool) -> Fraction:
    if p < 5 or not is_prime(p):
        raise SmallPrime("predictions are stated for primes p >= 5")
    return Fraction(1, (2 if has_cm else 1) * p * (p - 1))


def has_cm(curve: EllipticCurve) -> bool:
    j = curve.j_invariant
    return j.denominator == 1 and j.numerator in CM_J_INVARIANTS


@dataclass(frozen=True)
class CojocaruResult:
    p: int
    X: int
    count: int
    pi_X: int

    @property
    def proportion(self) -> float:
        return self.count / self.pi_X if self.pi_X else 0.0


def _cojocaru_chunk(ainvs, p, a, b):
    E = EllipticCurve(*ainvs)
    primes = PrimeEngine(b, lo=a).array()
    good = np.array([q for q in primes.tolist() if q != p and E.disc % q != 0], dtype=np.int64)
    count = 0
    small = good[good < 5]
    for q in small.tolist():
        count += _count_small(E, q) % p == 0
    big = good[good >= 5]
    if big.size:
        aq = traces_batch(E, big)
        count += int(np.count_nonzero((big + 1 - aq) % p == 0))
    return int(count), int(primes.size)


def _count_small(E, q):
    a1, a2, a3, a4, a6 = E.ainvs
    return 1 + sum((y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % q == 0
                   for x in range(q) for y in range(q))


def cojocaru_scan(curve: EllipticCurve, p: int, X: int, workers: int = 1) -> CojocaruResult:
    """Count of q <= X with q not dividing pN and p | #E(F_q), against pi(X)."""
    if X > POINT_COUNT_CAP:
        raise CapExceeded(f"scans are limited to X <= {POINT_COUNT_CAP}")
    E = minimal_model(curve)
    local_data_table(E)
    if X < 2:
        return CojocaruResult(p, X, 0, 0)
    args = [(E.ainvs, p, a, b) for a, b in split_range(2, X, SCAN_CHUNK)]
    if workers <= 1 or len(args) == 1:
        parts = [_cojocaru_chunk(*arg) for arg in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_cojocaru_chunk, *zip(*args)))
    return CojocaruResult(p, X, sum(c for c, _ in parts), sum(n for _, n in parts))
