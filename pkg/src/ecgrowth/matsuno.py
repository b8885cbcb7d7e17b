"""2-rank growth of Sha in quadratic twists: rank bounds, prime picking, and the
effective conductor estimate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .arith import EllipticCurve, cubic_splits_completely
from .errors import CapExceeded, DomainError, InvalidTorsionRank
from .localdata import conductor, minimal_model
from .primes import PrimeEngine

SPLIT_PRIME_BOUND = 10**7
EULER_GAMMA = 0.57721566490153286060651209


def p_rank_equation(rank: int, torsion_p_rank: int, sha_p_rank: int) -> int:
    """p-rank of Sel_p as rank + dim E[p](F) + dim Sha[p]."""
    if min(rank, torsion_p_rank, sha_p_rank) < 0:
        raise ValueError("ranks are nonnegative")
    if torsion_p_rank > 2:
        raise InvalidTorsionRank("E(F)[p] has rank at most 2")
    return rank + torsion_p_rank + sha_p_rank


def selmer_rank_lower_bound(t_set_size: int) -> int:
    if t_set_size < 0:
        raise ValueError("set size is nonnegative")
    return max(t_set_size - 4, 0)


def sha_two_rank_lower_bound(k: int, rank_q: int) -> int:
    if k < 0 or rank_q < 0:
        raise ValueError("arguments are nonnegative")
    return max(k - 6 - rank_q, 0)


def pick_split_primes(curve: EllipticCurve, k: int, bound: int = SPLIT_PRIME_BOUND) -> list:
    """The k smallest odd primes of good reduction splitting completely in Q(E[2])."""
    if k < 1:
        raise ValueError("k must be positive")
    E = minimal_model(curve)
    bad = conductor(E) * curve.disc
    out = []
    for seg in PrimeEngine(bound, lo=3).segments():
        for q in seg.tolist():
            if bad % q and cubic_splits_completely(E, q):
                out.append(q)
                if len(out) == k:
                    return out
    raise CapExceeded(f"fewer than {k} split primes below {bound}")


def _rational_roots_of_2_division(curve):
    # 4x^3 + b2 x^2 + 2 b4 x + b6 with X = 4x becomes X^3 + b2 X^2 + 8 b4 X + 16 b6
    coeffs = [1, curve.b2, 8 * curve.b4, 16 * curve.b6]
    roots = set()
    for r in np.roots(np.array(coeffs, dtype=float)):
        if abs(r.imag) > 1e-6 * max(1.0, abs(r.real)):
            continue
        guess = int(round(r.real))
        for cand in (guess - 1, guess, guess + 1):
            if ((cand + coeffs[1]) * cand + coeffs[2]) * cand + coeffs[3] == 0:
                roots.add(cand)
    return roots


def galois_degree_2_division(curve: EllipticCurve) -> int:
    """[Q(E[2]) : Q], one of 1, 2, 3, 6."""
    n = len(_rational_roots_of_2_division(curve))
    if n == 3:
        return 1
    if n == 1:
        return 2
    d = curve.disc
    return 3 if d > 0 and math.isqrt(d) ** 2 == d else 6


def logarithmic_integral(x: float) -> float:
    """Principal value of the integral of 1/log t from 0 to x, for x > 1."""
    if x <= 1:
        raise DomainError("li(x) is evaluated for x > 1 only")
    y = math.log(x)
    if y > 40:
        # Ei(y) ~ e^y / y * sum k! / y^k, truncated at the smallest term
        terms, t, k = [1.0], 1.0, 1
        while True:
            nxt = t * k / y
            if nxt >= t or nxt < 1e-17:
                break
            terms.append(nxt)
            t, k = nxt, k + 1
        return math.exp(y) / y * math.fsum(terms)
    terms, t, k = [], 1.0, 1
    while True:
        t *= y / k
        terms.append(t / k)
        if k > y and t / k < 1e-18 * (1.0 + abs(terms[0])):
            break
        k += 1
    return EULER_GAMMA + math.log(y) + math.fsum(terms)


@dataclass(frozen=True)
class ShaGrowthPlan:
    n: int
    rank_q: int
    k: int
    picked_primes: tuple
    conductor_product: int
    asymptotic_estimate: Optional[float]
    c: int
    galois_degree: int
    assumptions: tuple = (
        "a quadratic twist of rank 0 with the prescribed local behaviour exists (assumed, not checked)",
    )

    @property
    def sha_two_rank_bound(self) -> int:
        return sha_two_rank_lower_bound(self.k, self.rank_q)


def asymptotic_conductor_estimate(n: int, c: int) -> Optional[float]:
    """(log n)^(n + c) / exp(li(n)); undefined (None) for n < 2."""
    if n < 2:
        return None
    return math.exp((n + c) * math.log(math.log(n)) - logarithmic_integral(n))


def matsuno_plan(curve: EllipticCurve, n: int, rank_q: int = 0) -> ShaGrowthPlan:
    if n < 1:
        raise ValueError("n must be at least 1")
    if rank_q < 0:
        raise ValueError("rank must be nonnegative")
    k = n + rank_q + 6
    primes = pick_split_primes(curve, k)
    degree = galois_degree_2_division(curve)
    c = max(degree, 2)
    return ShaGrowthPlan(n, rank_q, k, tuple(primes), math.prod(primes),
                         asymptotic_conductor_estimate(n, c), c, degree)
