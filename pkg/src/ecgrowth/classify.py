"""Enemy / friendly / neutral classification of primes q = 1 mod p, and range scans.

A prime q = 1 mod p is an enemy if E has split multiplicative reduction at q,
or good reduction with p | #E(F_q). It is friendly if E has good reduction
and p does not divide #E(F_q), and neutral for the remaining bad types.
"""

from __future__ import annotations

import enum
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .arith import POINT_COUNT_CAP, EllipticCurve, count_points, is_prime, traces_batch
from .errors import CapExceeded, SamePrime, SmallPrime
from .extensions import ExtensionProfile
from .localdata import ReductionType, local_data, local_data_table, minimal_model
from .primes import PrimeEngine, split_range

SCAN_CHUNK = 1 << 21


class Verdict(enum.Enum):
    ENEMY_SPLIT_MULT = "EnemySplitMult"
    ENEMY_ORDINARY = "EnemyOrdinary"
    FRIENDLY_ORDINARY = "FriendlyOrdinary"
    FRIENDLY_SUPERSINGULAR = "FriendlySupersingular"
    NEUTRAL_BAD = "NeutralBad"
    NOT_CONGRUENT = "NotCongruent"

    @property
    def is_enemy(self):
        return self in (Verdict.ENEMY_SPLIT_MULT, Verdict.ENEMY_ORDINARY)

    @property
    def is_friendly(self):
        return self in (Verdict.FRIENDLY_ORDINARY, Verdict.FRIENDLY_SUPERSINGULAR)


@dataclass(frozen=True)
class PrimeClassification:
    q: int
    verdict: Verdict
    aq: Optional[int] = None


def _check_p(p):
    if p < 5 or not is_prime(p):
        raise SmallPrime(f"p must be a prime >= 5, got {p}")


def classify_prime(curve: EllipticCurve, p: int, q: int) -> PrimeClassification:
    _check_p(p)
    if q == p:
        raise SamePrime(f"q must differ from p = {p}")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q % p != 1:
        return PrimeClassification(q, Verdict.NOT_CONGRUENT)
    E = minimal_model(curve)
    if E.disc % q == 0:
        rt = local_data(E, q).reduction_type
        if rt is ReductionType.SPLIT_MULTIPLICATIVE:
            return PrimeClassification(q, Verdict.ENEMY_SPLIT_MULT)
        return PrimeClassification(q, Verdict.NEUTRAL_BAD)
    n = count_points(E, q)
    aq = q + 1 - n
    if n % p == 0:
        # a_q = 0 would give n = q + 1 = 2 mod p, impossible for p > 2
        assert aq != 0
        return PrimeClassification(q, Verdict.ENEMY_ORDINARY, aq)
    v = Verdict.FRIENDLY_SUPERSINGULAR if aq == 0 else Verdict.FRIENDLY_ORDINARY
    return PrimeClassification(q, v, aq)


_SCAN_FIELDS = ("enemy_split", "enemy_ord", "friendly_ord", "friendly_ss", "neutral")
_FIELD_OF = {
    Verdict.ENEMY_SPLIT_MULT: "enemy_split",
    Verdict.ENEMY_ORDINARY: "enemy_ord",
    Verdict.FRIENDLY_ORDINARY: "friendly_ord",
    Verdict.FRIENDLY_SUPERSINGULAR: "friendly_ss",
    Verdict.NEUTRAL_BAD: "neutral",
}


@dataclass
class ScanReport:
    p: int
    X: int
    enemy_split: int = 0
    enemy_ord: int = 0
    friendly_ord: int = 0
    friendly_ss: int = 0
    neutral: int = 0
    pi_X: int = 0
    # good q = 1 mod p with a_q = 0 and p | #E(F_q); always 0 for p > 2
    supersingular_enemy: int = field(default=0, compare=True)

    CSV_HEADER = "p,X,enemy_split,enemy_ord,friendly_ord,friendly_ss,neutral,pi_X"

    @property
    def congruent(self) -> int:
        return sum(getattr(self, f) for f in _SCAN_FIELDS)

    @property
    def enemies(self) -> int:
        return self.enemy_split + self.enemy_ord

    @property
    def friends(self) -> int:
        return self.friendly_ord + self.friendly_ss

    @property
    def not_congruent(self) -> int:
        return self.pi_X - self.congruent

    def proportion(self, name: str) -> float:
        return getattr(self, name) / self.pi_X if self.pi_X else 0.0

    @property
    def enemy_fraction(self) -> float:
        return self.enemies / self.pi_X if self.pi_X else 0.0

    @property
    def friendly_fraction(self) -> float:
        return self.friends / self.pi_X if self.pi_X else 0.0

    def csv_row(self) -> list:
        return [self.p, self.X] + [getattr(self, f) for f in _SCAN_FIELDS] + [self.pi_X]

    def __add__(self, other: "ScanReport") -> "ScanReport":
        out = ScanReport(self.p, self.X)
        for f in _SCAN_FIELDS + ("pi_X", "supersingular_enemy"):
            setattr(out, f, getattr(self, f) + getattr(other, f))
        return out


def _scan_chunk(ainvs, p, X, a, b):
    E = EllipticCurve(*ainvs)
    rep = ScanReport(p, X)
    primes = PrimeEngine(b, lo=a).array()
    rep.pi_X = int(primes.size)
    qs = primes[primes % p == 1]
    bad = np.array([q for q in qs.tolist() if E.disc % q == 0], dtype=np.int64)
    good = np.setdiff1d(qs, bad)
    for q in bad.tolist():
        name = _FIELD_OF[classify_prime(E, p, q).verdict]
        setattr(rep, name, getattr(rep, name) + 1)
    if good.size:
        aq = traces_batch(E, good)
        enemy = (good + 1 - aq) % p == 0
        ss = aq == 0
        rep.enemy_ord = int(np.count_nonzero(enemy & ~ss))
        rep.supersingular_enemy = int(np.count_nonzero(enemy & ss))
        rep.friendly_ss = int(np.count_nonzero(~enemy & ss))
        rep.friendly_ord = int(np.count_nonzero(~enemy & ~ss))
    return rep


def scan_proportions(curve: EllipticCurve, p: int, X: int, workers: int = 1,
                     progress: Optional[Callable[[int, int], None]] = None) -> ScanReport:
    """Counts of each verdict over q <= X, q = 1 mod p, with pi(X).

    Primes are split into fixed chunks that do not depend on ``workers``, and
    the merge is integer addition, so the report is identical for any worker
    count.
    """
    _check_p(p)
    if X > POINT_COUNT_CAP:
        raise CapExceeded(f"scans are limited to X <= {POINT_COUNT_CAP}")
    if X < 2:
        raise ValueError("X must be at least 2")
    E = minimal_model(curve)
    local_data_table(E)  # fail early if the discriminant cannot be factored
    chunks = split_range(2, X, SCAN_CHUNK)
    args = [(E.ainvs, p, X, a, b) for a, b in chunks]
    total = ScanReport(p, X)
    if workers <= 1 or len(chunks) == 1:
        parts = (_scan_chunk(*arg) for arg in args)
        for i, part in enumerate(parts):
            total = total + part
            if progress:
                progress(i + 1, len(chunks))
        return total
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for i, part in enumerate(pool.map(_scan_chunk, *zip(*args))):
            total = total + part
            if progress:
                progress(i + 1, len(chunks))
    return total


def stderr_progress(label: str) -> Callable[[int, int], None]:
    def report(done, total):
        print(f"{label}: chunk {done}/{total}", file=sys.stderr, flush=True)
    return report


def build_p1_p2(curve: EllipticCurve, p: int, profile: ExtensionProfile):
    """Ramified primes (other than p) of split multiplicative reduction, and of
    good reduction with p | #E(F_q)."""
    E = minimal_model(curve)
    P1, P2 = set(), set()
    for q in profile.sigma:
        data = local_data(E, q)
        if data.reduction_type is ReductionType.SPLIT_MULTIPLICATIVE:
            P1.add(q)
        elif data.reduction_type is ReductionType.GOOD and _count_any(E, q) % p == 0:
            P2.add(q)
    return frozenset(P1), frozenset(P2)


def _count_any(E, q):
    if q == 2:
        # tiny field; enumerate
        a1, a2, a3, a4, a6 = E.ainvs
        return 1 + sum((y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0
                       for x in (0, 1) for y in (0, 1))
    return count_points(E, q)


def build_t_set(curve: EllipticCurve, p: int, profile: ExtensionProfile) -> frozenset:
    """Ramified good primes with p | #E(F_l), plus inert split-multiplicative
    primes with p | c_l."""
    E = minimal_model(curve)
    T = set()
    for ell in profile.ramified_primes:
        if ell == p:
            continue
        data = local_data(E, ell)
        if data.reduction_type is ReductionType.GOOD and _count_any(E, ell) % p == 0:
            T.add(ell)
    for ell in profile.inert_primes:
        if ell == p:
            continue
        data = local_data(E, ell)
        if data.reduction_type is ReductionType.SPLIT_MULTIPLICATIVE and data.tamagawa % p == 0:
            T.add(ell)
    return frozenset(T)
