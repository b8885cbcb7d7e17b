"""Kida's formula, lambda-stability, the Euler characteristic and a Selmer-growth criterion.

Ranks, Iwasawa invariants and Sha-finiteness cannot be computed here; they
enter as an ``IwasawaAssumptions`` record. Everything that depends only on
reduction data (Kodaira types, point counts at ramified primes) is computed.
"""

from __future__ import annotations

import warnings
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .arith import EllipticCurve, count_points, is_prime
from .classify import build_p1_p2
from .errors import AssumptionViolated, InvalidIndex, NonIntegral, SmallPrime
from .extensions import ExtensionProfile
from .localdata import ReductionType, local_data, minimal_model


@dataclass(frozen=True)
class IwasawaAssumptions:
    rank_zero: bool = False
    torsion_p_trivial: bool = False
    mu_zero: bool = False
    lambda_q: Optional[int] = None
    sha_finite_over_l: bool = False
    good_ordinary_at_p: bool = False
    residual_surjective: bool = False

    def __post_init__(self):
        if self.lambda_q is not None and self.lambda_q < 0:
            raise ValueError("lambda_q must be nonnegative")

    @classmethod
    def all_assumed(cls) -> "IwasawaAssumptions":
        return cls(True, True, True, 0, True, True, True)


def _indices(group) -> list:
    if group is None:
        return []
    if isinstance(group, Mapping):
        return list(group.values())
    return list(group)


def kida_lambda(lambda_q: int, p: int, P1=None, P2=None) -> int:
    """lambda(E/L) = p lambda(E/Q) + sum_{P1} (e - 1) + 2 sum_{P2} (e - 1).

    ``P1`` and ``P2`` are ramification indices, either as an iterable or as
    a mapping prime -> index.
    """
    if p < 5 or not is_prime(p):
        raise SmallPrime("Kida's formula is used for primes p >= 5")
    if lambda_q < 0:
        raise ValueError("lambda_q must be nonnegative")
    e1, e2 = _indices(P1), _indices(P2)
    for e in e1 + e2:
        if e not in (1, p):
            raise InvalidIndex(f"ramification index {e} not in {{1, {p}}}")
    return p * lambda_q + sum(e - 1 for e in e1) + 2 * sum(e - 1 for e in e2)


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    P1: frozenset
    P2: frozenset
    lambda_L: int

    @property
    def jump_primes(self) -> frozenset:
        return self.P1 | self.P2

    @property
    def consequences(self) -> tuple:
        if not self.stable:
            return ()
        return ("mu(E/L) = 0", "lambda(E/L) = 0", "rank E(L) = 0")

    def __str__(self):
        if self.stable:
            return "Stable"
        return "Jump(" + ",".join(map(str, sorted(self.jump_primes))) + ")"


def _require(flag: str, ok: bool, message: str):
    if not ok:
        raise AssumptionViolated(flag, message)


def _check_profile(p, profile):
    if profile.p != p:
        raise ValueError(f"profile has degree {profile.p}, expected {p}")
    _require("disjoint_from_cyclotomic", profile.disjoint_from_cyclotomic,
             "the extension must ramify at some prime other than p")


def lambda_stable(curve: EllipticCurve, p: int, profile: ExtensionProfile,
                  assumptions: IwasawaAssumptions) -> StabilityVerdict:
    """Stable iff no prime of Sigma_L is an enemy prime."""
    if p < 5 or not is_prime(p):
        raise SmallPrime("lambda-stability needs p >= 5")
    _check_profile(p, profile)
    _require("rank_zero", assumptions.rank_zero, "rank E(Q) = 0 is required")
    _require("mu_zero", assumptions.mu_zero, "mu(E/Q) = 0 is required")
    _require("lambda_q", assumptions.lambda_q == 0, "lambda(E/Q) = 0 is required")
    _require("good_ordinary_at_p", assumptions.good_ordinary_at_p, "E must be good ordinary at p")
    P1, P2 = build_p1_p2(curve, p, profile)
    lam = kida_lambda(0, p, [p] * len(P1), [p] * len(P2))
    return StabilityVerdict(not P1 and not P2, P1, P2, lam)


@dataclass(frozen=True)
class EulerComponents:
    p: int
    sha_order_p_part: int = 1
    tamagawa_p_parts: Sequence[int] = ()
    reduction_torsion_p_parts: Sequence[int] = ()
    torsion_p_part: int = 1

    def __post_init__(self):
        values = [self.sha_order_p_part, self.torsion_p_part, *self.tamagawa_p_parts,
                  *self.reduction_torsion_p_parts]
        for v in values:
            if not is_p_power(v, self.p):
                raise ValueError(f"{v} is not a power of {self.p}")


def is_p_power(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def euler_characteristic(components: EulerComponents) -> int:
    """#Sha[p^inf] * prod c_v^(p) * prod_{v|p} #E~(k_v)[p^inf]^2 / #E(L)[p^inf]^2."""
    num = components.sha_order_p_part
    for c in components.tamagawa_p_parts:
        num *= c
    for r in components.reduction_torsion_p_parts:
        num *= r * r
    den = components.torsion_p_part ** 2
    if num % den:
        raise NonIntegral(f"{num}/{den} is not an integer; the components are inconsistent")
    return num // den


def chi_one_equivalence(mu_zero: bool, lambda_zero: bool) -> bool:
    """chi = 1 exactly when mu = lambda = 0 (under rank 0, good ordinary, Sha finite)."""
    return bool(mu_zero and lambda_zero)


@dataclass(frozen=True)
class SelmerGrowthVerdict:
    met: bool
    reasons: tuple = ()
    witnesses: frozenset = frozenset()
    checks: dict = field(default_factory=dict, compare=False)
    notes: tuple = ()

    @property
    def name(self) -> str:
        return "SelmerBecomesNonzero" if self.met else "CriterionNotMet"

    @property
    def certified(self) -> tuple:
        """Facts that follow whenever the hypotheses hold."""
        if not self.met:
            return ()
        return ("Sel_p^inf(E/Q) = Sha(E/Q)[p^inf] = 0", "rank E(L) > 0 or Sha(E/L)[p^inf] != 0")

    def __str__(self):
        if self.met:
            return self.name
        return f"{self.name}({';'.join(self.reasons)})"


def lkr_check(curve: EllipticCurve, p: int, profile: ExtensionProfile,
              assumptions: IwasawaAssumptions) -> SelmerGrowthVerdict:
    """Whether the hypotheses forcing Sel_{p^inf}(E/L) != 0 hold.

    Hypotheses (i), (ii), (v) are read from ``assumptions`` and raise
    AssumptionViolated when absent; (iii) and (iv) are computed at the
    ramified primes and reported through reason codes.
    """
    if p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    _check_profile(p, profile)
    _require("rank_zero", assumptions.rank_zero, "(i) rank E(Q) = 0")
    _require("torsion_p_trivial", assumptions.torsion_p_trivial, "(i) E(Q)[p^inf] = 0")
    _require("mu_zero", assumptions.mu_zero, "(ii) mu(E/Q) = 0")
    _require("lambda_q", assumptions.lambda_q == 0, "(ii) lambda(E/Q) = 0")
    _require("sha_finite_over_l", assumptions.sha_finite_over_l, "(v) Sha(E/L)[p^inf] finite")
    _require("good_ordinary_at_p", assumptions.good_ordinary_at_p, "E must be good ordinary at p")

    notes = []
    if p == 3:
        msg = "p = 3: Kida's formula, used in the argument, is stated for p >= 5"
        warnings.warn(msg)
        notes.append(msg)
    E = minimal_model(curve)
    if E.disc % p == 0:
        notes.append(f"E has bad reduction at p = {p}, contradicting the ordinarity assumption")
    elif p >= 5 and (p + 1 - count_points(E, p)) % p == 0:
        notes.append(f"a_{p} = 0 mod {p}: E is not ordinary at p, contradicting the assumption")

    witnesses, multiplicative, checks = set(), [], {}
    for ell in profile.sigma:
        data = local_data(E, ell)
        entry = {"ell_mod_p": ell % p, "reduction": data.reduction_type.value,
                 "kodaira": str(data.kodaira)}
        if data.reduction_type is ReductionType.GOOD:
            n = count_points(E, ell)
            entry["count"] = n
            if n % p == 0:
                witnesses.add(ell)
        elif data.kodaira.is_multiplicative:
            multiplicative.append(ell)
        checks[ell] = entry

    reasons = []
    if not witnesses:
        reasons.append("iii:no_good_ramified_prime_with_p_dividing_count")
    for ell in multiplicative:
        reasons.append(f"iv:kodaira_I_m_at_{ell}")
    return SelmerGrowthVerdict(not reasons, tuple(reasons), frozenset(witnesses), checks, tuple(notes))
