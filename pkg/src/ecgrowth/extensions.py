"""Z/pZ-extensions of Q described by their ramification data.

A cyclic degree-p extension can only ramify at p and at primes q = 1 mod p,
and each ramified prime has index p. An extension ramified only at p sits
inside the cyclotomic Z_p-tower, so profiles of interest here carry at
least one ramified q != p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet

from .arith import is_prime
from .errors import EmptyRamification, NoSuchExtension
from .primes import primes_up_to


@dataclass(frozen=True)
class ExtensionProfile:
    p: int
    ramified_primes: FrozenSet[int] = frozenset()
    p_ramified: bool = False
    # residue behaviour of unramified primes, used only for T-set bookkeeping
    inert_primes: FrozenSet[int] = field(default=frozenset(), compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"degree {self.p} is not prime")
        object.__setattr__(self, "ramified_primes", frozenset(int(q) for q in self.ramified_primes))
        object.__setattr__(self, "inert_primes", frozenset(int(q) for q in self.inert_primes))
        for q in self.ramified_primes:
            if q == self.p:
                raise ValueError("list p-ramification via p_ramified, not ramified_primes")
            if not is_prime(q):
                raise ValueError(f"{q} is not prime")
            if q % self.p != 1:
                raise NoSuchExtension(f"{q} cannot ramify in a Z/{self.p}Z-extension ({q} != 1 mod {self.p})")
        if self.inert_primes & self.ramified_primes:
            raise ValueError("a prime cannot be both inert and ramified")

    @property
    def disjoint_from_cyclotomic(self) -> bool:
        return bool(self.ramified_primes)

    def ramification_index(self, ell: int) -> int:
        if ell in self.ramified_primes or (ell == self.p and self.p_ramified):
            return self.p
        return 1

    @property
    def sigma(self) -> list:
        """Ramified primes other than p, sorted."""
        return sorted(self.ramified_primes)

    def conductor(self) -> int:
        f = 1
        for q in self.ramified_primes:
            f *= q
        if self.p_ramified:
            f *= self.p**2
        return f


def unique_extension_of_conductor_q(p: int, q: int) -> ExtensionProfile:
    """The degree-p subfield of Q(mu_q), which exists iff q = 1 mod p."""
    if not is_prime(q) or q % p != 1:
        raise NoSuchExtension(f"no Z/{p}Z-extension has conductor {q}")
    return ExtensionProfile(p, frozenset({q}))


def discriminant(profile: ExtensionProfile) -> int:
    if not profile.ramified_primes:
        raise EmptyRamification("profile has no ramified primes other than p")
    p = profile.p
    d = 1
    for q in profile.ramified_primes:
        d *= q ** (p - 1)
    if profile.p_ramified:
        d *= p ** (2 * (p - 1))
    return d


def enumerate_conductors(p: int, X: int) -> list:
    """Conductors <= X of Z/pZ-extensions not contained in the cyclotomic tower.

    These are squarefree products of primes q = 1 mod p, optionally times p^2.
    """
    if X < 1:
        raise ValueError("X must be at least 1")
    qs = primes_up_to(X, p, 1).tolist() if X >= 2 else []
    out = []

    def extend(start, value):
        for i in range(start, len(qs)):
            v = value * qs[i]
            if v > X:
                break
            out.append(v)
            extend(i + 1, v)

    extend(0, 1)
    out += [p * p * n for n in list(out) if p * p * n <= X]
    return sorted(out)
