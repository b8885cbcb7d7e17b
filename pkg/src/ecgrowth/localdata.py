"""Local reduction data via Tate's algorithm.

The implementation follows the usual loop formulation (Silverman, Advanced
Topics IV.9; Cohen, Algorithm 7.5.1) and handles every prime including 2
and 3. Each pass either terminates with a Kodaira symbol or divides out a
factor of ``l`` from the model, so the returned model is minimal at ``l``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional

from .arith import EllipticCurve, count_roots_mod_p, is_prime, legendre_symbol
from .errors import CapExceeded, NotMultiplicative, SmallPrime, WildRamification, InvalidIndex
from .primes import small_primes

FACTOR_BOUND = 10**7


class ReductionType(enum.Enum):
    GOOD = "good"
    SPLIT_MULTIPLICATIVE = "split_multiplicative"
    NONSPLIT_MULTIPLICATIVE = "nonsplit_multiplicative"
    ADDITIVE = "additive"

    @property
    def is_multiplicative(self):
        return self in (ReductionType.SPLIT_MULTIPLICATIVE, ReductionType.NONSPLIT_MULTIPLICATIVE)


class Splitting(enum.Enum):
    SPLIT = "split"
    NONSPLIT = "nonsplit"


@dataclass(frozen=True)
class KodairaSymbol:
    """``family`` is one of I, II, III, IV, I*, II*, III*, IV*; ``n`` indexes I_n and I_n*."""

    family: str
    n: int = 0

    def __str__(self):
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family

    @classmethod
    def parse(cls, text: str) -> "KodairaSymbol":
        text = text.strip()
        if text in ("II", "III", "IV", "II*", "III*", "IV*"):
            return cls(text)
        if text.startswith("I"):
            star = text.endswith("*")
            n = int(text[1:-1] if star else text[1:])
            return cls("I*" if star else "I", n)
        raise ValueError(f"unknown Kodaira symbol {text!r}")

    @property
    def is_multiplicative(self):
        """True for I_m with m >= 1."""
        return self.family == "I" and self.n >= 1


I0 = KodairaSymbol("I", 0)


@dataclass(frozen=True)
class LocalReductionData:
    prime: int
    reduction_type: ReductionType
    kodaira: KodairaSymbol
    tamagawa: Optional[int]
    conductor_exponent: int
    v_disc_min: int
    model: Optional[EllipticCurve] = field(default=None, compare=False, repr=False)

    def tamagawa_p_part(self, p: int) -> int:
        """Largest power of p dividing the Tamagawa number.

        When the exact number is unknown (some tame base changes) it is an
        additive type with c <= 4, whose p-part is 1 for p >= 5.
        """
        if self.tamagawa is None:
            if p < 5:
                raise ValueError("Tamagawa number unknown")
            return 1
        c, out = self.tamagawa, 1
        while c % p == 0:
            c //= p
            out *= p
        return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _exact(n, d):
    q, r = divmod(n, d)
    assert r == 0, "Tate's algorithm invariant broken"
    return q


def _quadratic_has_root(a, b, c, p):
    """Whether a T^2 + b T + c has a root in F_p."""
    a, b, c = a % p, b % p, c % p
    if p == 2:
        return any((a * t * t + b * t + c) % 2 == 0 for t in (0, 1))
    if a == 0:
        return b != 0 or c == 0
    return legendre_symbol(b * b - 4 * a * c, p) >= 0


def tate_algorithm(curve: EllipticCurve, p: int) -> LocalReductionData:
    """Reduction type, Kodaira symbol, Tamagawa number and conductor exponent at ``p``."""
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    E = curve
    while True:
        vd = valuation(E.disc, p)
        if vd == 0:
            return LocalReductionData(p, ReductionType.GOOD, I0, 1, 0, 0, E)
        a1, a2, a3, a4, a6 = E.ainvs
        b2, b4, b6 = E.b2, E.b4, E.b6
        # move the singular point of the reduction to (0, 0)
        if p == 2:
            if b2 % 2 == 0:
                r = a4 % 2
                t = (r * (1 + a2 + a4) + a6) % 2
            else:
                r = a3 % 2
                t = (a4 + r) % 2
        elif p == 3:
            r = (-b6) % 3 if b2 % 3 == 0 else (-b2 * b4) % 3
            t = (a1 * r + a3) % 3
        else:
            if E.c4 % p == 0:
                r = -pow(12, -1, p) * b2 % p
            else:
                r = -pow(12 * E.c4, -1, p) * (E.c6 + b2 * E.c4) % p
            t = -pow(2, -1, p) * (a1 * r + a3) % p
        E = E.transform(r=r, t=t)
        a1, a2, a3, a4, a6 = E.ainvs
        assert a3 % p == 0 and a4 % p == 0 and a6 % p == 0

        if E.c4 % p != 0:
            if _quadratic_has_root(1, a1, -a2, p):
                rt, c = ReductionType.SPLIT_MULTIPLICATIVE, vd
            else:
                rt, c = ReductionType.NONSPLIT_MULTIPLICATIVE, 2 - vd % 2
            return LocalReductionData(p, rt, KodairaSymbol("I", vd), c, 1, vd, E)

        add = ReductionType.ADDITIVE
        if valuation(a6, p) < 2:
            return LocalReductionData(p, add, KodairaSymbol("II"), 1, vd, vd, E)
        if valuation(E.b8, p) < 3:
            return LocalReductionData(p, add, KodairaSymbol("III"), 2, vd - 1, vd, E)
        if valuation(E.b6, p) < 3:
            c = 3 if _quadratic_has_root(1, a3 // p, -(a6 // p**2), p) else 1
            return LocalReductionData(p, add, KodairaSymbol("IV"), c, vd - 2, vd, E)

        # now arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s, t = a2 % 2, 2 * ((a6 // 4) % 2)
        elif p == 3:
            s, t = a1, a3
        else:
            h = pow(2, -1, p)
            s, t = -a1 * h, -a3 * h
        E = E.transform(s=s, t=t)
        a1, a2, a3, a4, a6 = E.ainvs
        b, c, d = _exact(a2, p), _exact(a4, p**2), _exact(a6, p**3)
        w = 27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3
        x = 3 * c - b * b

        if w % p != 0:
            cp = 1 + count_roots_mod_p([d, c, b, 1], p)
            return LocalReductionData(p, add, KodairaSymbol("I*", 0), cp, vd - 4, vd, E)

        if x % p != 0:
            # double root: translate it to T = 0, then alternate y- and x-shifts
            if p == 2:
                r = c % 2
            elif p == 3:
                r = b * c % 3
            else:
                r = (b * c - 9 * d) * pow(2 * x, -1, p) % p
            E = E.transform(r=p * r)
            ix = iy = 3
            mx = my = p * p
            while True:
                a1, a2, a3, a4, a6 = E.ainvs
                a2t, a3t = _exact(a2, p), _exact(a3, my)
                a4t, a6t = _exact(a4, p * mx), _exact(a6, mx * my)
                if (a3t * a3t + 4 * a6t) % p:
                    cp = 4 if _quadratic_has_root(1, a3t, -a6t, p) else 2
                    break
                tt = a6t % 2 if p == 2 else -a3t * pow(2, -1, p) % p
                E = E.transform(t=my * tt)
                my *= p
                iy += 1
                a1, a2, a3, a4, a6 = E.ainvs
                a2t, a3t = _exact(a2, p), _exact(a3, my)
                a4t, a6t = _exact(a4, p * mx), _exact(a6, mx * my)
                if (a4t * a4t - 4 * a6t * a2t) % p:
                    cp = 4 if _quadratic_has_root(a2t, a4t, a6t, p) else 2
                    break
                rr = a6t % 2 if p == 2 else -a4t * pow(2 * a2t, -1, p) % p
                E = E.transform(r=mx * rr)
                mx *= p
                ix += 1
            m = ix + iy - 5
            return LocalReductionData(p, add, KodairaSymbol("I*", m), cp, vd - m - 4, vd, E)

        # triple root
        if p == 2:
            r = b % 2
        elif p == 3:
            r = -d % 3
        else:
            r = -b * pow(3, -1, p) % p
        E = E.transform(r=p * r)
        a1, a2, a3, a4, a6 = E.ainvs
        a3t, a6t = _exact(a3, p**2), _exact(a6, p**4)
        if (a3t * a3t + 4 * a6t) % p:
            cp = 3 if _quadratic_has_root(1, a3t, -a6t, p) else 1
            return LocalReductionData(p, add, KodairaSymbol("IV*"), cp, vd - 6, vd, E)
        tt = a6t % 2 if p == 2 else -a3t * pow(2, -1, p) % p
        E = E.transform(t=p * p * tt)
        a1, a2, a3, a4, a6 = E.ainvs
        if valuation(a4, p) < 4:
            return LocalReductionData(p, add, KodairaSymbol("III*"), 2, vd - 7, vd, E)
        if valuation(a6, p) < 6:
            return LocalReductionData(p, add, KodairaSymbol("II*"), 1, vd - 8, vd, E)
        # the model was not minimal at p
        E = E.transform(u=p)


def factor_integer(n: int, bound: int = FACTOR_BOUND) -> dict:
    """Prime factorisation of ``|n|`` by trial division up to ``bound``.

    A cofactor left after trial division is accepted only when it is
    provably prime; otherwise CapExceeded is raised.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    limit = min(math.isqrt(n), bound)
    for p in _trial_primes(limit):
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if n > bound * bound and not is_prime(n):
            raise CapExceeded(f"cofactor {n} has no factor below {bound}")
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=8)
def _trial_primes_cached(limit):
    return small_primes(limit)


def _trial_primes(limit):
    # round up so repeated calls share a cache entry
    size = 1 << max(10, int(limit).bit_length())
    return _trial_primes_cached(min(size, FACTOR_BOUND))


def bad_primes(curve: EllipticCurve) -> list:
    return sorted(factor_integer(curve.disc))


def _from_c4c6(c4, c6, label):
    b2 = -c6 % 12
    if b2 > 6:
        b2 -= 12
    b4 = (b2 * b2 - c4) // 24
    b6 = (-b2**3 + 36 * b2 * b4 - c6) // 216
    a1, a3 = b2 % 2, b6 % 2
    return EllipticCurve(a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4, label=label)


@lru_cache(maxsize=256)
def minimal_model(curve: EllipticCurve) -> EllipticCurve:
    """A global minimal model in reduced form (a1, a3 in {0, 1}, a2 in {-1, 0, 1})."""
    E = curve
    for p, e in factor_integer(curve.disc).items():
        if e >= 12:
            E = tate_algorithm(E, p).model
    try:
        R = _from_c4c6(E.c4, E.c6, curve.label)
    except Exception:
        return E
    return R if (R.c4, R.c6) == (E.c4, E.c6) else E


@lru_cache(maxsize=256)
def local_data_table(curve: EllipticCurve) -> dict:
    """Local data at every prime dividing the discriminant of ``curve``, keyed by prime."""
    return {p: tate_algorithm(curve, p) for p in bad_primes(curve)}


def local_data(curve: EllipticCurve, p: int) -> LocalReductionData:
    table = local_data_table(curve)
    return table[p] if p in table else tate_algorithm(curve, p)


def conductor(curve: EllipticCurve) -> int:
    N = 1
    for p, data in local_data_table(curve).items():
        N *= p ** data.conductor_exponent
    return N


def split_vs_nonsplit(curve: EllipticCurve, p: int) -> Splitting:
    data = tate_algorithm(curve, p)
    if data.reduction_type is ReductionType.SPLIT_MULTIPLICATIVE:
        return Splitting.SPLIT
    if data.reduction_type is ReductionType.NONSPLIT_MULTIPLICATIVE:
        return Splitting.NONSPLIT
    raise NotMultiplicative(f"{curve} has {data.reduction_type.value} reduction at {p}")


_POT_GOOD_BY_VDISC = {0: I0, 2: KodairaSymbol("II"), 3: KodairaSymbol("III"), 4: KodairaSymbol("IV"),
                      6: KodairaSymbol("I*", 0), 8: KodairaSymbol("IV*"), 9: KodairaSymbol("III*"),
                      10: KodairaSymbol("II*")}
_FIXED_TAMAGAWA = {"II": 1, "II*": 1, "III": 2, "III*": 2}


def base_change_kodaira(data: LocalReductionData, e: int, p: int) -> LocalReductionData:
    """Local data over a tame extension of ramification index ``e`` in ``{1, p}``.

    I_m becomes I_{me} (split stays split, non-split stays non-split since
    the residue field does not grow). Additive types are tracked through the
    valuation of the minimal discriminant, valid for residue characteristic
    at least 5; when the exact Tamagawa number is not determined it is left
    as None, and its p-part is 1 regardless.
    """
    ell = data.prime
    if ell == p:
        raise WildRamification(f"{ell} is wildly ramified in a degree-{p} extension")
    if e not in (1, p):
        raise InvalidIndex(f"ramification index {e} not in {{1, {p}}}")
    if e == 1:
        return data
    if p < 5:
        raise SmallPrime("tame base change is modelled for p >= 5 only")
    rt = data.reduction_type
    if rt is ReductionType.GOOD:
        return replace(data, model=None)
    if rt.is_multiplicative:
        m = data.kodaira.n * e
        c = m if rt is ReductionType.SPLIT_MULTIPLICATIVE else 2 - m % 2
        return LocalReductionData(ell, rt, KodairaSymbol("I", m), c, 1, m)
    if ell < 5:
        raise ValueError("additive base change is modelled for residue characteristic >= 5")
    if data.kodaira.family == "I*" and data.kodaira.n > 0:
        # potentially multiplicative; e odd keeps the twist
        m = data.kodaira.n * e
        return LocalReductionData(ell, rt, KodairaSymbol("I*", m), None, 2, data.v_disc_min * e)
    v = data.v_disc_min * e % 12
    kod = _POT_GOOD_BY_VDISC[v]
    if kod == I0:
        return LocalReductionData(ell, ReductionType.GOOD, I0, 1, 0, 0)
    return LocalReductionData(ell, rt, kod, _FIXED_TAMAGAWA.get(kod.family), 2, v)
