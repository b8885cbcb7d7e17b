"""Prime-field arithmetic for elliptic curves over Q.

Point counting has two independent routes:

* a character sum ``sum_x (1 + chi(f(x)))`` over the completed-square
  model, O(q) per prime and vectorised with numpy;
* a baby-step giant-step search with Mestre's twist argument, roughly
  O(q^(1/4)) group operations per prime, used for the prime scans.

``count_points`` picks between them; both are exposed for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _bsgs
from .errors import BadReductionPrime, CapExceeded, EvenPrime, SingularCurve, SmallPrime

#: Largest prime for which point counts are produced.
POINT_COUNT_CAP = 10**7
#: Below this size the character sum is cheaper than BSGS.
CHARSUM_THRESHOLD = 1000


@dataclass(frozen=True)
class EllipticCurve:
    """Integral Weierstrass model ``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    label: Optional[str] = field(default=None, compare=False)

    b2: int = field(init=False, repr=False)
    b4: int = field(init=False, repr=False)
    b6: int = field(init=False, repr=False)
    b8: int = field(init=False, repr=False)
    c4: int = field(init=False, repr=False)
    c6: int = field(init=False, repr=False)
    disc: int = field(init=False, repr=False)

    def __post_init__(self):
        a1, a2, a3, a4, a6 = (int(v) for v in self.ainvs)
        b2 = a1 * a1 + 4 * a2
        b4 = a1 * a3 + 2 * a4
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc == 0:
            raise SingularCurve(f"singular model {list(self.ainvs)}")
        assert 1728 * disc == c4 ** 3 - c6 ** 2
        for name, value in zip(("b2", "b4", "b6", "b8", "c4", "c6", "disc"),
                               (b2, b4, b6, b8, c4, c6, disc)):
            object.__setattr__(self, name, value)

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @classmethod
    def from_ainvs(cls, ainvs, label=None) -> "EllipticCurve":
        ainvs = [int(a) for a in ainvs]
        if len(ainvs) == 2:
            ainvs = [0, 0, 0] + ainvs
        if len(ainvs) != 5:
            raise ValueError("expected 2 or 5 Weierstrass coefficients")
        return cls(*ainvs, label=label)

    @property
    def j_invariant(self) -> Fraction:
        return Fraction(self.c4 ** 3, self.disc)

    def transform(self, r=0, s=0, t=0, u=1) -> "EllipticCurve":
        """Apply ``x = u^2 x' + r, y = u^3 y' + s u^2 x' + t``.

        The result must be integral; a non-integral change raises ValueError.
        """
        a1, a2, a3, a4, a6 = self.ainvs
        n1 = a1 + 2 * s
        n2 = a2 - s * a1 + 3 * r - s * s
        n3 = a3 + r * a1 + 2 * t
        n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
        n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
        out = []
        for k, value in zip((1, 2, 3, 4, 6), (n1, n2, n3, n4, n6)):
            quo, rem = divmod(value, u ** k)
            if rem:
                raise ValueError("coordinate change leaves a non-integral model")
            out.append(quo)
        return EllipticCurve(*out, label=self.label)

    def __str__(self):
        eq = " ".join(str(a) for a in self.ainvs)
        return f"{self.label} [{eq}]" if self.label else f"[{eq}]"


# ---------------------------------------------------------------------------
# residue symbols and small number theory


def legendre_symbol(a: int, q: int) -> int:
    """Quadratic residue symbol of ``a`` modulo the odd prime ``q``."""
    if q <= 2 or q % 2 == 0:
        raise ValueError("modulus must be an odd prime")
    a %= q
    if a == 0:
        return 0
    # Jacobi reciprocity; equals the Legendre symbol for prime q.
    result = 1
    n, m = a, q
    while n:
        while n % 2 == 0:
            n //= 2
            if m % 8 in (3, 5):
                result = -result
        n, m = m, n
        if n % 4 == 3 and m % 4 == 3:
            result = -result
        n %= m
    return result if m == 1 else 0


def quadratic_character_table(q: int) -> np.ndarray:
    """``chi[a]`` for every residue ``a`` mod ``q`` as an int8 array."""
    chi = np.full(q, -1, dtype=np.int8)
    x = np.arange(1, (q + 1) // 2, dtype=np.int64)
    chi[(x * x) % q] = 1
    chi[0] = 0
    return chi


_SMALL_PRIMES_FOR_MR = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES_FOR_MR:
        if n % p == 0:
            return n == p
    if n >= 3317044064679887385961981:
        raise CapExceeded("primality test limited to n < 3.3e24")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES_FOR_MR:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_good_odd(curve: EllipticCurve, q: int):
    if q == 2:
        raise EvenPrime("characteristic 2 is not supported")
    if q < 2 or not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if curve.disc % q == 0:
        raise BadReductionPrime(f"{q} divides the discriminant of {curve}")


def _completed_cubic(curve: EllipticCurve, q: int):
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    return (4 % q, curve.b2 % q, (2 * curve.b4) % q, curve.b6 % q)


# ---------------------------------------------------------------------------
# point counting


def count_points_charsum(curve: EllipticCurve, q: int) -> int:
    """#E(F_q) via the quadratic character sum over the completed cubic."""
    _check_good_odd(curve, q)
    if q > POINT_COUNT_CAP:
        raise CapExceeded(f"character sum limited to q <= {POINT_COUNT_CAP}")
    c3, c2, c1, c0 = _completed_cubic(curve, q)
    x = np.arange(q, dtype=np.int64)
    f = (c3 * x + c2) % q
    f = (f * x + c1) % q
    f = (f * x + c0) % q
    chi = quadratic_character_table(q)
    return q + 1 + int(chi[f].sum(dtype=np.int64))


def count_points_bsgs(curve: EllipticCurve, q: int) -> int:
    """#E(F_q) by baby-step giant-step on E and its quadratic twist.

    Requires q >= 5. Works on the isomorphic model y^2 = x^3 - 27 c4 x - 54 c6.
    Points are taken on twists by d = f(x0), which are E itself when d is a
    square and the quadratic twist otherwise, so no square roots are needed;
    the search stops once a single group order in the Hasse interval is
    compatible with both (Mestre).
    """
    _check_good_odd(curve, q)
    if q < 5:
        raise SmallPrime("BSGS counting needs q >= 5")
    if q > POINT_COUNT_CAP:
        raise CapExceeded(f"point counting limited to q <= {POINT_COUNT_CAP}")
    n = int(_bsgs.count_short(-27 * curve.c4 % q, -54 * curve.c6 % q, q))
    # Mestre's argument can fail only for q <= 229
    return n if n > 0 else count_points_charsum(curve, q)


def traces_batch(curve: EllipticCurve, qs) -> np.ndarray:
    """a_q for an array of odd primes of good reduction (no validation per prime)."""
    qs = np.asarray(qs, dtype=np.int64)
    if qs.size and int(qs.max()) > POINT_COUNT_CAP:
        raise CapExceeded(f"point counting limited to q <= {POINT_COUNT_CAP}")
    c4, c6 = curve.c4, curve.c6
    A = np.fromiter(((-27 * c4) % int(q) for q in qs), dtype=np.int64, count=qs.size)
    B = np.fromiter(((-54 * c6) % int(q) for q in qs), dtype=np.int64, count=qs.size)
    counts = _bsgs.count_short_batch(A, B, qs)
    for i in np.flatnonzero((counts <= 0) | (qs < CHARSUM_THRESHOLD)):
        counts[i] = count_points_charsum(curve, int(qs[i]))
    return qs + 1 - counts


def count_points(curve: EllipticCurve, q: int, method: str = "auto") -> int:
    """#E~(F_q) for an odd prime q of good reduction (point at infinity included).

    ``method`` is ``"auto"``, ``"charsum"`` or ``"bsgs"``.
    """
    if method == "charsum":
        return count_points_charsum(curve, q)
    if method == "bsgs":
        return count_points_bsgs(curve, q)
    if method != "auto":
        raise ValueError(f"unknown counting method {method!r}")
    if q < CHARSUM_THRESHOLD:
        return count_points_charsum(curve, q)
    return count_points_bsgs(curve, q)


def trace_of_frobenius(curve: EllipticCurve, q: int, method: str = "auto") -> int:
    return q + 1 - count_points(curve, q, method)


def is_supersingular(curve: EllipticCurve, q: int) -> bool:
    """True iff a_q = 0; only meaningful as a supersingularity test for q >= 5."""
    if q in (2, 3):
        raise SmallPrime("a_q = 0 does not characterise supersingularity for q < 5")
    return trace_of_frobenius(curve, q) == 0


# ---------------------------------------------------------------------------
# polynomials over F_q (coefficient lists, lowest degree first)


def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _polymod(f, g, q):
    f = list(f)
    inv = pow(g[-1], -1, q)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        coef = f[-1] * inv % q
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - coef * gi) % q
        _trim(f)
    return f


def _polymulmod(f, g, mod, q):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] = (out[i + j] + fi * gj) % q
    return _polymod(_trim(out), mod, q)


def _polygcd(f, g, q):
    f, g = _trim(list(f)), _trim(list(g))
    while g:
        f, g = g, _polymod(f, g, q)
    return f


def count_roots_mod_p(coeffs, p: int) -> int:
    """Number of distinct roots in F_p of the polynomial with the given coefficients.

    ``coeffs`` runs from the constant term upward.
    """
    f = _trim([c % p for c in coeffs])
    if not f:
        raise ValueError("zero polynomial")
    if len(f) == 1:
        return 0
    if p < 64:
        return sum(1 for x in range(p)
                   if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0)
    # gcd(f, x^p - x) collects the distinct linear factors
    xp, base, e = [1], [0, 1], p
    base = _polymod(base, f, p)
    while e:
        if e & 1:
            xp = _polymulmod(xp, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    xp = xp + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    return len(_polygcd(f, _trim(xp), p)) - 1


def two_torsion_cubic(curve: EllipticCurve):
    """Coefficients (constant first) of 4x^3 + b2 x^2 + 2 b4 x + b6."""
    return [curve.b6, 2 * curve.b4, curve.b2, 4]


def cubic_splits_completely(curve: EllipticCurve, q: int) -> bool:
    """True iff Frobenius at q acts trivially on E[2], i.e. the 2-division cubic has three roots mod q."""
    _check_good_odd(curve, q)
    return count_roots_mod_p(two_torsion_cubic(curve), q) == 3


def hasse_bound(q: int) -> int:
    """floor(2 sqrt q)."""
    return math.isqrt(4 * q)
