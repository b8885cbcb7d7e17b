"""Compiled baby-step giant-step point counting on short Weierstrass models.

All arithmetic is int64; callers guarantee q <= POINT_COUNT_CAP so every
product of two residues fits.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _inv(a, q):
    a %= q
    r0, r1, s0, s1 = q, a, 0, 1
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    return s0 % q


@njit(cache=True)
def _add(x1, y1, o1, x2, y2, o2, a, q):
    # o* flags the point at infinity
    if o1:
        return x2, y2, o2
    if o2:
        return x1, y1, o1
    if x1 == x2:
        if (y1 + y2) % q == 0:
            return 0, 0, True
        lam = (3 * x1 % q * x1 + a) % q * _inv(2 * y1, q) % q
    else:
        lam = (y2 - y1) % q * _inv(x2 - x1, q) % q
    x3 = (lam * lam - x1 - x2) % q
    y3 = (lam * ((x1 - x3) % q) - y1) % q
    return x3, y3, False


@njit(cache=True)
def _mul(k, x, y, o, a, q):
    rx, ry, ro = 0, 0, True
    while k > 0:
        if k & 1:
            rx, ry, ro = _add(rx, ry, ro, x, y, o, a, q)
        x, y, o = _add(x, y, o, x, y, o, a, q)
        k >>= 1
    return rx, ry, ro


@njit(cache=True)
def _isqrt(n):
    r = np.int64(np.sqrt(np.float64(n)))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(cache=True)
def _point_order(x, y, a, q, lo, hi):
    step = _isqrt(hi - lo) + 1
    size = 1
    while size < 4 * step:
        size *= 2
    table = np.zeros(size, dtype=np.int64)   # stores j + 1, 0 = empty
    bx = np.zeros(step, dtype=np.int64)
    by = np.zeros(step, dtype=np.int64)
    bo = np.zeros(step, dtype=np.bool_)
    rx, ry, ro = 0, 0, True
    for j in range(step):
        bx[j], by[j], bo[j] = rx, ry, ro
        h = (rx * 2654435761 + (1 if ro else 0)) & (size - 1)
        while table[h] != 0:
            h = (h + 1) & (size - 1)
        table[h] = j + 1
        rx, ry, ro = _add(rx, ry, ro, x, y, False, a, q)
    gx, gy, go = _mul(lo, x, y, False, a, q)
    sx, sy, so = _mul(step, x, y, False, a, q)
    m = -1
    for i in range(step + 1):
        # look for j with jP = -G
        tx, ty, to = gx, (q - gy) % q, go
        h = (tx * 2654435761 + (1 if to else 0)) & (size - 1)
        while table[h] != 0:
            j = table[h] - 1
            if bo[j] == to and (to or (bx[j] == tx and by[j] == ty)):
                m = lo + i * step + j
                break
            h = (h + 1) & (size - 1)
        if m >= 0:
            break
        gx, gy, go = _add(gx, gy, go, sx, sy, so, a, q)
    if m < 0:
        return -1
    n = m
    d = 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            while m % d == 0:
                _, _, o = _mul(m // d, x, y, False, a, q)
                if not o:
                    break
                m //= d
        d += 1
    if n > 1:
        _, _, o = _mul(m // n, x, y, False, a, q)
        if o:
            m //= n
    return m


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _unique_candidate(le, lt, q, lo, hi):
    """Return (count capped at 2, first) of n in [lo, hi] with le | n and lt | 2q+2-n."""
    c = (2 * q + 2) % lt
    g = _gcd(le, lt)
    if c % g != 0:
        return 0, -1
    lt_g = lt // g
    k = 0
    if lt_g > 1:
        k = (c // g) % lt_g * _inv((le // g) % lt_g, lt_g) % lt_g
    step = le * lt_g
    n0 = le * k
    first = n0 + ((lo - n0 + step - 1) // step) * step
    if first > hi:
        return 0, -1
    if first + step <= hi:
        return 2, first
    return 1, first


@njit(cache=True)
def count_short(A, B, q):
    """#E(F_q) for y^2 = x^3 + A x + B, q >= 5 prime; -1 if undecided."""
    r = _isqrt(4 * q)
    lo = q + 1 - r
    hi = q + 1 + r
    le = 1
    lt = 1
    x0 = 0
    while x0 < q:
        cnt, first = _unique_candidate(le, lt, q, lo, hi)
        if cnt == 1:
            return first
        if cnt == 0:
            return -1
        d = ((x0 * x0 % q) * x0 + A * x0 + B) % q
        if d != 0:
            a_tw = A * d % q * d % q
            order = _point_order(x0 * d % q, d * d % q, a_tw, q, lo, hi)
            if order < 0:
                return -1
            e = (q - 1) // 2
            base, res = d, 1
            while e:
                if e & 1:
                    res = res * base % q
                base = base * base % q
                e >>= 1
            if res == 1:
                le = le // _gcd(le, order) * order
            else:
                lt = lt // _gcd(lt, order) * order
        x0 += 1
    return -1


@njit(cache=True)
def count_short_batch(A, B, qs):
    out = np.empty(qs.shape[0], dtype=np.int64)
    for i in range(qs.shape[0]):
        out[i] = count_short(A[i], B[i], qs[i])
    return out
