import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import CORPUS, naive_count, random_curve, trial_division_primes
from ecgrowth.arith import (
    EllipticCurve,
    count_points,
    count_points_bsgs,
    count_points_charsum,
    count_roots_mod_p,
    cubic_splits_completely,
    hasse_bound,
    is_prime,
    is_supersingular,
    legendre_symbol,
    trace_of_frobenius,
    traces_batch,
)
from ecgrowth.errors import BadReductionPrime, CapExceeded, EvenPrime, SingularCurve, SmallPrime
from ecgrowth.primes import primes_up_to

CM = EllipticCurve(0, 0, 0, -1, 0)
C42 = EllipticCurve(0, 0, 0, 0, 42)
E11 = EllipticCurve(0, -1, 1, 0, 0)


def test_invariants_of_11a1():
    E = EllipticCurve(0, -1, 1, -10, -20)
    assert (E.b2, E.b4, E.b6, E.b8) == (-4, -20, -79, -21)
    assert (E.c4, E.c6, E.disc) == (496, 20008, -161051)
    assert 1728 * E.disc == E.c4**3 - E.c6**2


def test_singular_model_rejected():
    with pytest.raises(SingularCurve):
        EllipticCurve(0, 0, 0, 0, 0)
    with pytest.raises(SingularCurve):
        EllipticCurve(0, 0, 0, -3, 2)  # (x - 1)^2 (x + 2)


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 3))
def test_transform_preserves_j(r, s, t, u):
    E = EllipticCurve(1, -1, 1, -1, 0)
    F = E.transform(r=r, s=s, t=t)
    assert F.j_invariant == E.j_invariant
    assert F.disc == E.disc
    scaled = EllipticCurve(*[a * u**k for a, k in zip(F.ainvs, (1, 2, 3, 4, 6))])
    assert scaled.transform(u=u) == F


def test_legendre_examples():
    assert legendre_symbol(0, 7) == 0
    assert legendre_symbol(2, 7) == 1
    assert legendre_symbol(3, 7) == -1


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.sampled_from([3, 5, 7, 101, 7919, 999983]))
def test_legendre_multiplicative_and_euler(a, b, q):
    assert legendre_symbol(a * b, q) == legendre_symbol(a, q) * legendre_symbol(b, q)
    e = pow(a, (q - 1) // 2, q)
    assert legendre_symbol(a, q) == (e if e <= 1 else -1)


def test_is_prime_matches_trial_division():
    small = set(trial_division_primes(20000))
    assert [n for n in range(20001) if is_prime(n)] == sorted(small)
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_point_count_examples():
    assert count_points(CM, 7) == 8
    assert count_points(CM, 31) == 32
    assert count_points(C42, 31) % 5 == 0
    assert count_points(EllipticCurve(0, 0, 0, 0, 1), 5) == naive_count(EllipticCurve(0, 0, 0, 0, 1), 5)
    assert trace_of_frobenius(CM, 7) == 0
    assert abs(trace_of_frobenius(CM, 5)) <= 4
    assert trace_of_frobenius(E11, 7) == 7 + 1 - naive_count(E11, 7)


def test_point_count_errors():
    with pytest.raises(EvenPrime):
        count_points(CM, 2)
    with pytest.raises(BadReductionPrime):
        count_points(E11, 11)
    with pytest.raises(CapExceeded):
        count_points(CM, 10000019)
    with pytest.raises(SmallPrime):
        is_supersingular(CM, 3)


def test_supersingularity_examples():
    assert is_supersingular(CM, 11)
    assert not is_supersingular(CM, 13)
    assert not is_supersingular(C42, 31)


@pytest.mark.parametrize("E", CORPUS[:8], ids=lambda E: E.label or str(E.ainvs))
def test_charsum_matches_naive_small(E):
    for q in primes_up_to(200).tolist()[1:]:
        if E.disc % q:
            assert count_points_charsum(E, q) == naive_count(E, q)


def test_bsgs_matches_charsum_all_small_primes():
    rng = random.Random(7)
    curves = CORPUS[:6] + [random_curve(rng, 10**6) for _ in range(4)]
    for E in curves:
        qs = [q for q in primes_up_to(3000).tolist() if q >= 5 and E.disc % q]
        for q in qs:
            assert count_points_bsgs(E, q) == count_points_charsum(E, q), (E, q)


def test_traces_batch_matches_scalar():
    E = CORPUS[6]
    qs = np.array([q for q in primes_up_to(20000).tolist() if q >= 5 and E.disc % q][::7])
    batch = traces_batch(E, qs)
    for q, a in zip(qs.tolist(), batch.tolist()):
        assert a == q + 1 - count_points_charsum(E, q)


@pytest.mark.parametrize("q", [1009, 10007, 100003, 999983, 9999991])
def test_bsgs_large_primes(q):
    for E in (CM, C42, E11):
        assert count_points_bsgs(E, q) == count_points_charsum(E, q)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(primes_up_to(60000).tolist()[2:]))
def test_hasse_bound_random(seed, q):
    E = random_curve(random.Random(seed))
    if E.disc % q == 0:
        return
    assert abs(trace_of_frobenius(E, q)) <= hasse_bound(q)
    assert hasse_bound(q) == math.floor(2 * math.sqrt(q))


def test_root_counting():
    # x^3 - x splits over F_7; x^3 - 2 has no root since the cubes mod 7 are 0, 1, 6
    assert count_roots_mod_p([0, -1, 0, 1], 7) == 3
    assert count_roots_mod_p([-2, 0, 0, 1], 7) == 0
    for p in (101, 1009):
        rng = random.Random(p)
        for _ in range(30):
            f = [rng.randrange(p) for _ in range(3)] + [1]
            brute = sum((((f[3] * x + f[2]) * x + f[1]) * x + f[0]) % p == 0 for x in range(p))
            assert count_roots_mod_p(f, p) == brute


def test_cubic_splits_completely():
    assert cubic_splits_completely(CM, 7)
    with pytest.raises(EvenPrime):
        cubic_splits_completely(CM, 2)
    # x^3 + 42 has a single root mod 5 (cubing is a bijection there)
    assert not cubic_splits_completely(C42, 5)
    splits = [q for q in primes_up_to(200).tolist()[3:] if C42.disc % q and cubic_splits_completely(C42, q)]
    brute = [q for q in primes_up_to(200).tolist()[3:]
             if C42.disc % q and sum((x**3 + 42) % q == 0 for x in range(q)) == 3]
    assert splits == brute
