import math

import pytest
from hypothesis import given, strategies as st

from ecgrowth.arith import EllipticCurve
from ecgrowth.errors import CapExceeded, DomainError, InvalidTorsionRank
from ecgrowth.matsuno import (
    asymptotic_conductor_estimate,
    galois_degree_2_division,
    logarithmic_integral,
    matsuno_plan,
    p_rank_equation,
    pick_split_primes,
    selmer_rank_lower_bound,
    sha_two_rank_lower_bound,
)
from ecgrowth.primes import primes_up_to

CM = EllipticCurve(0, 0, 0, -1, 0)
E11 = EllipticCurve(0, -1, 1, 0, 0)


def test_rank_bounds():
    assert p_rank_equation(1, 2, 3) == 6
    with pytest.raises(InvalidTorsionRank):
        p_rank_equation(0, 3, 0)
    assert selmer_rank_lower_bound(3) == 0 and selmer_rank_lower_bound(10) == 6
    assert sha_two_rank_lower_bound(8, 1) == 1 and sha_two_rank_lower_bound(3, 0) == 0


def test_galois_degree():
    assert galois_degree_2_division(CM) == 1
    assert galois_degree_2_division(EllipticCurve(0, 0, 0, 0, 42)) == 6
    assert galois_degree_2_division(EllipticCurve(0, 0, 0, -2, 0)) == 2
    # x^3 - 3x + 1 has square discriminant 81 and no rational root
    assert galois_degree_2_division(EllipticCurve(0, 0, 0, -3, 1)) == 3
    assert galois_degree_2_division(E11) == 6


def test_pick_split_primes():
    assert pick_split_primes(CM, 8) == [3, 5, 7, 11, 13, 17, 19, 23]
    qs = pick_split_primes(E11, 5)
    for q in qs:
        roots = sum(((4 * x**3 - 4 * x**2 + 1) % q == 0) for x in range(q))
        assert roots == 3 and q != 11
    assert qs == sorted(qs)
    with pytest.raises(CapExceeded):
        pick_split_primes(E11, 50, bound=1000)


def test_plan():
    plan = matsuno_plan(CM, 1)
    assert plan.k == 7 and plan.picked_primes == (3, 5, 7, 11, 13, 17, 19)
    assert plan.conductor_product == 4849845
    assert plan.asymptotic_estimate is None
    assert plan.sha_two_rank_bound == 1
    p2 = matsuno_plan(E11, 3, 1)
    assert p2.k == 10 and p2.c == 6 and p2.sha_two_rank_bound == 3
    assert p2.asymptotic_estimate == pytest.approx(
        math.log(3) ** 9 / math.exp(logarithmic_integral(3)))


def test_li_known_values():
    assert logarithmic_integral(2) == pytest.approx(1.04516378011749, rel=1e-13)
    assert logarithmic_integral(1e10) == pytest.approx(455055614.586600, rel=1e-12)
    assert logarithmic_integral(1.4513692348833810) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        logarithmic_integral(1)


@given(st.floats(1.01, 1e30))
def test_li_increasing(x):
    assert logarithmic_integral(x * 1.01) > logarithmic_integral(x)


def test_li_against_prime_counts():
    for X in (10**4, 10**5, 10**6):
        pi = len(primes_up_to(X))
        assert abs(logarithmic_integral(X) - pi) < math.sqrt(X) * math.log(X)


def test_estimate_none_below_two():
    assert asymptotic_conductor_estimate(1, 2) is None
    assert asymptotic_conductor_estimate(10, 2) > 0
