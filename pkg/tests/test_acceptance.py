"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line, printed in the "acceptance criteria"
section of the pytest summary. Cases that cannot meet their target are marked
xfail(strict=True): they still run the full computation and report FAIL, and
the run turns red if one of them ever starts passing.
"""

import math
import random
import time

import numpy as np
import pytest
import scipy.integrate

from conftest import ACCEPTANCE_LINES, CORPUS, naive_count, random_curve
from ecgrowth import cli
from ecgrowth.arith import EllipticCurve, count_points, count_points_charsum, hasse_bound
from ecgrowth.classify import build_p1_p2, classify_prime, scan_proportions
from ecgrowth.densities import chebotarev_set_size, cojocaru_scan, format_6g, rank_zero_table
from ecgrowth.errors import NonIntegral
from ecgrowth.extensions import ExtensionProfile
from ecgrowth.ingest import csv_text
from ecgrowth.iwasawa import (
    EulerComponents,
    IwasawaAssumptions,
    euler_characteristic,
    is_p_power,
    kida_lambda,
    lambda_stable,
    lkr_check,
)
from ecgrowth.localdata import (
    ReductionType,
    conductor,
    local_data,
    local_data_table,
    minimal_model,
    valuation,
)
from ecgrowth.matsuno import logarithmic_integral
from ecgrowth.primes import primes_up_to

CM = EllipticCurve(0, 0, 0, -1, 0)
E11 = EllipticCurve(0, -1, 1, 0, 0)  # y^2 + y = x^3 - x^2
C42 = EllipticCurve(0, 0, 0, 0, 42)
ALL = IwasawaAssumptions.all_assumed()


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


TABLE_1 = {
    3: "0.293282", 5: "0.189719", 7: "0.121798", 11: "0.0866316", 13: "0.0647841",
    17: "0.0453478", 19: "0.0342828", 23: "0.0404621", 29: "0.0303331", 31: "0.0198836",
    37: "0.0197385", 41: "0.019329", 43: "0.0165664", 47: "0.0141439",
}


def test_01_table_regression():
    t0 = time.perf_counter()
    results = rank_zero_table(sorted(TABLE_1), 179_424_673, workers=4)
    elapsed = time.perf_counter() - t0
    got = {r.p: format_6g(r.value) for r in results}
    wrong = {p: (got[p], v) for p, v in TABLE_1.items() if got[p] != v}
    ok = not wrong and elapsed <= 300
    record(1, ok, f"{14 - len(wrong)}/14 values match to 6 s.f. in {elapsed:.1f}s (4 workers)"
           + (f"; mismatches {wrong}" if wrong else ""))
    assert ok


def test_02_gl2_bruteforce():
    t0 = time.perf_counter()
    counts = {p: chebotarev_set_size(p, "bruteforce") for p in (3, 5, 7, 11, 13)}
    elapsed = time.perf_counter() - t0
    ok = all(c == p * p for p, c in counts.items()) and elapsed < 10
    record(2, ok, f"counts {counts} in {elapsed:.2f}s")
    assert ok


def test_03_charsum_equals_naive():
    assert len(CORPUS) == 20
    pairs, bad = 0, []
    qs = primes_up_to(499).tolist()[1:]
    for E in CORPUS:
        for q in qs:
            if E.disc % q == 0:
                continue
            pairs += 1
            if count_points_charsum(E, q) != naive_count(E, q):
                bad.append((E.ainvs, q))
    ok = not bad
    record(3, ok, f"{pairs} (curve, q) pairs, 20 curves, odd good q <= 499, {len(bad)} mismatches")
    assert ok


def test_04_hasse_fuzz():
    rng = random.Random(20240404)
    qs = primes_up_to(100_000).tolist()[2:]
    checked = worst = 0
    while checked < 10_000:
        E = random_curve(rng, 10**4)
        q = rng.choice(qs)
        if E.disc % q == 0:
            continue
        a = q + 1 - count_points(E, q)
        assert abs(a) <= hasse_bound(q), (E, q, a)
        worst = max(worst, abs(a) / (2 * math.sqrt(q)))
        checked += 1
    record(4, True, f"{checked} random pairs, max |a_q|/2sqrt(q) = {worst:.4f}")


def test_05_cm_supersingular_identity():
    qs = [q for q in primes_up_to(10_000).tolist() if q % 4 == 3]
    bad = [q for q in qs if count_points(CM, q) != q + 1]
    ok = not bad
    record(5, ok, f"#E(F_q) = q + 1 for {len(qs) - len(bad)}/{len(qs)} primes q = 3 mod 4 up to 10^4")
    assert ok


@pytest.mark.parametrize("name,E", [("x^3-x", CM), ("11a3", E11)])
@pytest.mark.parametrize("p", [5, 13])
def test_06_no_supersingular_enemy(name, E, p):
    rep = scan_proportions(E, p, 100_000)
    # second route: traces straight from the character sum
    qs = [q for q in primes_up_to(100_000, p, 1).tolist() if E.disc % q]
    a = np.array([q + 1 - count_points_charsum(E, q) for q in qs])
    both = int(np.count_nonzero((a == 0) & ((np.array(qs) + 1 - a) % p == 0)))
    ok = rep.supersingular_enemy == 0 and both == 0
    record(6, ok, f"{name} p={p}: {len(qs)} good q = 1 mod p, supersingular enemies: scan "
           f"{rep.supersingular_enemy}, charsum {both}")
    assert ok


def _within(empirical, target, count):
    se = math.sqrt(target * (1 - target) / count)
    return abs(empirical - target) <= 3 * se, (empirical - target) / se


@pytest.mark.parametrize("p", [
    pytest.param(5, marks=pytest.mark.xfail(strict=True, reason="rational 5-torsion: p | #E(F_q) for every good q")),
    pytest.param(7, marks=pytest.mark.xfail(strict=True, reason="surjective image gives (p^2-2)/((p-1)^2(p+1)), not 1/p")),
])
def test_07_cojocaru(p):
    r = cojocaru_scan(E11, p, 10**6, workers=4)
    ok, z = _within(r.proportion, 1 / p, r.pi_X)
    record(7, ok, f"11a3 p={p}: proportion {r.proportion:.6f} vs 1/p = {1 / p:.6f} ({z:+.1f} se, pi(X) = {r.pi_X})")
    assert ok


@pytest.mark.parametrize("name,E,p,cm", [
    pytest.param("11a3", E11, 5, False,
                 marks=pytest.mark.xfail(strict=True, reason="rational 5-torsion makes every good q = 1 mod 5 an enemy")),
    ("11a3", E11, 7, False),
    pytest.param("x^3-x", CM, 5, True,
                 marks=pytest.mark.xfail(strict=True, reason="split p: true density 1/(2(p-1)^2)")),
    pytest.param("x^3-x", CM, 7, True,
                 marks=pytest.mark.xfail(strict=True, reason="inert p: true density 1/(2(p^2-1))")),
])
def test_08_enemy_proportion(name, E, p, cm):
    rep = scan_proportions(E, p, 10**6, workers=4)
    target = 1 / ((2 if cm else 1) * p * (p - 1))
    ok, z = _within(rep.enemy_fraction, target, rep.pi_X)
    record(8, ok, f"{name} p={p}: enemy fraction {rep.enemy_fraction:.6f} vs {target:.6f} ({z:+.1f} se)")
    assert ok


def test_09_lkr_worked_example(capsys):
    code = cli.main(["--quiet", "criterion", "lkr", "--curve", "0 0 0 0 42", "--p", "5", "--q", "31",
                     "--assume-all"])
    out = capsys.readouterr().out
    v = lkr_check(C42, 5, ExtensionProfile(5, {31}), ALL)
    info = v.checks[31]
    ok = (code == 0 and "SelmerBecomesNonzero" in out and v.name == "SelmerBecomesNonzero"
          and 31 % 5 == 1 and info["ell_mod_p"] == 1
          and local_data(C42, 31).reduction_type is ReductionType.GOOD and info["reduction"] == "good"
          and info["count"] % 5 == 0 and naive_count(C42, 31) == info["count"])
    record(9, ok, f"{v.name}; 31 = 1 mod 5, good at 31, #E(F_31) = {info['count']}")
    assert ok


def test_10_kida_stability_consistency():
    rng = random.Random(10)
    curves = [minimal_model(E) for E in CORPUS]
    pools = {p: primes_up_to(2000, p, 1).tolist() for p in (5, 7, 11, 13)}
    agree = both = 0
    for _ in range(10_000):
        E = rng.choice(curves)
        p = rng.choice(list(pools))
        sigma = set(rng.sample(pools[p], rng.randint(1, 4)))
        profile = ExtensionProfile(p, sigma, p_ramified=rng.random() < 0.3)
        stable = lambda_stable(E, p, profile, ALL)
        P1, P2 = build_p1_p2(E, p, profile)
        correction = kida_lambda(0, p, [p] * len(P1), [p] * len(P2))
        enemy = any(classify_prime(E, p, q).verdict.is_enemy for q in sigma)
        assert stable.stable == (correction == 0) == (not enemy), (E, p, sigma)
        met = lkr_check(E, p, profile, ALL).met
        assert not (met and stable.stable)
        both += met and stable.stable
        agree += 1
    record(10, True, f"{agree} random profiles: Stable <=> zero Kida correction <=> no ramified enemy; "
           f"lkr and Stable both succeeded {both} times")


def test_11_euler_characteristic():
    rng = random.Random(11)
    integral = 0
    for _ in range(1000):
        p = rng.choice([3, 5, 7, 11])
        ex = lambda: p ** rng.randint(0, 3)
        comp = EulerComponents(p, ex(), tuple(ex() for _ in range(rng.randint(0, 3))),
                               tuple(ex() for _ in range(rng.randint(0, 2))), ex())
        try:
            chi = euler_characteristic(comp)
        except NonIntegral:
            continue
        assert is_p_power(chi, p)
        integral += 1
    ones = euler_characteristic(EulerComponents(5))
    ok = ones == 1
    record(11, ok, f"1000 tuples: {integral} powers of p, {1000 - integral} NonIntegral; all-ones gives {ones}")
    assert ok


TRIPLES = [(E11, 7, 4_500_000), (CM, 13, 4_300_000), (C42, 5, 4_700_000)]


@pytest.mark.parametrize("E,p,X", TRIPLES, ids=["11a3-7", "cm-13", "c42-5"])
def test_12_determinism(E, p, X):
    texts = {w: csv_text(scan_proportions(E, p, X, workers=w)).encode() for w in (1, 2, 8)}
    ok = len(set(texts.values())) == 1
    record(12, ok, f"{E.ainvs} p={p} X={X}: CSV identical for workers 1, 2, 8 ({len(texts[1])} bytes)")
    assert ok


def _li_oracle(x):
    # PV of int_0^x dt / log t as a Cauchy-weighted integral of (t - 1) / log t
    def f(t):
        if t == 0:
            return 0.0
        if t == 1:
            return 1.0
        return (t - 1) / math.log(t)
    val, _ = scipy.integrate.quad(f, 0, x, weight="cauchy", wvar=1, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def test_13_li_accuracy():
    errs = {x: abs(logarithmic_integral(x) / _li_oracle(x) - 1) for x in (2, 5, 10, 100)}
    ok = all(e <= 1e-6 for e in errs.values())
    record(13, ok, "relative errors " + ", ".join(f"li({x}) {e:.1e}" for x, e in errs.items()))
    assert ok


def test_14_tate_self_consistency():
    checked, curves = 0, []
    for E in CORPUS:
        M = minimal_model(E)
        mult = [d for d in local_data_table(M).values() if d.reduction_type.is_multiplicative]
        if not mult:
            continue
        curves.append(M)
        for d in mult:
            assert valuation(M.disc, d.prime) == d.kodaira.n
            if d.reduction_type is ReductionType.SPLIT_MULTIPLICATIVE:
                assert d.tamagawa == d.kodaira.n
            checked += 1
        if len(curves) == 10:
            break
    N = conductor(E11)
    ok = len(curves) == 10 and N == 11
    record(14, ok, f"{checked} multiplicative primes over {len(curves)} curves consistent; conductor(11a3) = {N}")
    assert ok
