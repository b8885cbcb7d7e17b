import random
from pathlib import Path

import numpy as np
import pytest

from ecgrowth.arith import EllipticCurve
from ecgrowth.ingest import parse_curve_file

DATA = Path(__file__).parent / "data"
CORPUS_PATH = DATA / "corpus.txt"
CORPUS = [rec.curve() for rec in parse_curve_file(CORPUS_PATH)]

ACCEPTANCE_LINES = []


def naive_count(curve: EllipticCurve, q: int) -> int:
    """#E(F_q) by testing every (x, y) against the long Weierstrass equation."""
    a1, a2, a3, a4, a6 = (a % q for a in curve.ainvs)
    x = np.arange(q, dtype=np.int64)[:, None]
    y = np.arange(q, dtype=np.int64)[None, :]
    lhs = (y * y + a1 * x % q * y + a3 * y) % q
    rhs = ((x * x % q) * x + a2 * x * x + a4 * x + a6) % q
    return 1 + int(np.count_nonzero(lhs == rhs))


def trial_division_primes(limit: int) -> list:
    return [n for n in range(2, limit + 1) if all(n % d for d in range(2, int(n**0.5) + 1))]


def random_curve(rng: random.Random, size: int = 50) -> EllipticCurve:
    while True:
        a = [rng.randint(-size, size) for _ in range(5)]
        a[0], a[2] = a[0] % 2, a[2] % 2
        a[1] = rng.randint(-1, 1)
        try:
            return EllipticCurve(*a)
        except ValueError:
            continue


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def corpus():
    return list(CORPUS)
