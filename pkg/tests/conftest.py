import random
from math import gcd

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from basketcalc.basket import Basket, pack, prime_packing_candidates
from basketcalc.canonical import step_basket

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def canonical_pairs(rmax):
    return [(b, r) for r in range(2, rmax + 1) for b in range(1, r // 2 + 1) if gcd(b, r) == 1]


@st.composite
def baskets(draw, rmax=30, max_entries=8, max_mult=3):
    pool = canonical_pairs(rmax)
    keys = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=max_entries, unique=True))
    return Basket({k: draw(st.integers(1, max_mult)) for k in keys})


def random_basket(rng: random.Random, rmax=30, max_entries=8, max_mult=3) -> Basket:
    pool = canonical_pairs(rmax)
    keys = rng.sample(pool, rng.randint(1, max_entries))
    return Basket({k: rng.randint(1, max_mult) for k in keys})


def random_upper_basket(rng: random.Random, max_steps=12) -> Basket:
    """A basket whose initial basket only has (1,2)..(1,5), reached by random prime packings."""
    counts = {(1, 2): rng.randint(0, 8), (1, 3): rng.randint(0, 6),
              (1, 4): rng.randint(0, 3), (1, 5): rng.randint(0, 2)}
    b = Basket(counts)
    for _ in range(rng.randint(0, max_steps)):
        if len(b) < 2:
            break
        levels = sorted({p.r + q.r for p in b for q in b})
        n = rng.choice(levels)
        pairs = prime_packing_candidates(b, n)
        if pairs:
            b = pack(b, *rng.choice(pairs))
    return b


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
