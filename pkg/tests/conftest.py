import random

import pytest

from solidschemes import corpus, finring

SMALL_PRIMES = [p for p in range(2, 1000) if all(p % d for d in range(2, int(p**0.5) + 1))]


def members_below(S, bound=1000):
    """Element-wise view of a PrimeSet against the concrete universe of primes < bound."""
    return {p for p in SMALL_PRIMES if p < bound and p in S}


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def tables16():
    return finring.table_corpus(16)


@pytest.fixture(scope="session")
def solid_sources():
    return corpus.solid_corpus(random.Random(0), samples=60)
