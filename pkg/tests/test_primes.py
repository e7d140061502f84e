import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMALL_PRIMES, members_below
from solidschemes import primes as P
from solidschemes.errors import ConstraintViolation
from solidschemes.primes import PrimeSet

OPS = ["union", "intersect", "difference", "symmetric_difference"]
PYOPS = {
    "union": set.__or__,
    "intersect": set.__and__,
    "difference": set.__sub__,
    "symmetric_difference": set.__xor__,
}

prime_sets = st.builds(
    lambda cof, basis: PrimeSet(cof, tuple(sorted(basis))),
    st.booleans(),
    st.sets(st.sampled_from(SMALL_PRIMES[:15]), max_size=5),
)


@pytest.mark.parametrize("n, expected", [(12, {2: 2, 3: 1}), (1, {}), (360, {2: 3, 3: 2, 5: 1})])
def test_factor_examples(n, expected):
    assert P.factor(n) == expected
    assert P.unfactor(P.factor(n)) == n


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        P.factor(0)


def test_is_prime_matches_sieve():
    assert [n for n in range(1000) if P.is_prime(n)] == SMALL_PRIMES


def test_ps_op_examples():
    assert P.ps_op("union", P.finite([2, 3]), P.finite([5])) == P.finite([2, 3, 5])
    assert P.ps_op("intersect", P.cofinite([2]), P.cofinite([3])) == P.cofinite([2, 3])
    got = P.ps_op("symmetric_difference", P.cofinite([2, 3]), P.cofinite([3, 5]))
    assert got == P.finite([2, 5])
    assert members_below(got, 100) == {2, 5}


def test_almost_subset_examples():
    assert P.almost_subset(P.cofinite([2]), P.cofinite([3, 5]))
    # S \ T enumerated below 100
    assert members_below(P.cofinite([2]), 100) - members_below(P.cofinite([3, 5]), 100) == {3, 5}
    assert not P.almost_subset(P.cofinite([2]), P.finite([3]))
    assert P.almost_subset(P.finite([2, 3, 5]), P.EMPTY)


def test_constructors_validate():
    with pytest.raises(ConstraintViolation):
        P.finite([4])
    with pytest.raises(ConstraintViolation):
        P.finite([2, 2])
    assert P.finite([5, 2, 3]).basis == (2, 3, 5)


def test_iteration_and_rank():
    assert P.cofinite([2, 5]).take(4) == [3, 7, 11, 13]
    assert P.cofinite([2]).rank(11) == 4
    assert P.finite([3, 7]).members_upto(5) == [3]


@settings(max_examples=300, deadline=None)
@given(prime_sets, prime_sets, st.sampled_from(OPS))
def test_ops_agree_with_elementwise_evaluation(S, T, op):
    got = P.ps_op(op, S, T)
    assert members_below(got) == PYOPS[op](members_below(S), members_below(T))
    kinds = (S.cofinite, T.cofinite)
    if kinds == (False, False):
        assert got.is_finite()


@settings(max_examples=200, deadline=None)
@given(prime_sets)
def test_complement_and_self_difference(S):
    assert P.ps_op("complement", P.ps_op("complement", S)) == S
    assert members_below(~S) == set(SMALL_PRIMES) - members_below(S)
    assert P.ps_op("symmetric_difference", S, S).is_empty()
    assert S.is_finite() == (not S.cofinite)


@settings(max_examples=200, deadline=None)
@given(prime_sets, prime_sets, prime_sets)
def test_almost_equal_is_an_equivalence(S, T, U):
    assert P.almost_equal(S, S)
    assert P.almost_equal(S, T) == P.almost_equal(T, S)
    assert (S ^ T) == (T ^ S)
    if P.almost_equal(S, T) and P.almost_equal(T, U):
        assert P.almost_equal(S, U)
    assert P.almost_subset(S, T) == (S - T).is_finite()
