import random

import pytest

from kernel.errors import CapacityError, DomainError
from oracle.sieve import PrimeOracle


def trial_division_is_prime(k):
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def test_build_lists_primes_in_order():
    oracle = PrimeOracle.build(100)
    assert oracle.primes[:5].tolist() == [2, 3, 5, 7, 11]
    assert oracle.primes.tolist() == [k for k in range(101) if trial_division_is_prime(k)]


def test_build_rejects_tiny_and_oversized_limits():
    with pytest.raises(DomainError):
        PrimeOracle.build(5)
    with pytest.raises(CapacityError):
        PrimeOracle.build(10 ** 9, memory_cap=10 ** 8)


def test_memory_cap_from_environment(monkeypatch):
    monkeypatch.setenv('ODDSIEVE_MEMORY_CAP', '1000')
    with pytest.raises(CapacityError):
        PrimeOracle.build(5000)


@pytest.mark.parametrize("x, expected", [(49, 15), (2, 1), (1, 0), (169, 39), (121, 30)])
def test_pi_values(small_oracle, x, expected):
    assert small_oracle.pi(x) == expected


def test_pi_differences_between_squares(small_oracle):
    assert small_oracle.pi(169) - small_oracle.pi(121) == 9
    assert small_oracle.pi(1521) - small_oracle.pi(1369) == 21


def test_pi_of_a_million(oracle):
    assert oracle.pi(10 ** 6) == 78498


def test_pi_beyond_limit_raises(small_oracle):
    with pytest.raises(CapacityError):
        small_oracle.pi(small_oracle.limit + 1)


def test_pi_is_monotone(small_oracle):
    values = [small_oracle.pi(x) for x in range(small_oracle.limit + 1)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_sieve_agrees_with_trial_division(oracle):
    rng = random.Random(20240601)
    for _ in range(10_000):
        k = rng.randrange(oracle.limit + 1)
        assert oracle.is_prime(k) == trial_division_is_prime(k), k


@pytest.mark.parametrize("k, factors", [
    (15015, [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1)]),
    (3913, [(7, 1), (13, 1), (43, 1)]),
    (49, [(7, 2)]),
    (1521, [(3, 2), (13, 2)]),
])
def test_factorize(small_oracle, oracle, k, factors):
    assert small_oracle.factorize(k) == factors
    assert oracle.factorize(k) == factors


def test_factorize_above_limit_by_trial_division(small_oracle):
    k = 1999 * 1997
    assert small_oracle.factorize(k) == [(1997, 1), (1999, 1)]
    assert small_oracle.is_prime(1_000_003)
    with pytest.raises(CapacityError):
        small_oracle.factorize(small_oracle.limit ** 2 + 1)


def test_spf_and_trial_division_factorizations_agree(oracle, small_oracle):
    rng = random.Random(7)
    for _ in range(2000):
        k = rng.randrange(2, 4_000_000)
        assert oracle.factorize(k) == small_oracle.factorize(k)


def test_divisors_and_omega(small_oracle):
    assert small_oracle.divisors(7663) == [1, 79, 97, 7663]
    assert len(small_oracle.divisors(15015)) == 32
    assert small_oracle.omega(15015) == 5
    assert small_oracle.omega(1) == 0


def test_segmented_count_above_limit(small_oracle, oracle):
    a, b = 1_000_000, 1_007_001
    assert small_oracle.count_primes_between(a, b) == oracle.pi(b) - oracle.pi(a)
    assert small_oracle.count_primes_between(1000, 1_003_001) == oracle.pi(1_003_001) - oracle.pi(1000)


def test_segmented_count_needs_base_primes(small_oracle):
    with pytest.raises(CapacityError):
        small_oracle.count_primes_between(10 ** 7, 10 ** 7 + 100)


def test_odd_primes_up_to(small_oracle):
    assert small_oracle.odd_primes_up_to(11) == [3, 5, 7, 11]
    assert small_oracle.odd_primes_up_to(2) == []
    assert small_oracle.odd_prime_count(49) == 14
