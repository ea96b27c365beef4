import pytest

from oracle.sieve import PrimeOracle


@pytest.fixture(scope="session")
def oracle():
    """Covers (n + 2)^2 for every census in the sweeps (n <= 999) and n + 6 for n <= 10^5"""
    return PrimeOracle.build(1_010_000, with_spf=True)


@pytest.fixture(scope="session")
def small_oracle():
    return PrimeOracle.build(2_000)
