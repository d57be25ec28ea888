import pytest

from sumsieve.primes import PrimeTable


@pytest.fixture(scope="session")
def table_1e6():
    return PrimeTable(10**6)


@pytest.fixture(scope="session")
def table_1e7():
    return PrimeTable(10**7)


@pytest.fixture(scope="session")
def table_1e4():
    return PrimeTable(10**4)
