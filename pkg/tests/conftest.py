import pytest

from evenquad import PrimeTable


@pytest.fixture(scope="session")
def table_2k():
    return PrimeTable(2000)


@pytest.fixture(scope="session")
def table_20k():
    return PrimeTable(20000)


@pytest.fixture(scope="session")
def table_100k():
    return PrimeTable(100_000)
