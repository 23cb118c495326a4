"""
Shared fixtures for the test suites
"""

import pytest

from combinatorics.rtuples import RTuple
from combinatorics.settings import Settings
from combinatorics.tableaux import Partition, Tableau

BIG_COLUMN = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
MIDDLE_COLUMN = (1, 3, 4, 5, 6, 7, 8, 9, 10)
SHORT_COLUMN = (1, 4, 6, 7, 10)


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def cross_check(monkeypatch):
    """Turn on the redundant-formulation checks for one test"""
    monkeypatch.setenv("PARACAT_CROSS_CHECK", "1")
    yield


@pytest.fixture
def worked_shape() -> Partition:
    return Partition((7, 7, 7, 7, 7, 5, 5, 5, 5, 2, 2, 0))


@pytest.fixture
def worked_perm() -> RTuple:
    return RTuple.parse("1,4,6,7,10;3,5,8,9;2,12;11")


@pytest.fixture
def worked_row_ends() -> RTuple:
    return RTuple.parse("1,4,6,7,10;7,8,9,10;10,12;12")


@pytest.fixture
def worked_key(worked_shape) -> Tableau:
    columns = (BIG_COLUMN,) * 2 + (MIDDLE_COLUMN,) * 3 + (SHORT_COLUMN,) * 2
    return Tableau(worked_shape, columns)


@pytest.fixture
def small_shape() -> Partition:
    return Partition((2, 1, 0))


@pytest.fixture
def small_tableau(small_shape) -> Tableau:
    """Columns (1,3),(2): not a key; its scanning tableau is (2,3),(2)"""
    return Tableau(small_shape, ((1, 3), (2,)))
