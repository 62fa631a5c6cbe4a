import pytest

from heckecells.cells import build_cell_tables
from heckecells.weyl import build_root_datum


@pytest.fixture(scope="session")
def a1_tables():
    return build_cell_tables(build_root_datum("A1", "sc"), 12)


@pytest.fixture(scope="session")
def a1_tables_ext():
    return build_cell_tables(build_root_datum("A1", "sc"), 12, extended=True)


@pytest.fixture(scope="session")
def a1_tables_10():
    return build_cell_tables(build_root_datum("A1", "sc"), 10)


@pytest.fixture(scope="session")
def a2_tables():
    return build_cell_tables(build_root_datum("A2", "sc"), 10)


@pytest.fixture(scope="session")
def a2_tables_8():
    return build_cell_tables(build_root_datum("A2", "sc"), 8)
