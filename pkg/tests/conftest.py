import pytest

from siltmod import algebra as al
from siltmod.indec import enumerate_indecomposables


@pytest.fixture(scope="session")
def a1():
    return al.path_algebra_a(1)


@pytest.fixture(scope="session")
def a2():
    return al.path_algebra_a(2)


@pytest.fixture(scope="session")
def a3():
    return al.path_algebra_a(3)


@pytest.fixture(scope="session")
def n3():
    return al.cyclic_nakayama(3)


@pytest.fixture(scope="session")
def ind1(a1):
    return enumerate_indecomposables(a1)


@pytest.fixture(scope="session")
def ind2(a2):
    return enumerate_indecomposables(a2)


@pytest.fixture(scope="session")
def ind3(a3):
    return enumerate_indecomposables(a3)


@pytest.fixture(scope="session")
def indn(n3):
    return enumerate_indecomposables(n3)


@pytest.fixture(scope="session")
def catalogs(ind2, ind3, indn):
    return {"A2": ind2, "A3": ind3, "N3": indn}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
