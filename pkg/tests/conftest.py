"""Shared fixtures: the standard pairs and rings used across the suite."""

import pytest

from qtk import basealg as ba
from qtk import catalog as cat


@pytest.fixture(scope="session")
def cp1():
    return cat.get("cp1").cp


@pytest.fixture(scope="session")
def cp2():
    return cat.get("cp2").cp


@pytest.fixture(scope="session")
def cp3():
    return cat.get("cp3").cp


@pytest.fixture(scope="session")
def point_ring_cp2():
    return cat.get("cp2").ring()


@pytest.fixture(scope="session")
def point_ring_cp1():
    return cat.get("cp1").ring()


def hirzebruch_ring(a):
    return cat.get(f"hirzebruch?a={a}").ring()


@pytest.fixture(scope="session")
def all_instances():
    return cat.all_instances()


@pytest.fixture(scope="session")
def base_cp1():
    return ba.make_cp(1)


@pytest.fixture(scope="session")
def base_cp2():
    return ba.make_cp(2)
