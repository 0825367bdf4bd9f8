import pytest

from logiclab import designs
from logiclab.parts import builtin_registry


@pytest.fixture(scope="session")
def registry():
    return builtin_registry()


@pytest.fixture(scope="session")
def counter60():
    return designs.counter60()


@pytest.fixture(scope="session")
def counter100():
    return designs.counter100()


@pytest.fixture(scope="session")
def counter_test_points():
    return designs.counter_test_points()
