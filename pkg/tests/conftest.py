import pytest
from hypothesis import settings

from happygrid import DigitSystem, enumerate_attractors

# Big-integer cases can blow hypothesis' per-example deadline on slow CI.
settings.register_profile("happygrid", deadline=None)
settings.load_profile("happygrid")

EIGHT_CYCLE = (4, 16, 37, 58, 89, 145, 42, 20)


@pytest.fixture(scope="session")
def squares() -> DigitSystem:
    return DigitSystem(10, 2)


@pytest.fixture(scope="session")
def squares_atlas(squares):
    return enumerate_attractors(squares)


@pytest.fixture(scope="session")
def cubes() -> DigitSystem:
    return DigitSystem(10, 3)


@pytest.fixture(scope="session")
def cubes_atlas(cubes):
    return enumerate_attractors(cubes)
