import pytest

from wkl.coxeter import new_system
from wkl.heckemod import module

# (descriptor, weights) for every system exercised by the acceptance criteria
CATALOG = [
    ("A1", (1,)),
    ("A2", (1, 1)),
    ("A3", (1, 1, 1)),
    ("B2", (1, 1)),
    ("B3", (1, 1, 1)),
    ("I2(5)", (1, 1)),
    ("I2(6)", (1, 1)),
    ("B2", (1, 2)),
    ("I2(6)", (1, 3)),
]

# everything except B3, for suites that sweep all pairs
SMALL = [c for c in CATALOG if c[0] != "B3"]


def sysid(case):
    name, weights = case
    return f"{name}-{''.join(map(str, weights))}"


@pytest.fixture
def fresh_modules():
    """Drop shared per-(system, J) caches before and after a test that mutates them."""
    module.cache_clear()
    yield
    module.cache_clear()


@pytest.fixture(scope="session")
def a2():
    return new_system("A2")


@pytest.fixture(scope="session")
def a3():
    return new_system("A3")


@pytest.fixture(scope="session")
def b2w():
    return new_system("B2", (1, 2))
