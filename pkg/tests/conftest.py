from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from gtmod.core.rep_engine import clear_caches
from gtmod.core.tableaux import SingularPair, Tableau

settings.register_profile(
    "gtmod",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gtmod")


@pytest.fixture(autouse=True)
def _fresh_caches():
    clear_caches()
    yield
    clear_caches()


@pytest.fixture
def critical_gl3() -> Tableau:
    # rows listed top first: (2,0,-2; 1,1; 1)
    return Tableau.from_top_rows([[2, 0, -2], [1, 1], [1]])


@pytest.fixture
def pair212() -> SingularPair:
    return SingularPair(2, 1, 2)


@pytest.fixture
def generic_gl2() -> Tableau:
    return Tableau.from_top_rows([[1, -1], [Fraction(1, 2)]])
