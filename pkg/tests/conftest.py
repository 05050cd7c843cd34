import pytest

from utils.alerts import clear_mismatches
from utils.cache import census_cache


@pytest.fixture(autouse=True)
def fresh_state():
    census_cache.clear()
    clear_mismatches()
    yield
    census_cache.clear()
    clear_mismatches()
