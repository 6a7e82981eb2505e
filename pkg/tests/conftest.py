import pytest

from rdpinv.envres import VersalPipeline
from rdpinv.solvelist import RuleCache


@pytest.fixture(scope="session")
def cache():
    # honors CACHE_DIR so repeated suite runs reuse the heavy expansions
    return RuleCache()


@pytest.fixture(scope="session")
def pipe6(cache):
    return VersalPipeline(6, cache=cache)


@pytest.fixture(scope="session")
def pipe7(cache):
    return VersalPipeline(7, cache=cache)


@pytest.fixture(scope="session")
def pipe8(cache):
    return VersalPipeline(8, cache=cache)
