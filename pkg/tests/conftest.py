import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from towerlab.catalog import catalog_list  # noqa: E402
from towerlab.named import construct_named  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def catalog():
    return catalog_list(48)


@pytest.fixture(scope="session")
def small_catalog():
    return catalog_list(12)


@pytest.fixture(scope="session")
def named():
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = construct_named(spec)
        return cache[spec]

    return get


@pytest.fixture(scope="session")
def graph_files():
    return sorted((DATA / "graphs").glob("*.json"))
