import random

import pytest

from packlib.wcatalog import default_catalog


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture
def rng():
    return random.Random(20261015)
