import pytest

from tensorcat.catalog import catalog_category, catalog_names


@pytest.fixture(scope="session")
def cats():
    """All catalog categories, built once."""
    return {name: catalog_category(name) for name in catalog_names()}


@pytest.fixture(scope="session")
def fib(cats):
    return cats["fibonacci"]


@pytest.fixture(scope="session")
def ising_cat(cats):
    return cats["ising"]


@pytest.fixture(scope="session")
def toric(cats):
    return cats["toric_code"]


@pytest.fixture(scope="session")
def semion_cat(cats):
    return cats["semion"]
