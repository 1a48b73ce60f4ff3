import os

import pytest

from src.algebra.examples_categories import stock_example
from src.utils.persistence import ArtifactStore

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


@pytest.fixture
def store(tmp_path):
    return ArtifactStore(str(tmp_path))


@pytest.fixture(scope="session")
def data_store():
    return ArtifactStore(DATA_DIR)


@pytest.fixture(scope="session")
def klein(data_store):
    return data_store.load_magma("magmas/klein.json")


@pytest.fixture(scope="session")
def c6(data_store):
    return data_store.load_magma("magmas/c6.json")


@pytest.fixture(scope="session")
def groupoid(data_store):
    return data_store.load_magma("magmas/two_object_groupoid.json")


@pytest.fixture(scope="session")
def s4_c4():
    return stock_example("s4-s3-c4")


@pytest.fixture(scope="session")
def s4_klein():
    return stock_example("s4-s3-klein")


@pytest.fixture(scope="session")
def s3_c3_c2():
    return stock_example("s3-c3-c2")
