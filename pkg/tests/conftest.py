"""共享的测试夹具"""

import pytest

from src.core.catalog import DiagramCatalog
from src.core.diagram import Diagram


@pytest.fixture(scope="session")
def catalog() -> DiagramCatalog:
    return DiagramCatalog()


@pytest.fixture(scope="session")
def trefoil(catalog) -> Diagram:
    return catalog.load("trefoil")


@pytest.fixture(scope="session")
def trefoil_left(catalog) -> Diagram:
    return catalog.load("trefoil-left")


@pytest.fixture(scope="session")
def figure_eight(catalog) -> Diagram:
    return catalog.load("figure-eight")


@pytest.fixture(scope="session")
def knot_10_152(catalog) -> Diagram:
    return catalog.load("10_152")


@pytest.fixture(scope="session")
def unknot(catalog) -> Diagram:
    return catalog.load("unknot")
