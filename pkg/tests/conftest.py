import numpy as np
import pytest

from core import Constants, EdgeAssociation, Graph, InputOracle, build_graph


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale Monte Carlo runs")


@pytest.fixture
def single_edge() -> Graph:
    return build_graph(2, [(0, 1)], 0, 1)


@pytest.fixture
def p3() -> Graph:
    """The path 0-1-2-3 of length three."""
    return build_graph(4, [(0, 1), (1, 2), (2, 3)], 0, 3)


@pytest.fixture
def triangle() -> Graph:
    """s = 0 and t = 1 joined directly and through vertex 2."""
    return build_graph(3, [(0, 1), (0, 2), (1, 2)], 0, 1)


@pytest.fixture
def c4() -> Graph:
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)], 0, 2)


@pytest.fixture
def k4() -> Graph:
    return build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)], 0, 3)


@pytest.fixture
def make_oracle():
    def factory(graph: Graph, x=None, **kwargs) -> InputOracle:
        assoc = EdgeAssociation.singletons(graph)
        return InputOracle((1,) * assoc.m if x is None else x, assoc, **kwargs)

    return factory


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def exact() -> Constants:
    """No injected subroutine errors."""
    return Constants(inject_failures=False)
