import networkx as nx
import pytest

from graphroot.core import (
    Graph,
    complete_graph,
    compute_square,
    cycle_graph,
    path_graph,
)
from graphroot.generators import gen_random_connected


@pytest.fixture(scope="module")
def k3():
    return complete_graph(range(3))


@pytest.fixture(scope="module")
def k4():
    return complete_graph(range(4))


@pytest.fixture(scope="module")
def p3():
    return path_graph(range(3))


@pytest.fixture(scope="module")
def p4():
    return path_graph(range(4))


@pytest.fixture(scope="module")
def c5():
    return cycle_graph(range(5))


@pytest.fixture(scope="module")
def c7_square():
    return compute_square(cycle_graph(range(7)))


@pytest.fixture(scope="module")
def c12_square():
    return compute_square(cycle_graph(range(12)))


@pytest.fixture(scope="module")
def trim_root():
    """
    Root with pendants p1, p2 at a, a triangle b c e and a pendant f at c.
    Labels: a=0, b=1, c=2, e=3, f=4, p1=5, p2=6.
    """
    return Graph(
        range(7),
        [(0, 5), (0, 6), (0, 1), (1, 2), (1, 3), (2, 3), (2, 4)],
    )


@pytest.fixture(scope="module")
def trim_square(trim_root):
    return compute_square(trim_root)


@pytest.fixture(scope="module")
def atlas():
    """Connected graphs on 3 to 5 vertices from the networkx atlas."""
    return [
        Graph.from_networkx(g)
        for g in nx.graph_atlas_g()
        if 3 <= g.number_of_nodes() <= 5 and nx.is_connected(g)
    ]


@pytest.fixture(scope="session")
def atlas6():
    """Connected graphs on 6 vertices from the networkx atlas."""
    return [
        Graph.from_networkx(g)
        for g in nx.graph_atlas_g()
        if g.number_of_nodes() == 6 and nx.is_connected(g)
    ]


@pytest.fixture(scope="session")
def random7():
    """Sparse connected graphs on 7 vertices, small enough for the oracle."""
    densities = (0.15, 0.25, 0.35)
    return [gen_random_connected(7, densities[seed % 3], seed) for seed in range(500)]
