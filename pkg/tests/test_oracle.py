from itertools import combinations

import networkx as nx
import pytest

from graphroot.checks import ContractError, OracleCapError
from graphroot.core import Graph, edge, is_square_root, lexicographic_key, star_graph
from graphroot.generators import gen_known_square
from graphroot.oracle import (
    OracleQuery,
    _enumerate_roots,
    oracle_enumerate_roots,
    oracle_max_root,
    oracle_min_root,
)


def _diameter_two_subgraphs(g):
    """Independent count of roots: connected spanning subgraphs of diameter <= 2."""
    count = 0
    for size in range(g.m + 1):
        for subset in combinations(g.edges(), size):
            h = nx.Graph()
            h.add_nodes_from(g.vertices)
            h.add_edges_from(subset)
            if nx.is_connected(h) and nx.diameter(h) <= 2:
                count += 1
    return count


def test_enumerate_roots_of_complete_graph(k4):
    roots = oracle_enumerate_roots(OracleQuery(k4, 0, k4.m))
    assert len(roots) == _diameter_two_subgraphs(k4)
    assert roots == sorted(roots, key=lexicographic_key)
    assert star_graph(0, range(4)) in roots
    assert k4 in roots
    assert all(is_square_root(h, k4) for h in roots)


def test_enumerate_roots_counts_subsets(k4):
    roots, total = _enumerate_roots(OracleQuery(k4, 0, k4.m, required={(0, 1)}))
    assert total == 2 ** 5
    assert roots
    assert all(h.has_edge(0, 1) for h in roots)

    blocked = oracle_enumerate_roots(OracleQuery(k4, 0, k4.m, blocked={(0, 1)}))
    assert all(not h.has_edge(0, 1) for h in blocked)


def test_enumerate_roots_with_jobs(k4):
    q = OracleQuery(k4, 3, 4)
    assert oracle_enumerate_roots(q, jobs=2) == oracle_enumerate_roots(q, jobs=1)


def test_union_of_two_cliques_has_two_tree_roots():
    square = gen_known_square("union_two_cliques", (4, 4)).square
    trees = oracle_enumerate_roots(OracleQuery(square, square.n - 1, square.n - 1))
    assert len(trees) == 2


def test_oracle_query_contracts(k4):
    with pytest.raises(ContractError, match="min_edges"):
        OracleQuery(k4, 5, 4)
    with pytest.raises(ContractError, match="disjoint"):
        OracleQuery(k4, 0, 6, required={(0, 1)}, blocked={(1, 0)})


def test_oracle_cap(k4):
    with pytest.raises(OracleCapError, match="at most 3 edges"):
        oracle_enumerate_roots(OracleQuery(k4, 0, 6), edge_cap=3)
    with pytest.raises(OracleCapError):
        oracle_max_root(k4, edge_cap=5)


def test_oracle_min_root(c7_square, k4):
    assert oracle_min_root(c7_square, 0) is None
    root = oracle_min_root(c7_square, 1)
    assert root.m == 7
    assert is_square_root(root, c7_square)
    assert oracle_min_root(k4, 0) == star_graph(0, range(4))

    with pytest.raises(ContractError, match="connected"):
        oracle_min_root(Graph(range(2)), 1)


def test_oracle_max_root(k4, p3):
    assert oracle_max_root(k4) == k4
    assert oracle_max_root(p3) is None
    assert oracle_max_root(Graph(range(2))) == Graph(range(2))


def test_oracle_invalid_jobs(k4):
    with pytest.raises(ValueError, match="jobs"):
        oracle_max_root(k4, jobs=0)


def test_edge_labels_are_canonical(k4):
    q = OracleQuery(k4, 0, 6, required={(3, 2)})
    assert q.required == frozenset({edge(2, 3)})
