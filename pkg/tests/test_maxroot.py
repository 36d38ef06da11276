from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from graphroot.checks import ContractError, IntegrityError
from graphroot.core import (
    Edge,
    Graph,
    complete_graph,
    compute_square,
    cycle_graph,
    disjoint_union,
    is_square_root,
    lexicographic_key,
)
from graphroot.definitions import Prefilter
from graphroot.generators import gen_random_connected
from graphroot.maxroot import (
    CoverBudget,
    aingworth_prefilter,
    build_aux_graph,
    check_root_charact,
    enumerate_maximal_independent_sets,
    max_root_exact,
    max_root_fpt,
)
from graphroot.oracle import oracle_max_root


def test_aux_graph_of_path(p3):
    p = build_aux_graph(p3)
    assert p.vertices == (Edge(0, 1), Edge(1, 2))
    assert p.n == 2
    assert p.m == 1
    assert p.edges() == [(0, 1)]
    assert not p.is_independent([0, 1])


def test_aux_graph_of_complete_graph(k4):
    p = build_aux_graph(k4)
    assert p.n == 6
    assert p.m == 0


def test_check_root_charact_contracts(k4):
    p = build_aux_graph(k4)
    with pytest.raises(ContractError, match="spanning subgraph"):
        check_root_charact(Graph(range(3)), k4, p)
    with pytest.raises(ContractError, match="different graph"):
        check_root_charact(Graph(range(3), [(0, 1)]), complete_graph(range(3)), p)


def test_aingworth_prefilter(k4, c5):
    assert aingworth_prefilter(k4, 0) is Prefilter.TRIVIAL_YES
    assert aingworth_prefilter(c5, 2) is Prefilter.REJECT
    assert aingworth_prefilter(c5, 3) is Prefilter.PASS

    with pytest.raises(ContractError, match="connected"):
        aingworth_prefilter(Graph(range(2)), 1)


def test_cover_budget():
    cover = CoverBudget(2).take(3)
    assert cover.covers(3, 7)
    assert not cover.covers(1, 2)
    assert not cover.exhausted
    assert cover.take(1).exhausted

    with pytest.raises(IntegrityError, match="exceeds budget"):
        cover.take(1).take(2)


def test_max_root_of_complete_graph(k4):
    solution = max_root_fpt(k4, 0)
    assert solution.root == k4
    assert solution.deletions == 0


def test_max_root_of_path_absent(p3):
    assert max_root_exact(p3) is None
    assert max_root_fpt(p3, 2) is None


def test_max_root_of_c6_square():
    g = compute_square(cycle_graph(range(6)))
    solution = max_root_exact(g)
    assert solution.root == oracle_max_root(g)
    assert solution.deletions == g.m - solution.edge_count
    assert solution.counters["mis_count"] >= 1


def test_max_root_of_disconnected_graph(k3):
    g = disjoint_union([k3, Graph(range(3, 6), [(3, 4), (4, 5), (3, 5)])])
    solution = max_root_fpt(g, 0)
    assert solution.root == g
    assert max_root_exact(g).root == g


def test_maximal_independent_sets_match_networkx():
    g = compute_square(cycle_graph(range(7)))
    p = build_aux_graph(g)
    aux = nx.Graph()
    aux.add_nodes_from(range(p.n))
    aux.add_edges_from(p.edges())
    expected = sorted(tuple(sorted(c)) for c in nx.find_cliques(nx.complement(aux)))
    found = list(enumerate_maximal_independent_sets(p))
    assert sorted(found) == expected
    assert len(found) == len(set(found))
    assert len(found) <= 3 ** -(-p.n // 3)


@pytest.fixture(scope="module")
def corpus(atlas, atlas6, random7):
    """Connected graphs on up to 6 vertices plus sparse 7-vertex graphs, with oracle maxima."""
    graphs = atlas + atlas6 + random7[:150]
    return [(g, oracle_max_root(g)) for g in graphs]


def test_check_root_charact_on_all_spanning_subgraphs(atlas):
    for g in atlas:
        p = build_aux_graph(g)
        edges = g.edges()
        for size in range(len(edges) + 1):
            for subset in combinations(edges, size):
                h = g.spanning_subgraph(subset)
                assert check_root_charact(h, g, p) == is_square_root(h, g), (h, g)


@pytest.mark.parametrize("seed", range(200))
def test_check_root_charact_on_random_pairs(seed):
    rng = np.random.default_rng(seed)
    root = gen_random_connected(int(rng.integers(4, 11)), 0.2, seed)
    g = compute_square(root)
    p = build_aux_graph(g)
    edges = g.edges()
    for draw in range(50):
        keep = rng.random(len(edges)) < 0.6
        # half the draws contain a root, so both answers occur
        h = g.spanning_subgraph(
            e for e, x in zip(edges, keep) if x or (draw % 2 and root.has_edge(*e))
        )
        assert check_root_charact(h, g, p) == is_square_root(h, g), (h, g)


@pytest.mark.parametrize("seed", range(40))
def test_root_extension_stays_a_root(seed):
    rng = np.random.default_rng(seed)
    root = gen_random_connected(int(rng.integers(4, 10)), 0.25, seed)
    g = compute_square(root)
    p = build_aux_graph(g)
    chosen = [p.index_of[e] for e in root.edges()]
    assert p.is_independent(chosen)
    for i in rng.permutation(p.n):
        i = int(i)
        if i in chosen or not p.is_independent(chosen + [i]):
            continue
        chosen.append(i)
        h = g.spanning_subgraph(p.vertices[j] for j in chosen)
        assert is_square_root(h, g), (h, g)


def test_max_root_exact_agrees_with_oracle(corpus):
    for g, expected in corpus:
        exact = max_root_exact(g)
        if expected is None:
            assert exact is None, g
            continue
        assert exact.root == expected, g
        assert exact.counters["mis_count"] <= 3 ** -(-g.m // 3)


def test_max_root_fpt_for_every_budget(corpus):
    for g, expected in corpus:
        needed = None if expected is None else g.m - expected.m
        for k in range(9):
            solution = max_root_fpt(g, k)
            if needed is None or needed > k:
                assert solution is None, (g, k)
                continue
            assert solution.deletions == needed, (g, k)
            assert solution.root == expected
            assert solution.counters["branch_nodes"] <= 2 ** (k + 1)


def test_aingworth_reject_agrees_with_oracle(corpus):
    for g, expected in corpus:
        if g.is_complete():
            continue
        for k in range(g.n - 2):
            assert aingworth_prefilter(g, k) is Prefilter.REJECT
            assert max_root_fpt(g, k) is None
        assert expected is None or g.m - expected.m >= g.n - 2, g


def test_max_root_of_large_complete_graph():
    k50 = complete_graph(range(50))
    solution = max_root_exact(k50)
    assert solution.root == k50
    assert solution.deletions == 0
    assert solution.counters["mis_count"] == 1
    assert max_root_fpt(k50, 0).root == k50


def test_deep_maximal_independent_set():
    g = complete_graph(range(50)).remove_edges([(0, 1)])
    p = build_aux_graph(g)
    assert p.m == 48
    first = next(enumerate_maximal_independent_sets(p))
    assert len(first) == g.m - 48
    assert p.is_independent(list(first))
    assert max_root_fpt(g, 47) is None


def test_max_root_is_deterministic(c7_square):
    first, second = max_root_exact(c7_square), max_root_exact(c7_square)
    assert first.root == second.root
    assert lexicographic_key(first.root) == lexicographic_key(second.root)
    assert max_root_fpt(c7_square, 7) == max_root_fpt(c7_square, 7)
