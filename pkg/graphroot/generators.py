"""
Seeded instance generation.

All randomness comes from numpy's PCG64 bit generator seeded with the
caller's integer seed, so the same parameters and seed produce the same
instance on every platform.
"""

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import List, Tuple, Union

import numpy as np

from .checks import ContractError, _run_checks
from .core import (
    Graph,
    compute_square,
    cycle_graph,
    star_graph,
)
from .definitions import SquareFamily


@dataclass(frozen=True)
class PlantedInstance:
    """A square together with the root it was built from."""

    square: Graph
    planted_root: Graph
    k_true: int
    seed: int


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _prufer_tree(n: int, rng: np.random.Generator) -> List[Tuple[int, int]]:
    """Decode a uniformly random Pruefer sequence into tree edges on 0..n-1."""
    if n < 2:
        return []
    if n == 2:
        return [(0, 1)]
    sequence = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for v in sequence:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in sequence:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def _planted(root: Graph, seed: int) -> PlantedInstance:
    return PlantedInstance(
        square=compute_square(root),
        planted_root=root,
        k_true=root.m - (root.n - 1),
        seed=seed,
    )


def gen_tree_plus_k(n: int, k: int, seed: int) -> PlantedInstance:
    """
    Random tree plus k distinct random extra edges, and its square.

    Raises:
        ContractError: If no graph on n vertices has n - 1 + k edges
    """
    _run_checks({"k": k, "seed": seed})
    if n < 2:
        raise ContractError(f"gen_tree_plus_k needs n >= 2, got {n}")
    spare = n * (n - 1) // 2 - (n - 1)
    if k > spare:
        raise ContractError(f"Cannot add {k} edges to a tree on {n} vertices, at most {spare}")
    rng = _rng(seed)
    tree = _prufer_tree(n, rng)
    taken = {tuple(sorted(e)) for e in tree}
    others = [pair for pair in combinations(range(n), 2) if pair not in taken]
    extra = []
    if k:
        picks = rng.choice(len(others), size=k, replace=False)
        extra = [others[int(i)] for i in sorted(picks)]
    return _planted(Graph(range(n), tree + extra), seed)


def gen_random_connected(n: int, density: float, seed: int) -> Graph:
    """Random spanning tree plus every other pair with probability ``density``."""
    _run_checks({"density": density, "seed": seed})
    if n < 1:
        raise ContractError(f"gen_random_connected needs n >= 1, got {n}")
    rng = _rng(seed)
    tree = _prufer_tree(n, rng)
    taken = {tuple(sorted(e)) for e in tree}
    others = [pair for pair in combinations(range(n), 2) if pair not in taken]
    draws = rng.random(len(others))
    return Graph(range(n), tree + [pair for pair, x in zip(others, draws) if x < density])


def gen_known_square(
    kind: Union[SquareFamily, str], size: Union[int, Tuple[int, int]]
) -> PlantedInstance:
    """
    Family instances with analytically known roots.

    Args:
        kind: ``cycle_square`` (root C_size), ``complete`` (star root) or
            ``union_two_cliques`` (two cliques sharing an edge, tree root)
        size: Vertex count, or clique sizes (a, b) for ``union_two_cliques``

    Raises:
        ContractError: If the size is invalid for the family
    """
    family = SquareFamily(kind)
    if family is SquareFamily.UNION_TWO_CLIQUES:
        a, b = (size, size) if isinstance(size, int) else size
        if a < 3 or b < 3:
            raise ContractError(f"union_two_cliques needs clique sizes >= 3, got {a} and {b}")
        first = list(range(a))
        second = list(range(a, a + b - 2))
        # star at 0 over the first clique, star at 1 over the second
        root = Graph(
            range(a + b - 2),
            [(0, v) for v in first[1:]] + [(1, v) for v in second],
        )
        return _planted(root, 0)
    if not isinstance(size, int):
        raise ContractError(f"{family.value} takes a single size, got {size}")
    if family is SquareFamily.CYCLE_SQUARE:
        if size < 3:
            raise ContractError(f"cycle_square needs size >= 3, got {size}")
        return _planted(cycle_graph(range(size)), 0)
    if size < 1:
        raise ContractError(f"complete needs size >= 1, got {size}")
    return _planted(star_graph(0, range(size)), 0)


def gen_planted_batch(count: int, n_max: int, k_max: int, seed: int) -> List[PlantedInstance]:
    """
    Draw ``count`` tree-plus-k instances with 4 <= n <= n_max and k <= k_max.

    Instance i uses seed ``seed + i``; the sizes come from a generator seeded
    with ``seed``.
    """
    _run_checks({"count": count, "n_max": n_max, "k": k_max, "seed": seed})
    n_min = min(4, n_max)
    rng = _rng(seed)
    batch = []
    for i in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        spare = n * (n - 1) // 2 - (n - 1)
        k = min(int(rng.integers(0, k_max + 1)), spare)
        batch.append(gen_tree_plus_k(n, k, seed + i))
    return batch
