import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .checks import ContractError, IntegrityError, OracleCapError, _run_checks
from .core import (
    Edge,
    Graph,
    _square_masks,
    connectivity_profile,
    edge,
    is_square_root,
    lexicographic_key,
)
from .definitions import ORACLE_EDGE_CAP

logger = logging.getLogger(__name__)

default_kwargs: Dict[str, Any] = {
    "edge_cap": ORACLE_EDGE_CAP,
    "jobs": 1,
}


@dataclass(frozen=True)
class OracleQuery:
    graph: Graph
    min_edges: int
    max_edges: int
    required: FrozenSet[Edge] = frozenset()
    blocked: FrozenSet[Edge] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "required", frozenset(edge(*e) for e in self.required))
        object.__setattr__(self, "blocked", frozenset(edge(*e) for e in self.blocked))
        if self.min_edges > self.max_edges:
            raise ContractError(
                f"min_edges ({self.min_edges}) must be <= max_edges ({self.max_edges})"
            )
        if self.required & self.blocked:
            raise ContractError("Required and blocked edges must be disjoint")


def _check_cap(g: Graph, cap: int) -> None:
    if g.m > cap:
        raise OracleCapError(
            f"Oracle enumerates at most {cap} edges, graph has {g.m}"
        )


def _squares_to(
    n: int, target: Sequence[int], ends: Sequence[Tuple[int, int]], chosen: Iterable[int]
) -> bool:
    masks = [0] * n
    for i in chosen:
        a, b = ends[i]
        masks[a] |= 1 << b
        masks[b] |= 1 << a
    return _square_masks(tuple(masks)) == list(target)


def _verified(h: Graph, g: Graph) -> Graph:
    if not is_square_root(h, g):
        raise IntegrityError(f"Oracle emitted a non-root {h!r}")
    return h


def _scan_chunk(args: Tuple[Any, ...]) -> List[Tuple[int, ...]]:
    """Check subset masks ``lo`` to ``hi`` of the free edges; top level for pickling."""
    n, target, ends, fixed, free, lo, hi, min_free, max_free = args
    found = []
    for mask in range(lo, hi):
        size = bin(mask).count("1")
        if size < min_free or size > max_free:
            continue
        chosen = fixed + tuple(free[j] for j in range(len(free)) if (mask >> j) & 1)
        if _squares_to(n, target, ends, chosen):
            found.append(tuple(sorted(chosen)))
    return found


def _enumerate_roots(q: OracleQuery, **kwargs: Any) -> Tuple[List[Graph], int]:
    """
    Enumerate every admissible root.

    Returns:
        Roots in lexicographic order and the number of subsets examined,
        which is 2 to the number of unlabeled edges
    """
    params = {**default_kwargs, **kwargs}
    _run_checks(params)
    g = q.graph
    _check_cap(g, params["edge_cap"])

    edges = g.edges()
    _, index, target = g.bitsets
    ends = tuple((index[e.u], index[e.v]) for e in edges)
    fixed = tuple(i for i, e in enumerate(edges) if e in q.required)
    free = tuple(
        i for i, e in enumerate(edges) if e not in q.required and e not in q.blocked
    )
    total = 1 << len(free)
    jobs = params["jobs"]
    step = -(-total // jobs)
    chunks = [
        (
            g.n,
            target,
            ends,
            fixed,
            free,
            lo,
            min(lo + step, total),
            q.min_edges - len(fixed),
            q.max_edges - len(fixed),
        )
        for lo in range(0, total, step)
    ]
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, chunks))
    else:
        parts = [_scan_chunk(c) for c in chunks]

    roots = sorted(
        (
            _verified(g.spanning_subgraph(edges[i] for i in chosen), g)
            for part in parts
            for chosen in part
        ),
        key=lexicographic_key,
    )
    logger.debug("oracle examined %d subsets, found %d roots", total, len(roots))
    return roots, total


def oracle_enumerate_roots(q: OracleQuery, **kwargs: Any) -> List[Graph]:
    """
    All spanning subgraphs admitted by ``q`` that square to its graph.

    Args:
        q: Query with edge-count bounds and edge labels
        edge_cap: Largest edge count accepted
        jobs: Worker processes splitting the subset range

    Raises:
        OracleCapError: If the graph has more edges than ``edge_cap``
    """
    roots, _ = _enumerate_roots(q, **kwargs)
    return roots


def _first_root_of_size(g: Graph, size: int) -> Optional[Graph]:
    edges = g.edges()
    _, index, target = g.bitsets
    ends = [(index[e.u], index[e.v]) for e in edges]
    for chosen in combinations(range(len(edges)), size):
        if _squares_to(g.n, target, ends, chosen):
            return _verified(g.spanning_subgraph(edges[i] for i in chosen), g)
    return None


def oracle_min_root(g: Graph, k: int, **kwargs: Any) -> Optional[Graph]:
    """
    Root with the fewest edges if that count is at most n - 1 + k.

    Sizes are tried upward from n - 1; within a size the lexicographically
    first subset wins.

    Raises:
        ContractError: If ``g`` is disconnected
        OracleCapError: If the graph has more edges than ``edge_cap``
    """
    params = {**default_kwargs, **kwargs}
    _run_checks({**params, "k": k})
    _check_cap(g, params["edge_cap"])
    profile = connectivity_profile(g)
    if not profile.is_connected:
        raise ContractError(
            f"oracle_min_root needs a connected graph, got {len(profile.components)} components"
        )
    for size in range(max(g.n - 1, 0), min(g.n - 1 + k, g.m) + 1):
        root = _first_root_of_size(g, size)
        if root is not None:
            return root
    return None


def oracle_max_root(g: Graph, **kwargs: Any) -> Optional[Graph]:
    """
    Root with the most edges; sizes are tried downward from m.

    Raises:
        OracleCapError: If the graph has more edges than ``edge_cap``
    """
    params = {**default_kwargs, **kwargs}
    _run_checks(params)
    _check_cap(g, params["edge_cap"])
    for size in range(g.m, -1, -1):
        root = _first_root_of_size(g, size)
        if root is not None:
            return root
    return None
