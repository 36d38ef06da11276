import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from .checks import ContractError, IntegrityError, _run_checks
from .core import (
    Edge,
    Graph,
    RootSolution,
    _iter_bits,
    _popcount,
    component_subgraphs,
    connectivity_profile,
    disjoint_union,
    edge,
    is_square_root,
    lexicographic_key,
)
from .definitions import Prefilter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AuxGraph:
    """
    Auxiliary graph whose vertices are the edges of ``base``.

    Edges xy and yz are adjacent exactly when xz is not an edge of ``base``,
    so a square root is an independent set here.
    """

    base: Graph
    vertices: Tuple[Edge, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    index_of: Dict[Edge, int]
    masks: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    def is_independent(self, indices: List[int]) -> bool:
        chosen = sum(1 << i for i in indices)
        return all(not self.masks[i] & chosen for i in indices)


@dataclass(frozen=True)
class CoverBudget:
    """Auxiliary vertices chosen for deletion along one branch."""

    k: int
    chosen: FrozenSet[int] = frozenset()

    def __post_init__(self) -> None:
        if len(self.chosen) > self.k:
            raise IntegrityError(f"Cover of size {len(self.chosen)} exceeds budget {self.k}")

    @property
    def exhausted(self) -> bool:
        return len(self.chosen) == self.k

    def take(self, i: int) -> "CoverBudget":
        return CoverBudget(self.k, self.chosen | {i})

    def covers(self, i: int, j: int) -> bool:
        return i in self.chosen or j in self.chosen


def build_aux_graph(g: Graph) -> AuxGraph:
    """Build the auxiliary graph; its vertices follow the order of ``g.edges()``."""
    vertices = tuple(g.edges())
    index_of = {e: i for i, e in enumerate(vertices)}
    adj: List[set] = [set() for _ in vertices]
    for y in g.vertices:
        for x, z in combinations(sorted(g.neighbors(y)), 2):
            if not g.has_edge(x, z):
                i, j = index_of[edge(x, y)], index_of[edge(y, z)]
                adj[i].add(j)
                adj[j].add(i)
    return AuxGraph(
        base=g,
        vertices=vertices,
        adjacency=tuple(tuple(sorted(nbrs)) for nbrs in adj),
        index_of=index_of,
        masks=tuple(sum(1 << j for j in nbrs) for nbrs in adj),
    )


def check_root_charact(h: Graph, g: Graph, p: AuxGraph) -> bool:
    """
    Decide whether ``h`` is a square root of ``g`` via the auxiliary graph.

    ``h`` is a root iff its edges are independent in ``p`` and every pair
    adjacent in ``g`` is at distance at most two in ``h``.

    Raises:
        ContractError: If ``h`` is not a spanning subgraph of ``g`` or ``p``
            was built from another graph
    """
    if h.vertices != g.vertices or not h.edge_set <= g.edge_set:
        raise ContractError("Root candidate must be a spanning subgraph of the graph")
    if p.base != g:
        raise ContractError("Auxiliary graph was built from a different graph")
    if not p.is_independent([p.index_of[e] for e in h.edges()]):
        return False
    _, index, hm = h.bitsets
    for e in g.edges():
        a, b = index[e.u], index[e.v]
        if not (hm[a] >> b) & 1 and not hm[a] & hm[b]:
            return False
    return True


def aingworth_prefilter(g: Graph, k: int) -> Prefilter:
    """
    Quick verdict from the fact that a root of a non-complete graph on n
    vertices misses at least n - 2 of its edges.

    Raises:
        ContractError: If ``g`` is disconnected
    """
    if not connectivity_profile(g).is_connected:
        raise ContractError("Prefilter applies to connected graphs; split components first")
    if g.is_complete():
        return Prefilter.TRIVIAL_YES
    if k < g.n - 2:
        return Prefilter.REJECT
    return Prefilter.PASS


def _branch_component(part: Graph, budget: int) -> Tuple[Optional[Graph], int]:
    """
    Bounded search over vertex covers of the auxiliary graph of one component.

    Only leaves whose chosen set covers every auxiliary edge are checked; a
    root obtained from a larger cover extends the root of a leaf it contains.

    Returns:
        Best root (fewest deletions, then smallest edge tuple) and node count
    """
    p = build_aux_graph(part)
    p_edges = p.edges()
    best: Optional[Tuple[Tuple[int, Tuple[Edge, ...]], Graph]] = None
    nodes = 0

    def branch(cover: CoverBudget) -> None:
        nonlocal best, nodes
        nodes += 1
        uncovered = next(((i, j) for i, j in p_edges if not cover.covers(i, j)), None)
        if uncovered is None:
            h = part.spanning_subgraph(
                e for i, e in enumerate(p.vertices) if i not in cover.chosen
            )
            if check_root_charact(h, part, p):
                key = (len(cover.chosen), lexicographic_key(h))
                if best is None or key < best[0]:
                    best = (key, h)
            return
        if cover.exhausted:
            return
        i, j = uncovered
        branch(cover.take(i))
        branch(cover.take(j))

    branch(CoverBudget(budget))
    if nodes > 2 ** (budget + 1):
        raise IntegrityError(f"Branching visited {nodes} nodes with budget {budget}")
    return (best[1] if best is not None else None), nodes


def max_root_fpt(g: Graph, k: int) -> Optional[RootSolution]:
    """
    Find a square root obtained by deleting at most ``k`` edges, deleting as
    few as possible.

    Components are solved independently, each with the budget left over by
    the components before it.

    Args:
        g: Graph, possibly disconnected
        k: Maximum number of deleted edges

    Returns:
        RootSolution with ``deletions`` set, or None
    """
    _run_checks({"k": k})
    roots: List[Graph] = []
    left = k
    nodes = 0
    for part in component_subgraphs(g):
        verdict = aingworth_prefilter(part, left)
        if verdict is Prefilter.TRIVIAL_YES:
            roots.append(part)
            continue
        if verdict is Prefilter.REJECT:
            logger.info(
                "component of %d vertices needs at least %d deletions, %d left",
                part.n,
                part.n - 2,
                left,
            )
            return None
        root, visited = _branch_component(part, left)
        nodes += visited
        if root is None:
            return None
        left -= part.m - root.m
        roots.append(root)
    root = disjoint_union(roots)
    logger.debug("branching visited %d nodes", nodes)
    return RootSolution(
        root=root,
        edge_count=root.m,
        deletions=g.m - root.m,
        counters={"branch_nodes": nodes},
    )


def enumerate_maximal_independent_sets(p: AuxGraph) -> Iterator[Tuple[int, ...]]:
    """
    Yield every maximal independent set of ``p`` exactly once.

    Pivoting Bron-Kerbosch on the complement: each branch adds one vertex of
    the candidates that lies in the closed neighborhood of the pivot, and the
    pivot minimizes that branching set. The search keeps an explicit stack of
    ``[current, cand, excl, branches]`` frames, so its depth is not bounded by
    the interpreter's recursion limit.
    """
    closed = [p.masks[i] | (1 << i) for i in range(p.n)]

    def frame(current: Tuple[int, ...], cand: int, excl: int) -> List:
        pivot = min(_iter_bits(cand | excl), key=lambda u: (_popcount(cand & closed[u]), u))
        return [current, cand, excl, cand & closed[pivot]]

    if not p.n:
        yield ()
        return
    stack = [frame((), (1 << p.n) - 1, 0)]
    while stack:
        top = stack[-1]
        current, cand, excl, branches = top
        if not branches:
            stack.pop()
            continue
        low = branches & -branches
        v = low.bit_length() - 1
        top[1], top[2], top[3] = cand & ~low, excl | low, branches ^ low
        chosen = current + (v,)
        next_cand, next_excl = cand & ~closed[v], excl & ~closed[v]
        if not next_cand and not next_excl:
            yield tuple(sorted(chosen))
        elif next_cand:
            stack.append(frame(chosen, next_cand, next_excl))


def max_root_exact(g: Graph) -> Optional[RootSolution]:
    """
    Maximum square root via maximal independent sets of the auxiliary graph.

    Ties between roots of equal size go to the smallest edge tuple.
    """
    roots: List[Graph] = []
    total = 0
    for part in component_subgraphs(g):
        if part.is_complete():
            # no auxiliary edges, so the whole edge set is the only maximal set
            roots.append(part)
            total += 1
            continue
        p = build_aux_graph(part)
        best: Optional[Graph] = None
        count = 0
        for independent in enumerate_maximal_independent_sets(p):
            count += 1
            h = part.spanning_subgraph(p.vertices[i] for i in independent)
            if not is_square_root(h, part):
                continue
            if best is None or (-h.m, lexicographic_key(h)) < (-best.m, lexicographic_key(best)):
                best = h
        if count > 3 ** -(-part.m // 3):
            raise IntegrityError(f"{count} maximal independent sets exceed the bound for m={part.m}")
        total += count
        if best is None:
            logger.info("no maximal independent set of a %d-vertex component is a root", part.n)
            return None
        roots.append(best)
    root = disjoint_union(roots)
    return RootSolution(
        root=root,
        edge_count=root.m,
        deletions=g.m - root.m,
        counters={"mis_count": total},
    )
