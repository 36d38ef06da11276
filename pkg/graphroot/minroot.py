import logging
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

import networkx as nx

from .checks import ContractError, IntegrityError, _run_checks
from .core import (
    Graph,
    RootSolution,
    _iter_bits,
    _popcount,
    connectivity_profile,
    edge,
    is_square_root,
    star_graph,
)
from .definitions import RuleStatus, rule_count_keys
from .maxroot import build_aux_graph
from .rules import (
    LabeledInstance,
    PathRecord,
    Record,
    SimplicialRecord,
    TrimRecord,
    TrimSite,
    apply_path_reduction_rule,
    apply_simplicial_reduction,
    apply_trimming_rule,
    find_trim_site,
    kernel_vertex_bound,
    replay_record,
)

logger = logging.getLogger(__name__)


def _require_connected(g: Graph, operation: str) -> None:
    profile = connectivity_profile(g)
    if not profile.is_connected:
        raise ContractError(
            f"{operation} needs a connected graph, got {len(profile.components)} components"
        )


def _grow_tree(
    g: Graph, cliques: List[FrozenSet[int]], links: Dict[int, List[int]], center: int
) -> Optional[Graph]:
    """Propagate star centres across cliques that share exactly two vertices."""
    centers = {0: center}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in links[i]:
            shared = cliques[i] & cliques[j]
            if centers[i] not in shared:
                return None
            other = next(v for v in shared if v != centers[i])
            if j in centers:
                if centers[j] != other:
                    return None
                continue
            centers[j] = other
            queue.append(j)
    if len(centers) != len(cliques):
        return None
    return Graph(
        g.vertices,
        {edge(c, x) for i, c in centers.items() for x in cliques[i] if x != c},
    )


def has_tree_square_root(g: Graph) -> Optional[Graph]:
    """
    Find a spanning tree whose square is ``g``.

    In the square of a tree that is not a star, the maximal cliques are the
    closed neighborhoods of the internal vertices, and two of them share
    exactly two vertices iff their centres are adjacent. Centres are guessed
    in one clique and propagated along those links; the result is verified.

    Raises:
        ContractError: If ``g`` is disconnected
    """
    _require_connected(g, "has_tree_square_root")
    if g.n <= 2:
        return g
    if g.is_complete():
        return star_graph(g.vertices[0], g.vertices)

    cliques: List[FrozenSet[int]] = []
    for q in nx.find_cliques(g.nx_view):
        cliques.append(frozenset(q))
        if len(cliques) > g.n:
            return None
    cliques.sort(key=sorted)
    links: Dict[int, List[int]] = {i: [] for i in range(len(cliques))}
    for i in range(len(cliques)):
        for j in range(i + 1, len(cliques)):
            if len(cliques[i] & cliques[j]) == 2:
                links[i].append(j)
                links[j].append(i)

    for center in sorted(cliques[0]):
        tree = _grow_tree(g, cliques, links, center)
        if tree is not None and tree.m == g.n - 1 and is_square_root(tree, g):
            return tree
    return None


@dataclass
class ReductionTrace:
    """Journal of rule applications, in the order they were applied."""

    records: List[Record] = field(default_factory=list)
    late_trim_sites: List[TrimSite] = field(default_factory=list)

    def rule_counts(self) -> Dict[str, int]:
        counts = dict.fromkeys(rule_count_keys, 0)
        for record in self.records:
            if isinstance(record, TrimRecord):
                counts["trim"] += 1
            elif isinstance(record, PathRecord):
                counts["path"] += 1
            else:
                counts["simplicial"] += 1
                counts["simplicial_deleted"] += len(record.deleted)
        return counts


@dataclass(frozen=True)
class KernelResult:
    """Either a kernel instance or a no-answer, with the trace that led there."""

    instance: Optional[LabeledInstance]
    trace: ReductionTrace
    rejected_by: Optional[str] = None

    @property
    def is_no(self) -> bool:
        return self.instance is None


def kernelize(g: Graph, k: int) -> KernelResult:
    """
    Reduce (g, k) to a labeled kernel instance.

    Trimming runs to exhaustion, then path reduction runs to exhaustion,
    then the simplicial rule runs once. Rules are never re-run.

    Args:
        g: 2-connected graph without a tree square root
        k: Budget of edges beyond a spanning tree, at least 1

    Returns:
        KernelResult; ``instance`` is None when some rule answered no

    Raises:
        ContractError: If a precondition on ``g`` or ``k`` does not hold
        IntegrityError: If the kernel exceeds its vertex bound
    """
    _run_checks({"k": k})
    if k < 1:
        raise ContractError(f"kernelize needs k >= 1, got {k}")
    profile = connectivity_profile(g)
    if not profile.is_connected:
        raise ContractError(
            f"kernelize needs a connected graph, got {len(profile.components)} components"
        )
    if not profile.is_two_connected:
        raise ContractError("kernelize needs a 2-connected graph")
    if has_tree_square_root(g) is not None:
        raise ContractError("kernelize needs a graph without a tree square root")

    inst = LabeledInstance(g, k)
    trace = ReductionTrace()
    for name, rule in (("trim", apply_trimming_rule), ("path", apply_path_reduction_rule)):
        while True:
            outcome = rule(inst)
            if outcome.status is RuleStatus.NOT_APPLICABLE:
                break
            if outcome.status is RuleStatus.NO_ANSWER:
                logger.info("%s rule answered no: %s", name, outcome.reason)
                return KernelResult(None, trace, rejected_by=f"{name}: {outcome.reason}")
            inst = outcome.instance
            trace.records.append(outcome.record)

    late = find_trim_site(inst.graph)
    if late is not None:
        trace.late_trim_sites.append(late)
        logger.info("trim site %s reappeared after path reduction", late.pair)

    outcome = apply_simplicial_reduction(inst)
    if outcome.status is RuleStatus.NO_ANSWER:
        logger.info("simplicial rule answered no: %s", outcome.reason)
        return KernelResult(None, trace, rejected_by=f"simplicial: {outcome.reason}")
    inst = outcome.instance
    trace.records.append(outcome.record)

    bound = kernel_vertex_bound(k)
    if inst.graph.n > bound:
        raise IntegrityError(f"Kernel has {inst.graph.n} vertices, bound is {bound}")
    logger.debug("kernel: %d vertices, %d edges, counts %s", inst.graph.n, inst.graph.m, trace.rule_counts())
    return KernelResult(inst, trace)


def replay_trace(g: Graph, k: int, trace: ReductionTrace) -> LabeledInstance:
    """Re-apply every journaled rule application starting from (g, k, {}, {})."""
    inst = LabeledInstance(g, k)
    for record in trace.records:
        inst = replay_record(inst, record)
    return inst


@dataclass
class _SearchState:
    chosen: int
    excluded: int
    possible: List[int]
    adj: List[int]
    excess: int = 0

    def copy(self) -> "_SearchState":
        return _SearchState(
            self.chosen, self.excluded, list(self.possible), list(self.adj), self.excess
        )


def _linked(adj: List[int], a: int, b: int) -> bool:
    seen = frontier = 1 << a
    while frontier and not (seen >> b) & 1:
        reach = 0
        for v in _iter_bits(frontier):
            reach |= adj[v]
        frontier = reach & ~seen
        seen |= reach
    return bool((seen >> b) & 1)


class _LabeledSearch:
    """
    Include-before-exclude search over the edges of a labeled instance.

    An included edge excludes its auxiliary-graph neighbours; an excluded
    edge must leave every incident graph edge reachable by a path of length
    at most two; edges closing cycles are limited to k.
    """

    def __init__(self, inst: LabeledInstance) -> None:
        g = inst.graph
        _, index, masks = g.bitsets
        aux = build_aux_graph(g)
        self.inst = inst
        self.edges = list(aux.vertices)
        self.ends = [(index[e.u], index[e.v]) for e in self.edges]
        self.gmasks = masks
        self.conflicts = aux.masks
        self.required_mask = sum(1 << aux.index_of[e] for e in inst.required)
        self.blocked = [aux.index_of[e] for e in sorted(inst.blocked)]
        self.budget = g.n - 1 + inst.k
        self.nodes = 0

    def _coverable(self, s: _SearchState, x: int) -> bool:
        px = s.possible[x]
        for z in _iter_bits(self.gmasks[x]):
            if not (px >> z) & 1 and not px & s.possible[z]:
                return False
        return True

    def exclude(self, s: _SearchState, i: int) -> bool:
        if (s.chosen >> i) & 1 or (self.required_mask >> i) & 1:
            return False
        if (s.excluded >> i) & 1:
            return True
        s.excluded |= 1 << i
        a, b = self.ends[i]
        s.possible[a] &= ~(1 << b)
        s.possible[b] &= ~(1 << a)
        return self._coverable(s, a) and self._coverable(s, b)

    def include(self, s: _SearchState, i: int) -> bool:
        if (s.excluded >> i) & 1:
            return False
        if (s.chosen >> i) & 1:
            return True
        if self.conflicts[i] & s.chosen:
            return False
        a, b = self.ends[i]
        if _linked(s.adj, a, b):
            s.excess += 1
            if s.excess > self.inst.k:
                return False
        s.chosen |= 1 << i
        if _popcount(s.chosen) > self.budget:
            return False
        s.adj[a] |= 1 << b
        s.adj[b] |= 1 << a
        return all(self.exclude(s, j) for j in _iter_bits(self.conflicts[i] & ~s.excluded))

    def start(self) -> Optional[_SearchState]:
        n = self.inst.graph.n
        s = _SearchState(0, 0, list(self.gmasks), [0] * n)
        if not all(self.include(s, i) for i in _iter_bits(self.required_mask)):
            return None
        if not all(self.exclude(s, i) for i in self.blocked):
            return None
        if not all(self._coverable(s, x) for x in range(n)):
            return None
        return s

    def search(self, s: _SearchState, pos: int) -> Optional[Graph]:
        self.nodes += 1
        m = len(self.edges)
        decided = s.chosen | s.excluded
        if _popcount(s.chosen) + m - _popcount(decided) < self.inst.graph.n - 1:
            return None
        i = pos
        while i < m and (decided >> i) & 1:
            i += 1
        if i == m:
            return self._leaf(s)
        branch = s.copy()
        if self.include(branch, i):
            found = self.search(branch, i + 1)
            if found is not None:
                return found
        branch = s.copy()
        if self.exclude(branch, i):
            return self.search(branch, i + 1)
        return None

    def _leaf(self, s: _SearchState) -> Optional[Graph]:
        g = self.inst.graph
        h = g.spanning_subgraph(e for i, e in enumerate(self.edges) if (s.chosen >> i) & 1)
        if h.m <= self.budget and is_square_root(h, g):
            return h
        return None


def solve_labeled(inst: LabeledInstance) -> Optional[Graph]:
    """
    Find a solution of a (kernel-sized) labeled instance by exhaustive search.

    Returns:
        Spanning subgraph H with all required and no blocked edges, at most
        n - 1 + k edges and H squared equal to the instance graph, or None
    """
    search = _LabeledSearch(inst)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(search.edges) + 1000))
    state = search.start()
    found = search.search(state, 0) if state is not None else None
    logger.debug("labeled search visited %d nodes", search.nodes)
    return found


def _undo_simplicial(record: SimplicialRecord, root: Graph) -> Graph:
    for cls in record.classes:
        anchor_x = None
        if cls.x_deleted:
            rep = cls.representative
            if rep is None or not root.has_vertex(rep) or root.degree(rep) != 1:
                raise IntegrityError(f"Twin representative {rep} is not a pendant of the root")
            (anchor_x,) = root.neighbors(rep)
        if cls.t_deleted:
            pendants = [v for v in cls.survivors if root.has_vertex(v) and root.degree(v) == 1]
            if not pendants:
                raise IntegrityError(f"Twin class {cls.survivors} has no pendant in the root")
            (anchor_t,) = root.neighbors(pendants[0])
            root = root.add_vertices(cls.t_deleted, [(t, anchor_t) for t in cls.t_deleted])
        if anchor_x is not None:
            root = root.add_vertices(cls.x_deleted, [(x, anchor_x) for x in cls.x_deleted])
    return root


def _undo_path(record: PathRecord, root: Graph) -> Graph:
    if not root.has_edge(record.u1, record.u3):
        raise IntegrityError(
            f"Root lacks edge {record.u1}-{record.u3} required by path reduction"
        )
    spokes = [(record.u2, w) for w in (record.u1, record.u3) + record.pendants]
    return root.remove_edges([(record.u1, record.u3)]).add_vertices(record.deleted, spokes)


def _undo_trim(record: TrimRecord, root: Graph) -> Graph:
    if not root.has_vertex(record.u1):
        raise IntegrityError(f"Root lacks trimmed anchor {record.u1}")
    return root.add_vertices(record.deleted, [(record.u1, w) for w in record.deleted])


def lift_solution(kernel_root: Graph, trace: ReductionTrace) -> Graph:
    """
    Turn a solution of the kernel into a root of the original graph.

    Records are undone in reverse: deleted twins come back as false twins
    of a pendant, path reductions give back the centre and its pendants,
    trims give back the clique hanging at u1.

    Raises:
        IntegrityError: If the root does not fit the trace
    """
    root = kernel_root
    for record in reversed(trace.records):
        if isinstance(record, SimplicialRecord):
            root = _undo_simplicial(record, root)
        elif isinstance(record, PathRecord):
            root = _undo_path(record, root)
        else:
            root = _undo_trim(record, root)
    return root


def min_square_root(g: Graph, k: int) -> Optional[RootSolution]:
    """
    Find a square root of ``g`` with at most n - 1 + k edges.

    Args:
        g: Connected graph
        k: Number of edges allowed beyond a spanning tree

    Returns:
        Verified RootSolution, or None when no such root exists

    Raises:
        ContractError: If ``g`` is disconnected
        IntegrityError: If the lifted root fails verification
    """
    _run_checks({"k": k})
    _require_connected(g, "min_square_root")

    tree = has_tree_square_root(g)
    if tree is not None:
        return RootSolution(root=tree, edge_count=tree.m, trace=ReductionTrace())
    if k == 0:
        logger.info("no tree square root and k = 0")
        return None
    if g.n >= 3 and not connectivity_profile(g).is_two_connected:
        logger.info("graph is not 2-connected, so it has no square root")
        return None

    result = kernelize(g, k)
    if result.instance is None:
        return None
    kernel_root = solve_labeled(result.instance)
    if kernel_root is None:
        logger.info("kernel of %d vertices has no solution", result.instance.graph.n)
        return None

    root = lift_solution(kernel_root, result.trace)
    if root.vertices != g.vertices or not is_square_root(root, g):
        raise IntegrityError("Lifted root does not square to the input graph")
    if root.m > g.n - 1 + k:
        raise IntegrityError(f"Lifted root has {root.m} edges, budget is {g.n - 1 + k}")
    return RootSolution(
        root=root,
        edge_count=root.m,
        kernel_root=kernel_root,
        trace=result.trace,
        counters={"kernel_vertices": result.instance.graph.n},
    )
