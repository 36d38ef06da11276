import logging
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple, Union

import networkx as nx

from .checks import ContractError, IntegrityError
from .core import (
    Edge,
    Graph,
    _is_clique,
    edge,
    simplicial_vertices,
    true_twin_partition,
)
from .definitions import Origin, RuleStatus

logger = logging.getLogger(__name__)


def non_pendant_bound(k: int) -> int:
    """
    Upper bound on the number of non-pendant vertices of a solution.

    For k = 1 the non-pendant part of a solution is one cycle of length at
    most 6, which exceeds 15k - 14.

    Raises:
        ContractError: If k < 1
    """
    if k < 1:
        raise ContractError(f"Budget k must be at least 1 for kernel bounds, got {k}")
    return max(15 * k - 14, 6)


def kernel_vertex_bound(k: int) -> int:
    """Maximum vertex count of a kernel instance; (15k-14)(15k-12) for k >= 2."""
    b = non_pendant_bound(k)
    return b * (b + 2)


@dataclass(frozen=True)
class LabeledInstance:
    """
    Instance (G, k, R, B) of the labeled problem.

    ``required`` maps each required edge to the rule that introduced it;
    TRIM edges form R1 and PATH edges form R2.
    """

    graph: Graph
    k: int
    required: Mapping[Edge, Origin] = field(default_factory=dict)
    blocked: FrozenSet[Edge] = frozenset()

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ContractError(f"Budget k must be non-negative, got {self.k}")
        required = {edge(*e): Origin(o) for e, o in self.required.items()}
        blocked = frozenset(edge(*e) for e in self.blocked)
        object.__setattr__(self, "required", dict(sorted(required.items())))
        object.__setattr__(self, "blocked", blocked)
        clash = set(required) & blocked
        if clash:
            raise ContractError(
                f"Edges both required and blocked: {sorted(tuple(e) for e in clash)}"
            )
        stray = [e for e in chain(required, blocked) if not self.graph.has_edge(*e)]
        if stray:
            raise ContractError(
                f"Labeled edges outside the graph: {sorted(tuple(e) for e in stray)}"
            )

    @property
    def required_edges(self) -> FrozenSet[Edge]:
        return frozenset(self.required)

    @property
    def r1(self) -> FrozenSet[Edge]:
        return frozenset(e for e, o in self.required.items() if o is Origin.TRIM)

    @property
    def r2(self) -> FrozenSet[Edge]:
        return frozenset(e for e, o in self.required.items() if o is Origin.PATH)


@dataclass(frozen=True)
class TrimRecord:
    u1: int
    u2: int
    deleted: Tuple[int, ...]
    r: int


@dataclass(frozen=True)
class PathRecord:
    u1: int
    u2: int
    u3: int
    # u2 first, then the pendant clique vertices u4..ur
    deleted: Tuple[int, ...]
    x_set: Tuple[int, ...]
    y_set: Tuple[int, ...]

    @property
    def pendants(self) -> Tuple[int, ...]:
        return self.deleted[1:]


@dataclass(frozen=True)
class TwinClassRecord:
    """Deletions inside one true twin class of the simplicial rule."""

    survivors: Tuple[int, ...]
    representative: Optional[int]
    x_deleted: Tuple[int, ...]
    t_deleted: Tuple[int, ...]

    @property
    def deleted(self) -> Tuple[int, ...]:
        return self.x_deleted + self.t_deleted


@dataclass(frozen=True)
class SimplicialRecord:
    classes: Tuple[TwinClassRecord, ...]

    @property
    def deleted(self) -> Tuple[int, ...]:
        return tuple(sorted(v for c in self.classes for v in c.deleted))


Record = Union[TrimRecord, PathRecord, SimplicialRecord]


@dataclass(frozen=True)
class RuleOutcome:
    status: RuleStatus
    instance: Optional[LabeledInstance] = None
    record: Optional[Record] = None
    reason: str = ""

    @classmethod
    def no_answer(cls, reason: str) -> "RuleOutcome":
        return cls(RuleStatus.NO_ANSWER, reason=reason)

    @classmethod
    def not_applicable(cls) -> "RuleOutcome":
        return cls(RuleStatus.NOT_APPLICABLE)

    @classmethod
    def reduced(cls, instance: LabeledInstance, record: Record) -> "RuleOutcome":
        return cls(RuleStatus.REDUCED, instance=instance, record=record)


@dataclass(frozen=True)
class TrimSite:
    pair: Tuple[int, int]
    component: Tuple[int, ...]


@dataclass(frozen=True)
class FTriple:
    u1: int
    u2: int
    u3: int
    pendants: Tuple[int, ...]
    x_set: Tuple[int, ...]
    y_set: Tuple[int, ...]


def _drop_incident(
    required: Mapping[Edge, Origin], blocked: Iterable[Edge], gone: Iterable[int]
) -> Tuple[Dict[Edge, Origin], Set[Edge]]:
    """Remove labeled edges that touch deleted vertices."""
    dead = set(gone)
    req = {e: o for e, o in required.items() if e.u not in dead and e.v not in dead}
    blk = {e for e in blocked if e.u not in dead and e.v not in dead}
    return req, blk


def _edges_str(edges: Iterable[Edge]) -> str:
    return ", ".join(f"{e.u}-{e.v}" for e in sorted(edges))


def find_trim_site(g: Graph) -> Optional[TrimSite]:
    """
    Find an adjacent pair S whose removal splits off a clique component C
    such that S and C together form a clique.

    Every vertex of such a component is simplicial with closed neighborhood
    S + C, so candidates are read off the closed neighborhoods of simplicial
    vertices.

    Returns:
        Site with the lexicographically smallest pair, or None
    """
    sites: List[TrimSite] = []
    seen: Set[FrozenSet[int]] = set()
    for c in sorted(simplicial_vertices(g)):
        clique = g.closed_neighborhood(c)
        if clique in seen or len(clique) < 3:
            continue
        seen.add(clique)
        twins = {w for w in clique if g.closed_neighborhood(w) == clique}
        outside = clique - twins
        if len(outside) > 2:
            continue
        for pair in combinations(sorted(clique), 2):
            if outside <= set(pair):
                sites.append(TrimSite(pair, tuple(sorted(clique - set(pair)))))
    return min(sites, key=lambda s: (s.pair, s.component), default=None)


def _is_trim_site(g: Graph, pair: Tuple[int, int], component: Iterable[int]) -> bool:
    comp = set(component)
    clique = comp | set(pair)
    if not comp or not all(g.has_vertex(v) for v in clique):
        return False
    return all(g.closed_neighborhood(w) == clique for w in comp) and _is_clique(g, clique)


def _trim_at(inst: LabeledInstance, u1: int, u2: int, component: Tuple[int, ...]) -> RuleOutcome:
    g = inst.graph
    n1, n2 = g.closed_neighborhood(u1), g.closed_neighborhood(u2)
    if n1 == n2:
        return RuleOutcome.no_answer(f"trim site {u1}-{u2}: equal closed neighborhoods")
    if n1 - n2 and n2 - n1:
        return RuleOutcome.no_answer(f"trim site {u1}-{u2}: incomparable closed neighborhoods")
    if n1 - n2:
        u1, u2 = u2, u1

    tail = (u2,) + tuple(component)
    r_new = {edge(u1, w) for w in tail}
    b_new = {edge(a, b) for a, b in combinations(tail, 2)}
    b_new |= {edge(u1, x) for x in g.neighbors(u1) - set(tail)}

    clash = (inst.required_edges & b_new) | (r_new & inst.blocked)
    if clash:
        return RuleOutcome.no_answer(f"trim site {u1}-{u2}: label clash on {_edges_str(clash)}")

    required = dict(inst.required)
    for e in r_new:
        required.setdefault(e, Origin.TRIM)
    required, blocked = _drop_incident(required, inst.blocked | b_new, component)
    instance = LabeledInstance(g.remove_vertices(component), inst.k, required, frozenset(blocked))
    record = TrimRecord(u1=u1, u2=u2, deleted=tuple(component), r=len(tail) + 1)
    logger.debug("trimmed %s at %d-%d", record.deleted, u1, u2)
    return RuleOutcome.reduced(instance, record)


def apply_trimming_rule(inst: LabeledInstance) -> RuleOutcome:
    """
    Apply the trimming rule once.

    Args:
        inst: Instance on a connected graph with at least 3 vertices

    Returns:
        NOT_APPLICABLE without a site, NO_ANSWER on equal or incomparable
        closed neighborhoods or a label clash, REDUCED otherwise
    """
    site = find_trim_site(inst.graph)
    if site is None:
        return RuleOutcome.not_applicable()
    return _trim_at(inst, site.pair[0], site.pair[1], site.component)


def _separates(g: Graph, removed: Set[int], sources: Iterable[int], targets: Set[int]) -> bool:
    view = nx.restricted_view(g.nx_view, removed, [])
    reached: Set[int] = set()
    for s in sources:
        if s not in reached:
            reached |= nx.node_connected_component(view, s)
    return not reached & targets


def _is_minimal_separator(
    g: Graph, sep: Set[int], sources: Set[int], targets: Set[int]
) -> bool:
    if not _separates(g, sep, sources, targets):
        return False
    return all(not _separates(g, sep - {s}, sources, targets) for s in sep)


def _f_triple_at(g: Graph, u1: int, u2: int, u3: int) -> Optional[FTriple]:
    if not (g.has_edge(u1, u2) and g.has_edge(u2, u3) and g.has_edge(u1, u3)):
        return None
    common = g.neighbors(u1) & g.neighbors(u3)
    if u2 not in common:
        return None
    pendants = common - {u2}
    around = g.neighbors(u2)
    if not pendants <= around:
        return None
    rest = around - pendants - {u1, u3}
    x_set = rest & g.neighbors(u1)
    y_set = rest & g.neighbors(u3)
    if x_set | y_set != rest or not x_set or not y_set:
        return None
    if any(g.has_edge(x, y) for x in x_set for y in y_set):
        return None
    clique = {u1, u2, u3} | pendants
    if not _is_clique(g, clique):
        return None
    if pendants:
        outside = set(g.vertices) - clique
        if not _is_minimal_separator(g, {u1, u2, u3}, pendants, outside):
            return None
    return FTriple(
        u1=u1,
        u2=u2,
        u3=u3,
        pendants=tuple(sorted(pendants)),
        x_set=tuple(sorted(x_set)),
        y_set=tuple(sorted(y_set)),
    )


def find_f_triple(g: Graph) -> Optional[FTriple]:
    """First F-triple by ascending centre u2, then lexicographic (u1, u3)."""
    for u2 in g.vertices:
        for u1, u3 in combinations(sorted(g.neighbors(u2)), 2):
            if not g.has_edge(u1, u3):
                continue
            triple = _f_triple_at(g, u1, u2, u3)
            if triple is not None:
                return triple
    return None


def _reduce_path(inst: LabeledInstance, t: FTriple) -> RuleOutcome:
    g = inst.graph
    u1, u2, u3 = t.u1, t.u2, t.u3
    outer = edge(u1, u3)
    r_new = {edge(u2, w) for w in (u1, u3) + t.pendants}
    b_new = {edge(w, u2) for w in t.x_set + t.y_set}
    b_new |= {edge(u1, w) for w in (u3,) + t.pendants}
    b_new |= {edge(u3, w) for w in t.pendants}

    clash = (inst.required_edges & b_new) | (r_new & inst.blocked)
    if clash:
        return RuleOutcome.no_answer(
            f"F-triple {u1}-{u2}-{u3}: label clash on {_edges_str(clash)}"
        )

    deleted = (u2,) + t.pendants
    required, blocked = _drop_incident(inst.required, inst.blocked, deleted)
    blocked.discard(outer)
    required[outer] = required.get(outer, Origin.PATH)
    added = {edge(x, u3) for x in t.x_set} | {edge(y, u1) for y in t.y_set}
    graph = g.remove_vertices(deleted).add_edges(added)
    instance = LabeledInstance(graph, inst.k, required, frozenset(blocked | added))
    record = PathRecord(
        u1=u1, u2=u2, u3=u3, deleted=deleted, x_set=t.x_set, y_set=t.y_set
    )
    logger.debug("path reduction removed %s around %d-%d-%d", deleted, u1, u2, u3)
    return RuleOutcome.reduced(instance, record)


def apply_path_reduction_rule(inst: LabeledInstance) -> RuleOutcome:
    """
    Apply the path reduction rule once.

    The caller must have exhausted the trimming rule first.
    """
    triple = find_f_triple(inst.graph)
    if triple is None:
        return RuleOutcome.not_applicable()
    return _reduce_path(inst, triple)


def _reducible_simplicial(inst: LabeledInstance) -> List[int]:
    g = inst.graph
    r1_touch: Dict[int, int] = {}
    for e in inst.r1:
        r1_touch[e.u] = r1_touch.get(e.u, 0) + 1
        r1_touch[e.v] = r1_touch.get(e.v, 0) + 1
    r2_touch = {v for e in inst.r2 for v in e}
    blocked_deg: Dict[int, int] = {}
    for e in inst.blocked:
        blocked_deg[e.u] = blocked_deg.get(e.u, 0) + 1
        blocked_deg[e.v] = blocked_deg.get(e.v, 0) + 1
    return sorted(
        v
        for v in simplicial_vertices(g)
        if v not in r2_touch
        and (v not in r1_touch or g.degree(v) - blocked_deg.get(v, 0) == 1)
    )


def apply_simplicial_reduction(inst: LabeledInstance) -> RuleOutcome:
    """
    Apply the simplicial vertex reduction rule.

    Meant to run once, after trimming and path reduction are exhausted.
    Deletions that may be arbitrary remove the largest labels first.

    Returns:
        NO_ANSWER when a size bound or a labeling pattern rules out every
        solution, REDUCED otherwise (possibly with zero deletions)
    """
    g, k = inst.graph, inst.k
    bound = non_pendant_bound(k)
    cap = bound + 1
    r1 = inst.r1

    simplicial = _reducible_simplicial(inst)
    if g.n - len(simplicial) > bound:
        return RuleOutcome.no_answer(
            f"{g.n - len(simplicial)} non-simplicial vertices exceed {bound}"
        )

    classes = true_twin_partition(g, simplicial)
    if len(classes) > bound:
        return RuleOutcome.no_answer(f"{len(classes)} twin classes exceed {bound}")

    r1_at: Dict[int, List[Edge]] = {}
    for e in r1:
        r1_at.setdefault(e.u, []).append(e)
        r1_at.setdefault(e.v, []).append(e)
    x_sets = [frozenset(v for v in cls if v in r1_at) for cls in classes]

    for cls, x_set in zip(classes, x_sets):
        ends = [set(e) for v in x_set for e in r1_at[v]]
        if ends and not set.intersection(*ends):
            return RuleOutcome.no_answer(
                f"required edges at twin class {sorted(cls)} share no end-vertex"
            )

    for cls, x_set in zip(classes, x_sets):
        rest = cls - x_set
        if len(rest) < cap:
            continue
        for u in sorted(x_set):
            for e in r1_at[u]:
                v = e.other(u)
                if any(x != v and edge(x, v) in inst.blocked for x in rest):
                    return RuleOutcome.no_answer(
                        f"twin class {sorted(cls)} forces pendants on two vertices"
                    )

    records: List[TwinClassRecord] = []
    deleted: List[int] = []
    for cls, x_set in zip(classes, x_sets):
        xs = sorted(x_set)
        x_deleted = tuple(sorted(xs[1:], reverse=True))
        remaining = len(cls) - len(x_deleted)
        t_deleted: Tuple[int, ...] = ()
        if remaining > cap:
            t_deleted = tuple(sorted(cls - x_set, reverse=True)[: remaining - cap])
        survivors = tuple(sorted(cls - set(x_deleted) - set(t_deleted)))
        records.append(
            TwinClassRecord(
                survivors=survivors,
                representative=xs[0] if xs else None,
                x_deleted=x_deleted,
                t_deleted=t_deleted,
            )
        )
        deleted.extend(x_deleted + t_deleted)

    required, blocked = _drop_incident(inst.required, inst.blocked, deleted)
    instance = LabeledInstance(g.remove_vertices(deleted), k, required, frozenset(blocked))
    logger.debug(
        "simplicial reduction over %d twin classes deleted %d vertices",
        len(classes),
        len(deleted),
    )
    return RuleOutcome.reduced(instance, SimplicialRecord(tuple(records)))


def replay_record(inst: LabeledInstance, record: Record) -> LabeledInstance:
    """
    Re-apply one journaled rule application to ``inst``.

    Raises:
        IntegrityError: If the record does not fit the instance
    """
    if isinstance(record, TrimRecord):
        if not _is_trim_site(inst.graph, (record.u1, record.u2), record.deleted):
            raise IntegrityError(f"No trim site at {record.u1}-{record.u2}")
        outcome = _trim_at(inst, record.u1, record.u2, record.deleted)
    elif isinstance(record, PathRecord):
        triple = _f_triple_at(inst.graph, record.u1, record.u2, record.u3)
        if triple is None or (triple.pendants, triple.x_set, triple.y_set) != (
            record.pendants,
            record.x_set,
            record.y_set,
        ):
            raise IntegrityError(
                f"No matching F-triple at {record.u1}-{record.u2}-{record.u3}"
            )
        outcome = _reduce_path(inst, triple)
    else:
        missing = [v for v in record.deleted if not inst.graph.has_vertex(v)]
        if missing:
            raise IntegrityError(f"Simplicial record deletes absent vertices {missing}")
        required, blocked = _drop_incident(inst.required, inst.blocked, record.deleted)
        return LabeledInstance(
            inst.graph.remove_vertices(record.deleted), inst.k, required, frozenset(blocked)
        )
    if outcome.status is not RuleStatus.REDUCED or outcome.record != record:
        raise IntegrityError(f"Replaying {record} did not reproduce it")
    return outcome.instance
