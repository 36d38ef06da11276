from dataclasses import dataclass, field
from functools import cached_property
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Set,
    Tuple,
)

import networkx as nx

from .checks import GraphError


class Edge(NamedTuple):
    """Undirected edge stored with the smaller label first."""

    u: int
    v: int

    def other(self, x: int) -> int:
        """Return the endpoint that is not ``x``."""
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphError(f"Vertex {x} is not an endpoint of edge {self}")


def edge(a: int, b: int) -> Edge:
    """
    Build the canonical edge between two labels.

    Raises:
        GraphError: If both labels are equal (self-loop)
    """
    if a == b:
        raise GraphError(f"Self-loop at vertex {a} is not allowed")
    return Edge(a, b) if a < b else Edge(b, a)


class Graph:
    """
    Immutable undirected simple graph over stable integer labels.

    Deleting vertices never renumbers the survivors, so labels can be cited
    across a whole reduction pipeline. All mutators return new graphs.
    """

    def __init__(
        self, vertices: Iterable[int] = (), edges: Iterable[Tuple[int, int]] = ()
    ) -> None:
        adj: Dict[int, Set[int]] = {int(v): set() for v in vertices}
        for a, b in edges:
            e = edge(a, b)
            if e.u not in adj or e.v not in adj:
                raise GraphError(f"Edge {tuple(e)} has an endpoint outside the graph")
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        self._vertices: Tuple[int, ...] = tuple(sorted(adj))
        self._adj: Dict[int, FrozenSet[int]] = {
            v: frozenset(adj[v]) for v in self._vertices
        }
        self._m = sum(len(nbrs) for nbrs in self._adj.values()) // 2

    @classmethod
    def from_networkx(cls, nxg: nx.Graph) -> "Graph":
        """Convert a networkx graph with integer nodes."""
        return cls(nxg.nodes, nxg.edges)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._m

    def edges(self) -> List[Edge]:
        """Edges in ascending lexicographic order."""
        return [
            Edge(u, v) for u in self._vertices for v in sorted(self._adj[u]) if u < v
        ]

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges())

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, a: int, b: int) -> bool:
        return a in self._adj and b in self._adj[a]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> FrozenSet[int]:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self._adj.values()), default=0)

    def is_complete(self) -> bool:
        return self._m == self.n * (self.n - 1) // 2

    def remove_vertices(self, vs: Iterable[int]) -> "Graph":
        gone = set(vs)
        keep = [v for v in self._vertices if v not in gone]
        return Graph(keep, (e for e in self.edges() if e.u not in gone and e.v not in gone))

    def add_vertices(self, vs: Iterable[int], edges: Iterable[Tuple[int, int]] = ()) -> "Graph":
        new = [v for v in vs if v not in self._adj]
        return Graph(self._vertices + tuple(new), list(self.edges()) + list(edges))

    def add_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        return Graph(self._vertices, list(self.edges()) + list(edges))

    def remove_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        gone = {edge(a, b) for a, b in edges}
        return Graph(self._vertices, (e for e in self.edges() if e not in gone))

    def spanning_subgraph(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """
        Spanning subgraph on the same vertices with the given edges.

        Raises:
            GraphError: If an edge does not belong to this graph
        """
        chosen = [edge(a, b) for a, b in edges]
        for e in chosen:
            if not self.has_edge(e.u, e.v):
                raise GraphError(f"Edge {tuple(e)} is not an edge of the host graph")
        return Graph(self._vertices, chosen)

    def induced_subgraph(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        return self.remove_vertices(v for v in self._vertices if v not in keep)

    @cached_property
    def bitsets(self) -> Tuple[Tuple[int, ...], Dict[int, int], Tuple[int, ...]]:
        """
        Bitset view of the adjacency.

        Returns:
            Tuple of (labels by index, index by label, neighbor mask per index)
        """
        labels = self._vertices
        index = {v: i for i, v in enumerate(labels)}
        masks = tuple(
            sum(1 << index[w] for w in self._adj[v]) for v in labels
        )
        return labels, index, masks

    @cached_property
    def nx_view(self) -> nx.Graph:
        """Shared networkx copy; treat as read-only."""
        return self.to_networkx()

    def to_networkx(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(self._vertices)
        nxg.add_edges_from(self.edges())
        return nxg

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._vertices, self.edge_set))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, edges={[tuple(e) for e in self.edges()]})"


@dataclass(frozen=True)
class ConnectivityProfile:
    is_connected: bool
    is_two_connected: bool
    components: List[FrozenSet[int]]


@dataclass(frozen=True)
class RootSolution:
    """A square root together with solver bookkeeping."""

    root: Graph
    edge_count: int
    deletions: Optional[int] = None
    kernel_root: Optional[Graph] = None
    trace: Optional[Any] = None
    counters: Dict[str, int] = field(default_factory=dict)


def _iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _square_masks(masks: Tuple[int, ...]) -> List[int]:
    """Square an adjacency given as neighbor masks."""
    squared = []
    for i, mask in enumerate(masks):
        reach = mask
        for j in _iter_bits(mask):
            reach |= masks[j]
        squared.append(reach & ~(1 << i))
    return squared


def _graph_from_masks(labels: Tuple[int, ...], masks: Iterable[int]) -> Graph:
    edges = [
        (labels[i], labels[j])
        for i, mask in enumerate(masks)
        for j in _iter_bits(mask)
        if i < j
    ]
    return Graph(labels, edges)


def compute_square(g: Graph) -> Graph:
    """
    Join every pair of vertices at distance at most two.

    Args:
        g: Graph to square

    Returns:
        New graph over the same labels
    """
    labels, _, masks = g.bitsets
    return _graph_from_masks(labels, _square_masks(masks))


def is_square_root(h: Graph, g: Graph) -> bool:
    """
    Check whether ``h`` squares to exactly ``g``.

    Raises:
        GraphError: If the two graphs have different vertex sets
    """
    if h.vertices != g.vertices:
        raise GraphError(
            f"Vertex sets differ: root has {h.n} vertices, graph has {g.n}"
        )
    return compute_square(h) == g


def connectivity_profile(g: Graph) -> ConnectivityProfile:
    nxg = g.nx_view
    components = sorted(
        (frozenset(c) for c in nx.connected_components(nxg)), key=min
    )
    connected = len(components) <= 1
    two_connected = (
        connected
        and g.n >= 3
        and next(nx.articulation_points(nxg), None) is None
    )
    return ConnectivityProfile(
        is_connected=connected,
        is_two_connected=two_connected,
        components=components,
    )


def is_connected(g: Graph) -> bool:
    return connectivity_profile(g).is_connected


def _is_clique(g: Graph, vs: Iterable[int]) -> bool:
    members = list(vs)
    return all(
        g.has_edge(a, b) for i, a in enumerate(members) for b in members[i + 1 :]
    )


def simplicial_vertices(g: Graph) -> FrozenSet[int]:
    """Vertices whose open neighborhood is a clique (isolated and pendant included)."""
    labels, index, masks = g.bitsets
    result = set()
    for i, v in enumerate(labels):
        nbrs = masks[i]
        # every neighbor must see all other neighbors
        if all((nbrs & ~(1 << j)) & ~masks[j] == 0 for j in _iter_bits(nbrs)):
            result.add(v)
    return frozenset(result)


def true_twin_partition(g: Graph, s: Iterable[int]) -> List[FrozenSet[int]]:
    """
    Partition ``s`` into classes of vertices with equal closed neighborhoods.

    Args:
        g: Host graph
        s: Subset of the vertices of ``g``

    Returns:
        Classes ordered by their smallest member

    Raises:
        GraphError: If ``s`` is not a subset of the vertices of ``g``
    """
    classes: Dict[FrozenSet[int], Set[int]] = {}
    for v in s:
        if not g.has_vertex(v):
            raise GraphError(f"Vertex {v} does not belong to the graph")
        classes.setdefault(g.closed_neighborhood(v), set()).add(v)
    return sorted((frozenset(c) for c in classes.values()), key=min)


def path_graph(labels: Iterable[int]) -> Graph:
    vs = list(labels)
    return Graph(vs, zip(vs, vs[1:]))


def cycle_graph(labels: Iterable[int]) -> Graph:
    vs = list(labels)
    edges = list(zip(vs, vs[1:]))
    if len(vs) >= 3:
        edges.append((vs[-1], vs[0]))
    return Graph(vs, edges)


def complete_graph(labels: Iterable[int]) -> Graph:
    vs = list(labels)
    return Graph(vs, ((a, b) for i, a in enumerate(vs) for b in vs[i + 1 :]))


def star_graph(center: int, leaves: Iterable[int]) -> Graph:
    ls = [v for v in leaves if v != center]
    return Graph([center] + ls, ((center, x) for x in ls))


def lexicographic_key(g: Graph) -> Tuple[Edge, ...]:
    """Sort key comparing graphs by their ascending edge tuples."""
    return tuple(g.edges())


def component_subgraphs(g: Graph) -> List[Graph]:
    return [g.induced_subgraph(c) for c in connectivity_profile(g).components]


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    vertices: List[int] = []
    edges: List[Edge] = []
    for part in graphs:
        vertices.extend(part.vertices)
        edges.extend(part.edges())
    return Graph(vertices, edges)
