import logging
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .checks import GraphParseError
from .core import Edge, Graph, edge

logger = logging.getLogger(__name__)


def _parse_ints(fields: List[str], line: int, what: str) -> List[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise GraphParseError(f"non-integer {what}: {' '.join(fields)}", line) from None


def parse_graph_file(text: str) -> Graph:
    """
    Parse a DIMACS-style graph.

    Lines are ``c <comment>``, one header ``p edge <n> <m>`` and then
    ``e <u> <v>`` records with 1-based ids. Vertex id i becomes label i - 1.

    Args:
        text: File contents

    Returns:
        Graph on labels 0..n-1

    Raises:
        GraphParseError: On a malformed header, an edge before the header, an
            out-of-range id, a self-loop, a duplicate edge or an edge count
            that differs from the header
    """
    header: Optional[Tuple[int, int, int]] = None
    seen: Set[Edge] = set()
    last = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        last = number
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        kind = fields[0]
        if kind == "p":
            if header is not None:
                raise GraphParseError("second header line", number)
            if len(fields) != 4 or fields[1] != "edge":
                raise GraphParseError(f"malformed header: {raw.strip()}", number)
            n, m = _parse_ints(fields[2:], number, "header values")
            if n < 0 or m < 0:
                raise GraphParseError(f"negative header values: {raw.strip()}", number)
            header = (n, m, number)
        elif kind == "e":
            if header is None:
                raise GraphParseError("edge record before header", number)
            if len(fields) != 3:
                raise GraphParseError(f"malformed edge record: {raw.strip()}", number)
            u, v = _parse_ints(fields[1:], number, "vertex ids")
            for x in (u, v):
                if not 1 <= x <= header[0]:
                    raise GraphParseError(f"vertex id {x} outside 1..{header[0]}", number)
            if u == v:
                raise GraphParseError(f"self-loop at vertex {u}", number)
            e = edge(u - 1, v - 1)
            if e in seen:
                raise GraphParseError(f"duplicate edge {u} {v}", number)
            seen.add(e)
        else:
            raise GraphParseError(f"unknown record type '{kind}'", number)
    if header is None:
        raise GraphParseError("missing 'p edge <n> <m>' header", max(last, 1))
    n, m, line = header
    if len(seen) != m:
        raise GraphParseError(f"header declares {m} edges, file has {len(seen)}", line)
    return Graph(range(n), seen)


def read_graph_file(path: str) -> Graph:
    """
    Read and parse a graph file.

    Raises:
        FileNotFoundError: If the file does not exist
        GraphParseError: If the contents cannot be parsed
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise FileNotFoundError(f"Graph file not found: {path}") from None
    logger.debug("read %d bytes from %s", len(text), path)
    return parse_graph_file(text)


def wire_ids(g: Graph) -> Dict[int, int]:
    """Map labels to 1-based file ids by rank."""
    return {v: i + 1 for i, v in enumerate(g.vertices)}


def write_graph_file(g: Graph, comments: Iterable[str] = ()) -> str:
    """Canonical serialization with edges in ascending order of file ids."""
    ids = wire_ids(g)
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(
        f"e {a} {b}" for a, b in sorted(tuple(sorted((ids[e.u], ids[e.v]))) for e in g.edges())
    )
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, name: str = "G") -> str:
    """Plain DOT serialization using the file ids."""
    ids = wire_ids(g)
    lines = [f"graph {name} {{"]
    lines.extend(f"  {ids[v]};" for v in g.vertices)
    lines.extend(f"  {ids[e.u]} -- {ids[e.v]};" for e in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
