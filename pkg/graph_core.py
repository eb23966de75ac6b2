"""
Graph core: simple undirected graphs, vertex sets and neighborhood queries.

Vertices are ``0..n-1`` internally and ``1..n`` in files (DIMACS convention).
Vertex sets are bitmasks over that range, so set algebra is integer algebra.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from errors import GraphParseError, VertexRangeError

logger = logging.getLogger("Domatic.Graph")

GRAPH_FORMATS = ("auto", "dimacs", "edgelist")


# ==============================================================================
# [SECTION 1] VERTEX SETS
# ==============================================================================

@dataclass(frozen=True)
class VertexSet:
    """Subset of ``0..n-1`` stored as a bitmask."""

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise VertexRangeError(f"Universe size must be non-negative, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise VertexRangeError(f"VertexSet mask {self.mask:#x} has members >= n={self.n}")

    @classmethod
    def from_iterable(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in vertices:
            if not 0 <= v < n:
                raise VertexRangeError(f"Vertex {v} out of range 0..{n - 1}")
            mask |= 1 << v
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n and bool(self.mask >> v & 1)

    def _check_universe(self, other: "VertexSet"):
        if other.n != self.n:
            raise ValueError(f"VertexSet universes differ: n={self.n} vs n={other.n}")

    def union(self, other: "VertexSet") -> "VertexSet":
        self._check_universe(other)
        return VertexSet(self.n, self.mask | other.mask)

    def difference(self, other: "VertexSet") -> "VertexSet":
        self._check_universe(other)
        return VertexSet(self.n, self.mask & ~other.mask)

    def intersection(self, other: "VertexSet") -> "VertexSet":
        self._check_universe(other)
        return VertexSet(self.n, self.mask & other.mask)

    def issubset(self, other: "VertexSet") -> bool:
        self._check_universe(other)
        return self.mask & ~other.mask == 0

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.mask)

    __or__ = union
    __sub__ = difference
    __and__ = intersection
    __le__ = issubset

    def members(self) -> Tuple[int, ...]:
        return tuple(self)

    def to_one_indexed(self) -> List[int]:
        return [v + 1 for v in self]

    @property
    def canonical_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Sort key: smaller sets first, then lexicographic on sorted members."""
        return len(self), self.members()

    def __repr__(self) -> str:
        return f"VertexSet({{{', '.join(map(str, self))}}})"


# ==============================================================================
# [SECTION 2] GRAPH
# ==============================================================================

@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph in canonical form.

    ``adjacency[v]`` is the ascending tuple of neighbours of ``v``. The
    constructor checks symmetry, absence of self-loops and duplicates; use
    ``Graph.from_edges`` to build from raw (possibly redundant) edge lists.
    """

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    m_edges: int = field(init=False)

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ValueError(f"adjacency has {len(self.adjacency)} rows for n={self.n}")
        degree_sum = 0
        for v, row in enumerate(self.adjacency):
            if list(row) != sorted(set(row)):
                raise ValueError(f"neighbour list of {v} is not sorted/unique: {row}")
            for u in row:
                if not 0 <= u < self.n:
                    raise VertexRangeError(f"Neighbour {u} of vertex {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"edge {{{v}, {u}}} is not symmetric")
            degree_sum += len(row)
        object.__setattr__(self, "m_edges", degree_sum // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build from 0-indexed edges. Duplicates collapse; self-loops are rejected."""
        rows = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"Edge ({u}, {v}) out of range 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(tuple(sorted(r)) for r in rows))

    @classmethod
    def from_networkx(cls, nx_graph) -> "Graph":
        """Relabel nodes to ``0..n-1`` in sorted order (insertion order if unsortable)."""
        nodes = list(nx_graph.nodes())
        try:
            nodes = sorted(nodes)
        except TypeError:
            pass
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in nx_graph.edges()))

    def to_networkx(self):
        import networkx as nx

        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Each edge once as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield u, v

    @cached_property
    def closed_masks(self) -> Tuple[int, ...]:
        """Bitmask of N[v] for every vertex."""
        masks = []
        for v, row in enumerate(self.adjacency):
            mask = 1 << v
            for u in row:
                mask |= 1 << u
            masks.append(mask)
        return tuple(masks)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise VertexRangeError(f"Vertex {v} out of range 0..{self.n - 1}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m_edges})"


# ==============================================================================
# [SECTION 3] NEIGHBORHOOD & DEGREE QUERIES
# ==============================================================================

def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    """N[v] = {v} ∪ N(v)."""
    g._check_vertex(v)
    return VertexSet(g.n, g.closed_masks[v])


def closed_neighborhood_of_set(g: Graph, u: VertexSet) -> VertexSet:
    """N[U], the union of N[u] over u in U."""
    if u.n != g.n:
        raise VertexRangeError(f"VertexSet over n={u.n} used with graph of n={g.n}")
    masks = g.closed_masks
    cover = 0
    for v in u:
        cover |= masks[v]
    return VertexSet(g.n, cover)


def open_neighborhood_of_set(g: Graph, u: VertexSet) -> VertexSet:
    """N(U) = N[U] - U."""
    return closed_neighborhood_of_set(g, u).difference(u)


def max_degree(g: Graph) -> int:
    return max((len(row) for row in g.adjacency), default=0)


def min_degree(g: Graph) -> int:
    return min((len(row) for row in g.adjacency), default=0)


def isolated_vertices(g: Graph) -> VertexSet:
    return VertexSet.from_iterable(g.n, (v for v, row in enumerate(g.adjacency) if not row))


# ==============================================================================
# [SECTION 4] FILE FORMATS (DIMACS EDGE / PLAIN EDGE LIST)
# ==============================================================================

def _int_tokens(tokens: Sequence[str], lineno: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _check_edge(u: int, v: int, n: int, lineno: int) -> Tuple[int, int]:
    for x in (u, v):
        if not 1 <= x <= n:
            raise GraphParseError(f"vertex id {x} out of range 1..{n}", lineno)
    if u == v:
        raise GraphParseError(f"self-loop on vertex {u} (graphs must be simple)", lineno)
    return u - 1, v - 1


def _parse_dimacs(lines: List[str]) -> Graph:
    n: Optional[int] = None
    declared_m = 0
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise GraphParseError(f"invalid problem line {raw.strip()!r}, expected 'p edge <n> <m>'", lineno)
            n, declared_m = _int_tokens(tokens[2:], lineno)
            if n < 0 or declared_m < 0:
                raise GraphParseError("negative size in problem line", lineno)
        elif kind == "e":
            if n is None:
                raise GraphParseError("edge line before problem line", lineno)
            if len(tokens) != 3:
                raise GraphParseError(f"invalid edge line {raw.strip()!r}, expected 'e <u> <v>'", lineno)
            u, v = _int_tokens(tokens[1:], lineno)
            edges.append(_check_edge(u, v, n, lineno))
        else:
            raise GraphParseError(f"unknown line type {kind!r}", lineno)
    if n is None:
        raise GraphParseError("missing problem line 'p edge <n> <m>'")
    g = Graph.from_edges(n, edges)
    if g.m_edges != declared_m:
        logger.warning(f"Parser: header declares m={declared_m}, found {g.m_edges} distinct edges")
    return g


def _parse_edgelist(lines: List[str]) -> Graph:
    pairs = []
    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith(("#", "%")):
            continue
        if len(tokens) != 2:
            raise GraphParseError(f"expected '<u> <v>', got {raw.strip()!r}", lineno)
        u, v = _int_tokens(tokens, lineno)
        if u < 1 or v < 1:
            raise GraphParseError(f"vertex ids must be >= 1, got {u} {v}", lineno)
        pairs.append((u, v, lineno))
    n = max((max(u, v) for u, v, _ in pairs), default=0)
    edges = [_check_edge(u, v, n, lineno) for u, v, lineno in pairs]
    return Graph.from_edges(n, edges)


def detect_format(text: str) -> str:
    for raw in text.splitlines():
        tokens = raw.split()
        if tokens and tokens[0] in ("p", "e"):
            return "dimacs"
    return "edgelist"


def parse_graph(text: str, format: str = "auto") -> Graph:
    """
    Parse graph file content.

    Args:
        text: file content.
        format: ``dimacs`` (``p edge n m`` / ``e u v`` / ``c ...``), ``edgelist``
            (``u v`` per line, n = max id) or ``auto``.

    Returns:
        Graph: canonical graph, duplicate edges collapsed.

    Raises:
        GraphParseError: syntax error, id out of range or self-loop (with line number).
    """
    if format not in GRAPH_FORMATS:
        raise GraphParseError(f"unknown graph format {format!r}; use one of {', '.join(GRAPH_FORMATS)}")
    if format == "auto":
        format = detect_format(text)
    lines = text.splitlines()
    g = _parse_dimacs(lines) if format == "dimacs" else _parse_edgelist(lines)
    logger.debug(f"Parser: read {format} graph n={g.n} m={g.m_edges}")
    return g


def serialize_graph(g: Graph, format: str = "dimacs") -> str:
    """Inverse of ``parse_graph``. Edge lists cannot carry isolated vertices above the max id."""
    if format == "dimacs":
        lines = [f"p edge {g.n} {g.m_edges}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    elif format == "edgelist":
        lines = [f"{u + 1} {v + 1}" for u, v in g.edges()]
    else:
        raise GraphParseError(f"cannot serialize to format {format!r}")
    return "\n".join(lines) + "\n"
