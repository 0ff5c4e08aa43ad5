"""Mutable undirected simple graph with stable edge ids and triangle queries.

Vertices are dense non-negative ints. Edges are canonical (u, v) pairs with
u < v and receive append-only integer ids, so per-edge state (truss numbers,
triangle-degree counts) can live in plain lists indexed by edge id.
"""

from __future__ import annotations

from enum import Enum

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


class UnknownEdgeError(KeyError):
    """Raised when an operation names an edge that is not in the graph."""


class EdgeOutcome(Enum):
    """Result of attempting to add an edge."""

    ADDED = "added"
    DUPLICATE = "duplicate"
    SELF_LOOP = "self-loop"


def canonical_edge(u: int, v: int) -> Edge:
    """Return the canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


def canonical_triangle(a: int, b: int, c: int) -> Triangle:
    """Return the sorted vertex triple of a triangle.

    Raises ValueError if the vertices are not pairwise distinct.
    """
    x, y, z = sorted((a, b, c))
    if x == y or y == z:
        raise ValueError(f"degenerate triangle ({a}, {b}, {c})")
    return (x, y, z)


class Graph:
    """Undirected simple graph: adjacency sets plus a canonical edge index.

    Self-loops and repeated edges are reported through EdgeOutcome rather
    than raised, because streaming inputs contain them routinely. Edge ids
    are never reused; adjacency grows on demand, so a prefix replay of a
    larger stream may hold allocated-but-isolated vertex slots.
    """

    __slots__ = ("_adj", "edges", "edge_index")

    def __init__(self) -> None:
        self._adj: list[set[int]] = []
        self.edges: list[Edge] = []
        self.edge_index: dict[Edge, int] = {}

    @classmethod
    def from_edges(cls, pairs) -> "Graph":
        g = cls()
        for u, v in pairs:
            g.add_edge(u, v)
        return g

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def _grow(self, vid: int) -> None:
        while len(self._adj) <= vid:
            self._adj.append(set())

    def add_edge(self, u: int, v: int) -> tuple[EdgeOutcome, int | None]:
        """Insert edge (u, v). Returns (outcome, edge id).

        The id is the fresh id when added, the existing id for a duplicate,
        and None for a self-loop.
        """
        if u < 0 or v < 0:
            raise ValueError(f"negative vertex id in ({u}, {v})")
        if u == v:
            return (EdgeOutcome.SELF_LOOP, None)
        pair = (u, v) if u < v else (v, u)
        existing = self.edge_index.get(pair)
        if existing is not None:
            return (EdgeOutcome.DUPLICATE, existing)
        self._grow(pair[1])
        self._adj[u].add(v)
        self._adj[v].add(u)
        eid = len(self.edges)
        self.edges.append(pair)
        self.edge_index[pair] = eid
        return (EdgeOutcome.ADDED, eid)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edge_index

    def edge_id(self, u: int, v: int) -> int:
        """Id of edge (u, v); raises UnknownEdgeError if absent."""
        pair = canonical_edge(u, v)
        eid = self.edge_index.get(pair)
        if eid is None:
            raise UnknownEdgeError(pair)
        return eid

    def get_edge_id(self, u: int, v: int) -> int | None:
        return self.edge_index.get(canonical_edge(u, v))

    def neighbors(self, u: int) -> list[int]:
        """Sorted neighbor list; empty for unknown vertices."""
        if 0 <= u < len(self._adj):
            return sorted(self._adj[u])
        return []

    def degree(self, u: int) -> int:
        if 0 <= u < len(self._adj):
            return len(self._adj[u])
        return 0

    def common_neighbors(self, u: int, v: int) -> list[int]:
        """Sorted list of vertices adjacent to both u and v."""
        adj = self._adj
        n = len(adj)
        if u >= n or v >= n or u < 0 or v < 0:
            return []
        return sorted(adj[u] & adj[v])

    def support(self, u: int, v: int) -> int:
        """Number of triangles on edge (u, v); the edge must exist."""
        pair = canonical_edge(u, v)
        if pair not in self.edge_index:
            raise UnknownEdgeError(pair)
        return len(self._adj[u] & self._adj[v])

    def triangles_of_edge(self, u: int, v: int):
        """Yield (w, id(u, w), id(v, w)) per triangle on (u, v), w ascending."""
        adj = self._adj
        n = len(adj)
        if u >= n or v >= n or u < 0 or v < 0:
            return
        index = self.edge_index
        for w in sorted(adj[u] & adj[v]):
            a = index[(u, w) if u < w else (w, u)]
            b = index[(v, w) if v < w else (w, v)]
            yield w, a, b

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = [set(s) for s in self._adj]
        g.edges = list(self.edges)
        g.edge_index = dict(self.edge_index)
        return g

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"
