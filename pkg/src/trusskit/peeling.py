"""Static truss decomposition by support peeling.

The truss number K(e) of an edge is the largest k such that e belongs to a
subgraph in which every edge closes at least k - 2 triangles within that
subgraph. Peeling removes a minimum-support edge, assigns K from its
remaining support, and decrements the support of the surviving triangle
partners. Assigned values never decrease over the removal sequence.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .graph import Edge, Graph


@dataclass
class TrussState:
    """Truss numbers indexed by edge id, plus the running maximum."""

    k: list[int] = field(default_factory=list)
    ktmax: int = 2

    def copy(self) -> "TrussState":
        return TrussState(list(self.k), self.ktmax)

    def as_edge_map(self, g: Graph) -> dict[Edge, int]:
        """Mapping of canonical edge pair to truss number."""
        return {g.edges[eid]: kv for eid, kv in enumerate(self.k)}


@dataclass(frozen=True)
class TrussSubgraph:
    """One triangle-connected component of the edges with K >= k."""

    k: int
    edges: frozenset[Edge]


def truss_decompose(g: Graph, *, tie_break: str = "low-id",
                    assignment_log: list[int] | None = None) -> TrussState:
    """Compute truss numbers for every edge of g.

    tie_break picks among equal-support edges ("low-id" or "high-id"); the
    resulting truss numbers are identical either way, which is covered by a
    test. assignment_log, when given, collects the K values in removal
    order so the non-decreasing claim can be checked from outside.
    """
    if tie_break not in ("low-id", "high-id"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    m = g.edge_count
    if m == 0:
        # every truss number is at least 2, so 2 is the vacuous maximum
        return TrussState([], 2)

    adj = g._adj
    index = g.edge_index
    edges = g.edges
    sup = [len(adj[u] & adj[v]) for (u, v) in edges]

    if tie_break == "low-id":
        def key(eid: int) -> int:
            return eid
    else:
        def key(eid: int) -> int:
            return m - eid

    # Lazy heap: stale entries are skipped when the recorded support no
    # longer matches. Entries only ever move down in support.
    heap = [(sup[e], key(e), e) for e in range(m)]
    heapq.heapify(heap)
    alive = bytearray([1]) * m
    k_of = [0] * m
    level = 2

    while heap:
        s, _, e = heapq.heappop(heap)
        if not alive[e] or s != sup[e]:
            continue
        if s + 2 > level:
            level = s + 2
        k_of[e] = level
        alive[e] = 0
        if assignment_log is not None:
            assignment_log.append(level)
        u, v = edges[e]
        for w in sorted(adj[u] & adj[v]):
            a = index[(u, w) if u < w else (w, u)]
            b = index[(v, w) if v < w else (w, v)]
            if alive[a] and alive[b]:
                sup[a] -= 1
                heapq.heappush(heap, (sup[a], key(a), a))
                sup[b] -= 1
                heapq.heappush(heap, (sup[b], key(b), b))

    return TrussState(k_of, max(k_of))


def extract_truss(g: Graph, st: TrussState, k: int) -> list[TrussSubgraph]:
    """Edges with K >= k, grouped into triangle-connected components.

    Two edges are connected when they share a triangle whose three edges
    all have K >= k. An edge with no such triangle forms its own
    single-edge component. Returns [] when nothing qualifies.
    """
    if k < 2:
        raise ValueError(f"truss level must be >= 2, got {k}")
    if len(st.k) != g.edge_count:
        raise ValueError("state does not cover this graph")
    qualifying = [eid for eid in range(g.edge_count) if st.k[eid] >= k]
    if not qualifying:
        return []
    member = set(qualifying)
    parent = {eid: eid for eid in qualifying}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for eid in qualifying:
        u, v = g.edges[eid]
        for _, a, b in g.triangles_of_edge(u, v):
            if a in member and b in member:
                union(eid, a)
                union(eid, b)

    groups: dict[int, set[Edge]] = {}
    for eid in qualifying:
        groups.setdefault(find(eid), set()).add(g.edges[eid])
    comps = [TrussSubgraph(k, frozenset(es)) for es in groups.values()]
    comps.sort(key=lambda c: min(c.edges))
    return comps


def verify_state(g: Graph, st: TrussState) -> list[Edge]:
    """Compare st against a scratch decomposition of g.

    Returns the sorted list of edges whose stored truss number disagrees;
    an empty list means the state is exact. Raises ValueError when st does
    not cover the graph's edges or carries an inconsistent maximum.
    """
    if len(st.k) != g.edge_count:
        raise ValueError("state does not cover this graph")
    expected = truss_decompose(g)
    bad = [g.edges[eid] for eid in range(g.edge_count)
           if st.k[eid] != expected.k[eid]]
    if not bad and st.ktmax != expected.ktmax:
        raise ValueError(
            f"stored ktmax {st.ktmax} inconsistent with edges ({expected.ktmax})")
    return sorted(bad)
