"""Incremental truss maintenance under single edge insertions.

Two variants share one engine. Full exploration ("hcqty") walks every
same-level edge reachable through qualifying triangles. Degree-gated
exploration ("jk-inc") keeps a memoized per-edge count of triangles that
can still matter (the truss degree) and skips edges that count rules out,
which shrinks the explored set without changing the result.

Per-insertion flow:

1. Add the edge. Its truss number is unknown until the end, so while
   levels run it carries a placeholder that outranks every level.
2. For each level k in [2, ktmax] whose cheap gate passes (the new edge
   must close at least k - 1 triangles that could survive at k), run the
   level engine: seed candidates from the new edge's triangles whose two
   other edges both sit at K >= k with the minimum exactly k, grow the
   candidate set breadth-first through qualifying triangles, count each
   candidate's relevant support, then evict below-threshold candidates to
   a fixpoint. Survivors are exactly the edges that move from k to k + 1.
3. Levels read only pre-insertion truss numbers and report survivor sets;
   promotions are applied after every level has run. Level order is
   therefore irrelevant and levels may execute concurrently.
4. Assign the new edge's truss number from the updated neighborhood, then
   refresh memoized truss degrees wherever triangles changed.

Relevant support of a candidate counts the triangles whose other two
edges each either sit above the level, are the inserted edge, or are
fellow candidates still alive. Same-level edges outside the candidate set
never qualify. The eviction cascade decrements each lost triangle exactly
once: a dying candidate scans its triangles and discounts them from still
alive co-members (and from the inserted edge's own count) only while the
third edge still qualifies.

If the cascade drives the inserted edge's own count below k - 1 the whole
level yields nothing: every promotion at level k must sit in a truss that
contains the inserted edge, so survivors that leaned on its triangles
would be unsound, and in a consistent state none can remain.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from collections import deque
from dataclasses import dataclass, field

from .graph import (
    Edge,
    EdgeOutcome,
    Graph,
    Triangle,
    UnknownEdgeError,
    canonical_edge,
    canonical_triangle,
)
from .peeling import TrussState

# Exploration variants. The strings double as the benchmark vocabulary on
# the command line, so they are part of the public interface.
FULL_EXPLORATION = "hcqty"
DEGREE_GATED = "jk-inc"
VARIANTS = (FULL_EXPLORATION, DEGREE_GATED)

# Placeholder truss number for an edge whose level runs are in flight.
# It compares above every real level, which is exactly how the engine
# must treat the inserted edge until its number is settled.
_PENDING_K = 1 << 60


class TrussDegreeIndex:
    """Memoized truss degrees: td(e) = triangles on e whose other two
    edges both have K at least K(e).

    The index is consulted by degree-gated exploration and must reflect
    the state before an update begins. Mutators mark the edges whose
    triangle neighborhoods changed and call refresh.
    """

    __slots__ = ("td", "dirty")

    def __init__(self, td: list[int], dirty: set[int] | None = None) -> None:
        self.td = td
        self.dirty = dirty if dirty is not None else set()

    @classmethod
    def build(cls, g: Graph, st: TrussState) -> "TrussDegreeIndex":
        k_of = st.k
        td = [0] * g.edge_count
        for eid, (u, v) in enumerate(g.edges):
            ke = k_of[eid]
            n = 0
            for _, a, b in g.triangles_of_edge(u, v):
                if k_of[a] >= ke and k_of[b] >= ke:
                    n += 1
            td[eid] = n
        return cls(td)

    def mark_changed(self, g: Graph, changed_eids) -> None:
        """Mark changed edges and every edge sharing a triangle with one."""
        dirty = self.dirty
        for eid in changed_eids:
            dirty.add(eid)
            u, v = g.edges[eid]
            for _, a, b in g.triangles_of_edge(u, v):
                dirty.add(a)
                dirty.add(b)

    def refresh(self, g: Graph, st: TrussState) -> None:
        """Recount truss degrees for the dirty set."""
        k_of = st.k
        td = self.td
        for eid in sorted(self.dirty):
            u, v = g.edges[eid]
            ke = k_of[eid]
            n = 0
            for _, a, b in g.triangles_of_edge(u, v):
                if k_of[a] >= ke and k_of[b] >= ke:
                    n += 1
            td[eid] = n
        self.dirty.clear()

    def copy(self) -> "TrussDegreeIndex":
        return TrussDegreeIndex(list(self.td), set(self.dirty))


def rebuild_truss_degrees(g: Graph, st: TrussState) -> TrussDegreeIndex:
    """Build the truss-degree index for the current state from scratch."""
    return TrussDegreeIndex.build(g, st)


def min_truss_of_triangle(g: Graph, st: TrussState, tri: Triangle,
                          e: Edge) -> int:
    """Minimum truss number among the two edges of tri other than e."""
    a, b, c = canonical_triangle(*tri)
    pair = canonical_edge(*e)
    sides = [(a, b), (a, c), (b, c)]
    if pair not in sides:
        raise ValueError(f"edge {pair} is not a side of triangle {(a, b, c)}")
    others = [s for s in sides if s != pair]
    ids = [g.edge_id(*s) for s in [pair] + others]
    return min(st.k[ids[1]], st.k[ids[2]])


@dataclass
class CandidateSet:
    """Level-k candidates around a pivot edge, with support bookkeeping.

    relevant_support carries the post-pruning counts once the set has been
    pruned; inserted_edge_rsc is the pivot's own qualifying-triangle count
    under the same rules. eviction_queue records eviction order.
    """

    k: int
    pivot: Edge
    pivot_eid: int
    members: set[int]
    relevant_support: dict[int, int]
    inserted_edge_rsc: int
    eviction_queue: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class LevelOutcome:
    """Pure result of one level run: nothing applied yet.

    members lists every explored candidate id and survivors the ids still
    alive when the cascade settled; promoted equals survivors when the
    pivot kept enough support and is empty otherwise. An evicted member
    cannot belong to any self-supporting set inside the region, so when
    the run promotes nothing a caller may skip sibling pivots that were
    evicted here: their own runs are guaranteed to fail too.
    """

    k: int
    promoted: tuple[int, ...]
    pivot_rsc: int
    explored: int
    evicted: int
    members: tuple[int, ...] = ()
    survivors: tuple[int, ...] = ()


@dataclass(frozen=True)
class InsertionResult:
    outcome: EdgeOutcome
    edge: Edge
    eid: int | None
    new_k: int | None
    promoted: tuple[tuple[int, int], ...]  # (edge id, level promoted from)
    levels_run: tuple[int, ...]
    explored: int
    evicted: int

    @property
    def work_units(self) -> int:
        return self.explored + self.evicted


def _require_variant(variant: str, td: TrussDegreeIndex | None) -> bool:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    gated = variant == DEGREE_GATED
    if gated and td is None:
        raise ValueError("degree-gated variant needs a TrussDegreeIndex")
    return gated


def _pivot_gate_count(g: Graph, k_of: list[int], td: list[int] | None,
                      pivot_eid: int, k: int, gated: bool, td_credit: int,
                      frozen: set[int] | None = None) -> int:
    """Triangles on the pivot that could survive at level k.

    A triangle counts when each of its other two edges either sits above
    k, or sits at k, can still rise (not frozen), and (for the gated
    variant) has enough truss degree to reach the k - 1 membership
    threshold. td_credit is 1 when the memo predates the pivot's own
    triangles (single-insertion flow: the uncounted new triangle lifts a
    co-edge's usable count by one) and 0 when the memo already includes
    them (batch flow). frozen holds edges whose rise budget for the
    current update is spent; a triangle through one cannot support a
    promotion, exactly, so it never counts.
    """
    u, v = g.edges[pivot_eid]
    n = 0
    for _, a, b in g.triangles_of_edge(u, v):
        ok = True
        for x in (a, b):
            kx = k_of[x]
            if kx > k:
                continue
            if kx == k and (frozen is None or x not in frozen) \
                    and (not gated or td[x] + td_credit >= k - 1):
                continue
            ok = False
            break
        if ok:
            n += 1
    return n


def _explore(g: Graph, k_of: list[int], td: list[int] | None,
             pivot_eid: int, k: int, gated: bool, td_credit: int,
             frozen: set[int] | None = None) -> CandidateSet:
    u, v = g.edges[pivot_eid]
    members: set[int] = set()

    def barred(x: int) -> bool:
        return frozen is not None and x in frozen

    def seedable(x: int) -> bool:
        # same-level edge that could still rise past k
        if k_of[x] != k or barred(x):
            return False
        return not gated or td[x] + td_credit >= k - 1

    # Seeds: same-level edges of the pivot's triangles, provided the
    # triangle could actually support a promotion: its other co-edge must
    # sit above k or be seed-capable itself (rising together). td_credit
    # compensates for a memo that predates the pivot's triangles (see
    # _pivot_gate_count).
    for _, a, b in g.triangles_of_edge(u, v):
        ka, kb = k_of[a], k_of[b]
        if min(ka, kb) != k:
            continue
        for x, other, k_other in ((a, b, kb), (b, a, ka)):
            if x in members or not seedable(x):
                continue
            if k_other > k or seedable(other):
                members.add(x)

    frontier = sorted(members)
    while frontier:
        grown: set[int] = set()
        for m in frontier:
            p, q = g.edges[m]
            for _, c1, c2 in g.triangles_of_edge(p, q):
                for x, other in ((c1, c2), (c2, c1)):
                    if x in members or x in grown or x == pivot_eid:
                        continue
                    if k_of[x] != k or barred(x):
                        continue
                    if gated and td[x] < k - 1:
                        continue
                    # third edge must be able to sit at k or above in the
                    # surviving subgraph; a frozen third cannot
                    if other == pivot_eid or k_of[other] > k \
                            or (k_of[other] == k and not barred(other)):
                        grown.add(x)
        members |= grown
        frontier = sorted(grown)

    # Relevant support under the membership rule. All members are alive
    # at this point.
    def qualifies(x: int) -> bool:
        return x == pivot_eid or k_of[x] > k or x in members

    rs: dict[int, int] = {}
    for m in members:
        p, q = g.edges[m]
        n = 0
        for _, c1, c2 in g.triangles_of_edge(p, q):
            if qualifies(c1) and qualifies(c2):
                n += 1
        rs[m] = n

    pivot_rsc = 0
    for _, a, b in g.triangles_of_edge(u, v):
        if qualifies(a) and qualifies(b):
            pivot_rsc += 1

    return CandidateSet(k=k, pivot=g.edges[pivot_eid], pivot_eid=pivot_eid,
                        members=members, relevant_support=rs,
                        inserted_edge_rsc=pivot_rsc)


def _prune(g: Graph, k_of: list[int], cs: CandidateSet) -> list[int]:
    """Cascade evictions to a fixpoint; returns the sorted members still
    alive at the end, whether or not the pivot kept enough support.

    Whether the survivors may actually be promoted is the caller's call
    (they may not when the pivot's own count fell below k - 1). Mutates
    cs: relevant_support ends at the post-cascade counts,
    inserted_edge_rsc at the pivot's final count, eviction_queue at the
    processed eviction order.
    """
    k = cs.k
    threshold = k - 1
    pivot = cs.pivot_eid
    rs = cs.relevant_support
    alive = set(cs.members)

    queue: deque[int] = deque()
    queued: set[int] = set()
    for m in sorted(cs.members):
        if rs[m] < threshold:
            queue.append(m)
            queued.add(m)

    def qualifies(x: int) -> bool:
        return x == pivot or k_of[x] > k or x in alive

    pivot_rsc = cs.inserted_edge_rsc
    evicted: list[int] = []
    while queue:
        m = queue.popleft()
        alive.discard(m)
        evicted.append(m)
        p, q = g.edges[m]
        for _, c1, c2 in g.triangles_of_edge(p, q):
            for x, other in ((c1, c2), (c2, c1)):
                if x == pivot:
                    # the pivot loses this triangle unless it was already gone
                    if qualifies(other):
                        pivot_rsc -= 1
                elif x in alive and qualifies(other):
                    rs[x] -= 1
                    if rs[x] < threshold and x not in queued:
                        queued.add(x)
                        queue.append(x)

    cs.inserted_edge_rsc = pivot_rsc
    cs.eviction_queue = evicted
    return sorted(alive)


def explore_candidates(g: Graph, st: TrussState, e: Edge, k: int, *,
                       variant: str = DEGREE_GATED,
                       td: TrussDegreeIndex | None = None,
                       td_current: bool = False) -> CandidateSet:
    """Public wrapper: build the level-k candidate set around edge e.

    e must already be present in the graph. Works both for an edge whose
    truss number is still pending and for a pivot that carries a real one.
    Set td_current when the degree memo was refreshed after e arrived;
    leave it unset in the just-inserted flow, where the memo misses e's
    triangles and gating credits each co-edge one uncounted triangle.
    """
    gated = _require_variant(variant, td)
    pivot_eid = g.edge_id(*e)
    return _explore(g, st.k, td.td if td else None, pivot_eid, k, gated,
                    0 if td_current else 1)


def prune_candidates(g: Graph, st: TrussState, cs: CandidateSet) -> list[int]:
    """Public wrapper around the eviction cascade: the edges to promote.

    Empty when the pivot's own support fell below k - 1, because no
    higher truss can then contain the pivot and nothing may rise.
    """
    survivors = _prune(g, st.k, cs)
    if cs.inserted_edge_rsc < cs.k - 1:
        return []
    return survivors


def run_level(g: Graph, st: TrussState, e: Edge, k: int, *,
              variant: str = DEGREE_GATED,
              td: TrussDegreeIndex | None = None,
              td_current: bool = False,
              frozen: set[int] | None = None) -> LevelOutcome:
    """Run explore + prune for one level. Pure: promotions not applied.

    frozen excludes edges that provably cannot rise in the current update
    (used by batch flow once an edge's per-batch rise budget is spent).
    """
    gated = _require_variant(variant, td)
    pivot_eid = g.edge_id(*e)
    cs = _explore(g, st.k, td.td if td else None, pivot_eid, k, gated,
                  0 if td_current else 1, frozen)
    survivors = tuple(_prune(g, st.k, cs))
    promoted = survivors if cs.inserted_edge_rsc >= k - 1 else ()
    return LevelOutcome(k=k, promoted=promoted,
                        pivot_rsc=cs.inserted_edge_rsc,
                        explored=len(cs.members),
                        evicted=len(cs.eviction_queue),
                        members=tuple(sorted(cs.members)),
                        survivors=survivors)


def _settle_new_edge_k(g: Graph, k_of: list[int], eid: int) -> int:
    """Largest k for which the edge closes at least k - 2 triangles whose
    other two edges both have K >= k, floored at 2."""
    u, v = g.edges[eid]
    phis = sorted((min(k_of[a], k_of[b])
                   for _, a, b in g.triangles_of_edge(u, v)), reverse=True)
    best = 2
    for i, phi in enumerate(phis):
        # with i + 1 triangles at or above phi, level min(phi, i + 3) holds
        cand = phi if phi < i + 3 else i + 3
        if cand > best:
            best = cand
    return best


def insert_edge(g: Graph, st: TrussState, u: int, v: int, *,
                variant: str = DEGREE_GATED,
                td: TrussDegreeIndex | None = None,
                level_order="ascending",
                parallel_levels: bool = False) -> InsertionResult:
    """Insert edge (u, v) and repair truss numbers in place.

    level_order is "ascending", "descending", or an explicit permutation
    of the eligible levels; all orders produce the same state because
    levels read the pre-insertion snapshot and promotions are applied
    after the last one. With parallel_levels the eligible levels run on a
    thread pool, applied at the same barrier.

    Degenerate inputs (duplicate, self-loop) leave every structure
    untouched and are reported in the result.
    """
    gated = _require_variant(variant, td)
    if len(st.k) != g.edge_count:
        raise ValueError("state does not cover this graph")
    if td is not None and len(td.td) != g.edge_count:
        raise ValueError("truss-degree index does not cover this graph")

    outcome, eid = g.add_edge(u, v)
    if outcome is EdgeOutcome.SELF_LOOP:
        return InsertionResult(outcome, (u, v), None, None, (), (), 0, 0)
    pair = g.edges[eid]
    if outcome is EdgeOutcome.DUPLICATE:
        return InsertionResult(outcome, pair, eid, st.k[eid], (), (), 0, 0)

    st.k.append(_PENDING_K)
    if td is not None:
        td.td.append(0)

    k_of = st.k
    td_vals = td.td if td else None
    pre_ktmax = st.ktmax

    eligible = [k for k in range(2, pre_ktmax + 1)
                if _pivot_gate_count(g, k_of, td_vals, eid, k, gated,
                                     1) >= k - 1]

    if level_order == "ascending":
        ordered = eligible
    elif level_order == "descending":
        ordered = list(reversed(eligible))
    else:
        ordered = list(level_order)
        if sorted(ordered) != eligible:
            raise ValueError(
                f"level_order {ordered} is not a permutation of {eligible}")

    if parallel_levels and len(ordered) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(ordered))) as pool:
            outcomes = list(pool.map(
                lambda k: run_level(g, st, pair, k, variant=variant, td=td),
                ordered))
    else:
        outcomes = [run_level(g, st, pair, k, variant=variant, td=td)
                    for k in ordered]

    promoted: list[tuple[int, int]] = []
    for out in outcomes:
        for x in out.promoted:
            k_of[x] = out.k + 1
            promoted.append((x, out.k))
    promoted.sort()

    new_k = _settle_new_edge_k(g, k_of, eid)
    k_of[eid] = new_k
    st.ktmax = max([pre_ktmax, new_k] +
                   [out.k + 1 for out in outcomes if out.promoted])

    if td is not None:
        td.mark_changed(g, [eid] + [x for x, _ in promoted])
        td.refresh(g, st)

    return InsertionResult(
        outcome=outcome, edge=pair, eid=eid, new_k=new_k,
        promoted=tuple(promoted),
        levels_run=tuple(out.k for out in outcomes),
        explored=sum(out.explored for out in outcomes),
        evicted=sum(out.evicted for out in outcomes))
