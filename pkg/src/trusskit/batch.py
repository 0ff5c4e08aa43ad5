"""Batch truss maintenance: insert a set of edges, repair numbers once.

Naively replaying a batch edge by edge does each level's exploration work
per edge. The batch engine instead admits every accepted edge at the
floor level first and climbs: at each level k it runs the same
explore/evict engine used for single insertions, pivoting in turn on each
batch edge currently sitting at k, until no pivot at k promotes anything
more. An accepted edge whose neighborhood supports a higher number is
promoted level by level together with the pre-existing edges it drags
upward, and every edge settles at the same number a sequential replay
would produce.

Within one level the pass loops until quiescence because one pivot's
promotion can unlock another batch pivot's gate or raise a candidate's
relevant support. Promotions are applied eagerly here (unlike the
single-insertion snapshot discipline): each pivot run reads the state
left by the previous one. Truss degrees are refreshed after every
promoting run so the degree gate never works from stale counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph import Edge, EdgeOutcome, Graph
from .peeling import TrussState
from .incremental import (
    DEGREE_GATED,
    TrussDegreeIndex,
    _pivot_gate_count,
    _require_variant,
    run_level,
)


class BatchEdgeStatus(Enum):
    ACCEPTED = "accepted"
    SELF_LOOP = "self-loop"
    DUPLICATE = "duplicate"
    REPEAT_IN_BATCH = "repeat-in-batch"


@dataclass(frozen=True)
class BatchResult:
    statuses: tuple[tuple[Edge, BatchEdgeStatus], ...]
    accepted: tuple[int, ...]           # edge ids, insertion order
    new_k: tuple[tuple[int, int], ...]  # (eid, final K) for accepted edges
    promoted_existing: tuple[tuple[int, int, int], ...]  # (eid, old K, new K)
    levels_run: tuple[int, ...]
    explored: int
    evicted: int

    @property
    def skipped(self) -> tuple[tuple[Edge, BatchEdgeStatus], ...]:
        """Input pairs not added, with the reason; together with accepted
        this covers the batch exactly, in input order."""
        return tuple((pair, status) for pair, status in self.statuses
                     if status is not BatchEdgeStatus.ACCEPTED)

    @property
    def work_units(self) -> int:
        return self.explored + self.evicted


def batch_insert(g: Graph, st: TrussState, pairs, *,
                 variant: str = DEGREE_GATED,
                 td: TrussDegreeIndex | None = None) -> BatchResult:
    """Insert a batch of edges and repair truss numbers in place.

    pairs is an iterable of (u, v). Self-loops, edges already in the
    graph, and repeats within the batch (first occurrence wins) are
    skipped and reported per edge. Accepted edges enter at K = 2 and
    climb to their final numbers during the level loop.
    """
    gated = _require_variant(variant, td)
    if len(st.k) != g.edge_count:
        raise ValueError("state does not cover this graph")
    if td is not None and len(td.td) != g.edge_count:
        raise ValueError("truss-degree index does not cover this graph")

    statuses: list[tuple[Edge, BatchEdgeStatus]] = []
    accepted: list[int] = []
    seen: set[Edge] = set()
    for u, v in pairs:
        outcome, eid = g.add_edge(u, v)
        if outcome is EdgeOutcome.SELF_LOOP:
            statuses.append(((u, v), BatchEdgeStatus.SELF_LOOP))
            continue
        pair = g.edges[eid] if eid is not None else None
        if outcome is EdgeOutcome.DUPLICATE:
            if pair in seen:
                statuses.append((pair, BatchEdgeStatus.REPEAT_IN_BATCH))
            else:
                statuses.append((pair, BatchEdgeStatus.DUPLICATE))
            continue
        seen.add(pair)
        statuses.append((pair, BatchEdgeStatus.ACCEPTED))
        accepted.append(eid)
        st.k.append(2)
        if td is not None:
            td.td.append(0)

    pre_edge_count = g.edge_count - len(accepted)
    pre_k = {eid: st.k[eid] for eid in range(pre_edge_count)}
    pre_ktmax = st.ktmax

    if not accepted:
        return BatchResult(tuple(statuses), (), (), (), (), 0, 0)

    if td is not None:
        # new edges changed their neighbors' triangle counts
        td.mark_changed(g, accepted)
        td.refresh(g, st)

    k_of = st.k
    td_vals = td.td if td else None
    levels_run: list[int] = []
    explored = 0
    evicted = 0

    # An existing edge can rise at most once per accepted edge (the
    # single-insertion bound, iterated); once the budget is spent its
    # triangles can no longer support any promotion, so the engine may
    # drop it from consideration outright.
    rise_cap = len(accepted)
    frozen: set[int] = set()

    k = 2
    while True:
        if k > pre_ktmax and not any(k_of[b] == k for b in accepted):
            break
        ran_level = False
        # A pivot's outcome is a function of the state, and only a
        # promoting run changes the state; version-stamping each pivot's
        # last look makes the fixpoint re-run exactly the pivots that
        # have not yet seen the newest state.
        version = 0
        seen: dict[int, int] = {}
        progressed = True
        while progressed:
            progressed = False
            for b in accepted:
                if k_of[b] != k or seen.get(b) == version:
                    continue
                if _pivot_gate_count(g, k_of, td_vals, b, k, gated, 0,
                                     frozen) < k - 1:
                    seen[b] = version
                    continue
                pair = g.edges[b]
                out = run_level(g, st, pair, k, variant=variant, td=td,
                                td_current=True, frozen=frozen)
                explored += out.explored
                evicted += out.evicted
                ran_level = True
                progressed = True
                if out.pivot_rsc >= k - 1:
                    for x in out.promoted:
                        k_of[x] = k + 1
                        if x in pre_k and k_of[x] - pre_k[x] >= rise_cap:
                            frozen.add(x)
                    k_of[b] = k + 1
                    if st.ktmax < k + 1:
                        st.ktmax = k + 1
                    if td is not None:
                        td.mark_changed(g, [b, *out.promoted])
                    version += 1
                else:
                    # Nothing changed, and an evicted member cannot sit in
                    # any self-supporting set of the region (the cascade
                    # with a free pivot is the most generous one, and it
                    # still dropped it). A sibling pivot explores a subset
                    # of the same region, so running it now must fail the
                    # same way; stamp evicted siblings as confirmed.
                    dead = set(out.members).difference(out.survivors)
                    for f in accepted:
                        if f != b and k_of[f] == k and f in dead:
                            seen[f] = version
                seen[b] = version
        if ran_level:
            levels_run.append(k)
        # Degrees at threshold k never change during level k (promotions
        # keep co-edges at or above k), so one refresh per level suffices
        # and feeds the next level current counts.
        if td is not None and td.dirty:
            td.refresh(g, st)
        k += 1

    new_k = tuple((eid, k_of[eid]) for eid in accepted)
    promoted_existing = tuple(
        (eid, pre_k[eid], k_of[eid])
        for eid in sorted(pre_k)
        if k_of[eid] != pre_k[eid])
    st.ktmax = max(st.ktmax, max((kk for _, kk in new_k), default=0))

    if td is not None and td.dirty:
        td.refresh(g, st)

    return BatchResult(tuple(statuses), tuple(accepted), new_k,
                       promoted_existing, tuple(levels_run),
                       explored, evicted)
