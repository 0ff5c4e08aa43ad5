"""Replay benchmarks: stream insertion timing, batch comparison, fuzz
verification, and report serialization.

A stream run builds the prefix graph, decomposes it once, then replays
tail events through the chosen maintenance algorithm. Timing wraps only
the decomposition-maintenance call; with the baseline flag each insertion
is also recomputed from scratch on a mirror graph and the per-insertion
speedup is the ratio of the two times. Events that do not change the
graph (duplicates, self-loops) are recorded but never averaged: there is
no maintenance work to time on a no-op.

Reports hold raw per-insertion rows plus aggregates. The average speedup
is the arithmetic mean of per-insertion ratios, recomputable from the
rows, so a report is audit-complete on its own.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import dataclass, field
from random import Random

from .batch import BatchResult, batch_insert
from .graph import EdgeOutcome, Graph
from .incremental import (
    DEGREE_GATED,
    FULL_EXPLORATION,
    TrussDegreeIndex,
    insert_edge,
    rebuild_truss_degrees,
)
from .peeling import TrussState, truss_decompose
from .stream import TemporalEdge, build_prefix, events_to_graph, sort_events

SCRATCH = "non-incremental"
STREAM_ALGORITHMS = (FULL_EXPLORATION, DEGREE_GATED, SCRATCH)

BATCH = "jk-batch"
SEQUENTIAL = "jk-inc-sequential"
BATCH_ALGORITHMS = (BATCH, SEQUENTIAL)


@dataclass(frozen=True)
class InsertionRow:
    index: int                      # event index within the replayed tail
    edge: tuple[int, int]
    applied: bool                   # False for duplicate / self-loop events
    elapsed: float
    baseline_elapsed: float | None
    speedup: float | None
    promoted_count: int
    work_units: int
    verified: bool | None           # None when verification was off


@dataclass
class BenchReport:
    config: dict
    per_insertion: list[InsertionRow] = field(default_factory=list)
    aggregate: dict = field(default_factory=dict)
    ok: bool = True

    def finalize(self) -> None:
        applied = [r for r in self.per_insertion if r.applied]
        speedups = [r.speedup for r in applied if r.speedup is not None]
        self.aggregate = {
            "events_replayed": len(self.per_insertion),
            "effective_insertions": len(applied),
            "total_time": sum(r.elapsed for r in self.per_insertion),
            "max_latency": max((r.elapsed for r in applied), default=0.0),
            "total_work_units": sum(r.work_units for r in self.per_insertion),
            "total_promoted": sum(r.promoted_count
                                  for r in self.per_insertion),
            "average_speedup": (statistics.fmean(speedups)
                                if speedups else None),
            "median_speedup": (statistics.median(speedups)
                               if speedups else None),
            "verified_count": sum(1 for r in self.per_insertion
                                  if r.verified),
            "failed_index": next((r.index for r in self.per_insertion
                                  if r.verified is False), None),
        }

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "aggregate": self.aggregate,
            "ok": self.ok,
            "per_insertion": [
                {
                    "index": r.index,
                    "edge": list(r.edge),
                    "applied": r.applied,
                    "elapsed": r.elapsed,
                    "baseline_elapsed": r.baseline_elapsed,
                    "speedup": r.speedup,
                    "promoted_count": r.promoted_count,
                    "work_units": r.work_units,
                    "verified": r.verified,
                }
                for r in self.per_insertion
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["index", "u", "v", "applied", "elapsed",
                         "baseline_elapsed", "speedup", "promoted_count",
                         "work_units", "verified"])
        for r in self.per_insertion:
            writer.writerow([r.index, r.edge[0], r.edge[1], r.applied,
                             repr(r.elapsed),
                             "" if r.baseline_elapsed is None
                             else repr(r.baseline_elapsed),
                             "" if r.speedup is None else repr(r.speedup),
                             r.promoted_count, r.work_units,
                             "" if r.verified is None else r.verified])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = ["config:"]
        for key in sorted(self.config):
            lines.append(f"  {key}: {self.config[key]}")
        lines.append("aggregate:")
        for key in sorted(self.aggregate):
            lines.append(f"  {key}: {self.aggregate[key]}")
        lines.append(f"ok: {self.ok}")
        return "\n".join(lines) + "\n"


def states_equal(st_a: TrussState, st_b: TrussState) -> bool:
    return st_a.k == st_b.k and st_a.ktmax == st_b.ktmax


def prepare_replay(events: list[TemporalEdge], fraction) -> tuple[
        Graph, TrussState, list[TemporalEdge]]:
    """Sort, split at the fraction point, build and decompose the prefix."""
    ordered = sort_events(events)
    head, tail = build_prefix(ordered, fraction)
    g = events_to_graph(head)
    st = truss_decompose(g)
    return g, st, tail


def run_stream_bench(events: list[TemporalEdge], *, fraction, count: int,
                     algorithm: str = DEGREE_GATED, verify: bool = False,
                     baseline: bool = False, parallel_levels: bool = False,
                     config: dict | None = None) -> BenchReport:
    """Replay `count` effective insertions from the post-prefix tail.

    Effective means the event actually added an edge; no-op events are
    replayed and recorded but do not count toward `count` and are skipped
    by all aggregates. Verification failure stops the replay; the report
    keeps the failing row and ok goes False.
    """
    if algorithm not in STREAM_ALGORITHMS:
        raise ValueError(f"unknown stream algorithm {algorithm!r}")
    g, st, tail = prepare_replay(events, fraction)

    report = BenchReport(config=dict(config or {}))
    report.config.update({
        "fraction": str(fraction),
        "count": count,
        "algorithm": algorithm,
        "verify": verify,
        "baseline": baseline,
        "parallel_levels": parallel_levels,
        "prefix_edges": g.edge_count,
        "prefix_ktmax": st.ktmax,
    })

    td = rebuild_truss_degrees(g, st) if algorithm == DEGREE_GATED else None
    variant = FULL_EXPLORATION if algorithm == FULL_EXPLORATION \
        else DEGREE_GATED
    mirror = g.copy() if baseline else None

    effective = 0
    for index, ev in enumerate(tail):
        if effective >= count:
            break
        u, v = ev.src, ev.dst

        promoted_count = 0
        work = 0
        if algorithm == SCRATCH:
            outcome, _ = g.add_edge(u, v)
            applied = outcome is EdgeOutcome.ADDED
            t0 = time.perf_counter()
            new_st = truss_decompose(g)
            elapsed = time.perf_counter() - t0
            if applied:
                # pre-existing edges whose K moved; the appended edge
                # itself is new_st's trailing entry and not counted
                promoted_count = sum(1 for i in range(len(st.k))
                                     if new_st.k[i] != st.k[i])
            st = new_st
        else:
            t0 = time.perf_counter()
            res = insert_edge(g, st, u, v, variant=variant, td=td,
                              parallel_levels=parallel_levels)
            elapsed = time.perf_counter() - t0
            applied = res.outcome is EdgeOutcome.ADDED
            promoted_count = len(res.promoted)
            work = res.work_units

        baseline_elapsed = None
        speedup = None
        if baseline and applied:
            mirror.add_edge(u, v)
            t0 = time.perf_counter()
            truss_decompose(mirror)
            baseline_elapsed = time.perf_counter() - t0
            if elapsed > 0:
                speedup = baseline_elapsed / elapsed
        elif baseline and not applied:
            mirror.add_edge(u, v)

        verified = None
        if verify and applied:
            verified = states_equal(st, truss_decompose(g))

        if applied:
            effective += 1
        report.per_insertion.append(InsertionRow(
            index=index, edge=(u, v), applied=applied, elapsed=elapsed,
            baseline_elapsed=baseline_elapsed, speedup=speedup,
            promoted_count=promoted_count, work_units=work,
            verified=verified))
        if verified is False:
            report.ok = False
            break

    report.config["final_edges"] = g.edge_count
    report.config["final_ktmax"] = st.ktmax
    report.finalize()
    return report


@dataclass(frozen=True)
class BatchBenchResult:
    report: BenchReport
    batch_result: BatchResult
    batch_work_units: int
    sequential_work_units: int
    batch_elapsed: float
    sequential_elapsed: float
    states_match: bool


def run_batch_bench(events: list[TemporalEdge], *, fraction, batch_size: int,
                    algorithm: str = BATCH, verify: bool = False,
                    config: dict | None = None) -> BatchBenchResult:
    """Apply the next batch_size tail events as one batch and, on clones,
    as a sequence of single insertions; compare work and (optionally)
    verify both ends against a scratch decomposition.

    The state named by `algorithm` is the primary one: its timing fills
    the report rows. Both work_unit totals are always measured because
    the comparison is the point of the exercise.
    """
    if algorithm not in BATCH_ALGORITHMS:
        raise ValueError(f"unknown batch algorithm {algorithm!r}")
    g, st, tail = prepare_replay(events, fraction)
    pairs = [(ev.src, ev.dst) for ev in tail[:batch_size]]

    report = BenchReport(config=dict(config or {}))
    report.config.update({
        "fraction": str(fraction),
        "batch_size": batch_size,
        "algorithm": algorithm,
        "verify": verify,
        "prefix_edges": g.edge_count,
        "prefix_ktmax": st.ktmax,
        "batch_pairs": len(pairs),
    })

    g_batch, st_batch = g.copy(), st.copy()
    td_batch = rebuild_truss_degrees(g_batch, st_batch)
    t0 = time.perf_counter()
    bres = batch_insert(g_batch, st_batch, pairs, td=td_batch)
    batch_elapsed = time.perf_counter() - t0

    g_seq, st_seq = g.copy(), st.copy()
    td_seq = rebuild_truss_degrees(g_seq, st_seq)
    seq_work = 0
    seq_rows = []
    t0 = time.perf_counter()
    for i, (u, v) in enumerate(pairs):
        t1 = time.perf_counter()
        res = insert_edge(g_seq, st_seq, u, v, td=td_seq)
        dt = time.perf_counter() - t1
        seq_work += res.work_units
        seq_rows.append((i, (u, v), res, dt))
    sequential_elapsed = time.perf_counter() - t0

    states_match = states_equal(st_batch, st_seq)
    verified = None
    if verify:
        oracle = truss_decompose(g_batch)
        verified = states_equal(st_batch, oracle) and states_match
        report.ok = bool(verified)

    if algorithm == BATCH:
        report.per_insertion.append(InsertionRow(
            index=0, edge=pairs[0] if pairs else (0, 0),
            applied=bool(bres.accepted), elapsed=batch_elapsed,
            baseline_elapsed=sequential_elapsed,
            speedup=(sequential_elapsed / batch_elapsed
                     if batch_elapsed > 0 else None),
            promoted_count=len(bres.promoted_existing),
            work_units=bres.work_units, verified=verified))
    else:
        for i, pair, res, dt in seq_rows:
            report.per_insertion.append(InsertionRow(
                index=i, edge=pair,
                applied=res.outcome is EdgeOutcome.ADDED, elapsed=dt,
                baseline_elapsed=None, speedup=None,
                promoted_count=len(res.promoted),
                work_units=res.work_units, verified=verified))

    report.config.update({
        "batch_work_units": bres.work_units,
        "sequential_work_units": seq_work,
        "batch_elapsed": batch_elapsed,
        "sequential_elapsed": sequential_elapsed,
        "states_match": states_match,
        "skipped": [[list(pair), status.value]
                    for pair, status in bres.skipped],
    })
    report.finalize()
    return BatchBenchResult(
        report=report, batch_result=bres,
        batch_work_units=bres.work_units, sequential_work_units=seq_work,
        batch_elapsed=batch_elapsed, sequential_elapsed=sequential_elapsed,
        states_match=states_match)


@dataclass(frozen=True)
class VerifyFailure:
    step: int
    edge: tuple[int, int]
    kind: str
    detail: str


def run_verify_sweep(g: Graph, st: TrussState, pairs, *,
                     check_permutation_every: int = 25,
                     rng: Random | None = None) -> VerifyFailure | None:
    """Insert pairs one at a time, holding the state to the oracle.

    Per step: scratch decomposition must match for both variants (the
    gated variant drives the live state; the full variant runs on a
    clone), every pre-existing K moves by 0 or +1, and every
    check_permutation_every steps a random level permutation must land in
    the same state as the ascending run. Returns the first failure.
    """
    rng = rng or Random(0)
    td = rebuild_truss_degrees(g, st)
    g_full, st_full = g.copy(), st.copy()

    for step, (u, v) in enumerate(pairs):
        before = list(st.k)

        permuted = None
        if check_permutation_every and step % check_permutation_every == 0:
            g_perm, st_perm = g.copy(), st.copy()
            td_perm = td.copy()
            res_perm = insert_edge(g_perm, st_perm, u, v, td=td_perm,
                                   level_order="descending")
            permuted = (st_perm, res_perm)

        res = insert_edge(g, st, u, v, td=td)
        insert_edge(g_full, st_full, u, v, variant=FULL_EXPLORATION)

        oracle = truss_decompose(g)
        if not states_equal(st, oracle):
            bad = [i for i in range(len(oracle.k)) if st.k[i] != oracle.k[i]]
            return VerifyFailure(step, (u, v), "oracle-mismatch",
                                 f"edge ids {bad[:20]} disagree with "
                                 f"scratch decomposition")
        if not states_equal(st_full, oracle):
            return VerifyFailure(step, (u, v), "variant-mismatch",
                                 "full-exploration state differs from oracle")
        if res.outcome is EdgeOutcome.ADDED:
            deltas = {st.k[i] - before[i] for i in range(len(before))}
            if not deltas <= {0, 1}:
                return VerifyFailure(step, (u, v), "delta-bound",
                                     f"pre-existing K deltas {sorted(deltas)}")
        if permuted is not None and not states_equal(permuted[0], st):
            return VerifyFailure(step, (u, v), "level-order",
                                 "descending level order changed the state")
    return None


def format_report(report: BenchReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return report.to_csv()
    if fmt == "text":
        return report.to_text()
    raise ValueError(f"unknown report format {fmt!r}")
