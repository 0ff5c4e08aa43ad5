"""Temporal stream loading, prefix construction, synthetic generators.

The frozen counts and checksums in here were produced once from the
given seeds and pin generator determinism across refactors.
"""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import trusskit as tk
from trusskit.stream import (TemporalEdge, build_prefix, events_from_pairs,
                             events_to_graph, parse_model_spec,
                             parse_snap_text, random_pairs, read_snap_file,
                             relabel_events, sort_events, sparse_stream,
                             stream_stats, write_snap)


def checksum(events):
    return sum(e.src * 131 + e.dst for e in events) % 1000003


def test_parse_basic_lines():
    events = parse_snap_text([
        "# comment",
        "5 9 100",
        "",
        "  7 5 90  ",
        "5 5 95",
    ])
    assert events == [
        TemporalEdge(5, 9, 100),
        TemporalEdge(7, 5, 90),
        TemporalEdge(5, 5, 95),
    ]


def test_parse_reports_source_and_line_number():
    with pytest.raises(ValueError) as err:
        parse_snap_text(["1 2 3", "1 2"], source="feed.txt")
    assert "feed.txt:2" in str(err.value)
    with pytest.raises(ValueError) as err:
        parse_snap_text(["a b c"], source="feed.txt")
    assert "feed.txt:1" in str(err.value)


def test_sort_is_stable_on_equal_timestamps():
    events = [TemporalEdge(3, 4, 7), TemporalEdge(1, 2, 7),
              TemporalEdge(0, 1, 2)]
    out = sort_events(events)
    assert out == [TemporalEdge(0, 1, 2), TemporalEdge(3, 4, 7),
                   TemporalEdge(1, 2, 7)]


def test_stats_counts_loops_and_duplicates():
    events = parse_snap_text([
        "1 2 0", "2 1 1", "3 3 2", "1 2 3", "4 5 4",
    ])
    stats = stream_stats(events)
    assert stats.raw_count == 5
    assert stats.self_loop_count == 1
    assert stats.duplicate_count == 2
    assert stats.distinct_simple_edges == 2


def test_relabel_covers_all_labels_in_first_appearance_order():
    events = [TemporalEdge(40, 10, 0), TemporalEdge(10, 10, 1),
              TemporalEdge(7, 40, 2)]
    relabeled, mapping = relabel_events(events)
    assert mapping == {40: 0, 10: 1, 7: 2}
    assert relabeled == [TemporalEdge(0, 1, 0), TemporalEdge(1, 1, 1),
                         TemporalEdge(2, 0, 2)]


def test_load_orders_then_relabels(tmp_path):
    path = tmp_path / "feed.txt"
    path.write_text("# demo\n30 20 5\n10 30 1\n20 10 5\n")
    ds = tk.load_temporal_edges(path)
    # order by timestamp first, then labels by first appearance: 10, 30, 20
    assert ds.label_map == {10: 0, 30: 1, 20: 2}
    assert [(e.src, e.dst, e.ts) for e in ds.events] == [
        (0, 1, 1), (1, 2, 5), (2, 0, 5)]
    assert ds.stats.raw_count == 3
    inv = ds.inverse_labels()
    assert inv == {0: 10, 1: 30, 2: 20}


def test_load_accepts_iterables_of_lines():
    ds = tk.load_temporal_edges(["1 2 0", "2 3 1"])
    assert len(ds.events) == 2


def test_write_then_read_round_trip(tmp_path):
    events = [TemporalEdge(1, 2, 0), TemporalEdge(2, 3, 5)]
    path = tmp_path / "out.txt"
    write_snap(path, events)
    assert read_snap_file(path) == events


def test_prefix_cut_is_floor_of_fraction():
    events = [TemporalEdge(0, i + 1, i) for i in range(10)]
    head, tail = build_prefix(events, "0.25")
    assert len(head) == 2 and len(tail) == 8
    head, tail = build_prefix(events, 0.5)
    assert len(head) == 5
    head, tail = build_prefix(events, 1)
    assert tail == []
    head, tail = build_prefix(events, 0)
    assert head == []
    with pytest.raises(ValueError):
        build_prefix(events, "1.5")
    with pytest.raises(ValueError):
        build_prefix(events, -0.1)


def test_prefix_fraction_is_exact_decimal_not_binary_float():
    # 5% of 332334 events: the cut lands on floor(16616.7), and the
    # fraction must be read as the decimal 1/20, not the nearest double
    assert math.floor(Fraction("0.05") * 332334) == 16616
    events = [TemporalEdge(0, 1, i) for i in range(332334)]
    head, tail = build_prefix(events, "0.05")
    assert len(head) == 16616
    assert len(head) + len(tail) == 332334


@given(st.integers(0, 400), st.fractions(min_value=0, max_value=1))
@settings(max_examples=120, deadline=None)
def test_prefix_length_property(n, frac):
    events = [TemporalEdge(0, 1, i) for i in range(n)]
    head, tail = build_prefix(events, frac)
    assert len(head) == math.floor(frac * n)
    assert head + tail == events


def test_model_spec_parsing():
    assert parse_model_spec("uniform-random(100,0.1)") == (
        "uniform-random", (100, 0.1), None)
    assert parse_model_spec("preferential(200, 3, seed=5)") == (
        "preferential", (200, 3), 5)
    for bad in ("uniform-random", "uniform-random(1)", "nope(3,4)",
                "preferential(200,3,seed=x)"):
        with pytest.raises(ValueError):
            parse_model_spec(bad)


def test_uniform_random_synthetic_is_frozen():
    ds = tk.generate_synthetic("uniform-random(50,0.2)", seed=3)
    again = tk.generate_synthetic("uniform-random(50,0.2)", seed=3)
    assert ds.events == again.events
    assert len(ds.events) == 231
    assert [(e.src, e.dst, e.ts) for e in ds.events[:5]] == [
        (0, 2, 0), (0, 6, 1), (0, 9, 2), (0, 14, 3), (0, 19, 4)]
    assert checksum(ds.events) == 506978
    assert ds.stats.duplicate_count == 0
    assert ds.stats.self_loop_count == 0
    assert ds.label_map == {i: i for i in range(50)}


def test_preferential_synthetic_is_frozen():
    ds = tk.generate_synthetic("preferential(100,3)", seed=7)
    # every node after the seed clique brings exactly 3 edges
    assert len(ds.events) == (100 - 3) * 3 == 291
    assert [(e.src, e.dst, e.ts) for e in ds.events[:5]] == [
        (3, 0, 0), (3, 1, 1), (3, 2, 2), (4, 0, 3), (4, 1, 4)]
    assert checksum(ds.events) == 949691
    assert max(max(e.src, e.dst) for e in ds.events) == 99
    assert ds.stats.self_loop_count == 0
    assert ds.stats.duplicate_count == 0


def test_uniform_probability_extremes():
    empty = tk.generate_synthetic("uniform-random(10,0)", seed=0)
    assert empty.events == []
    full = tk.generate_synthetic("uniform-random(10,1)", seed=0)
    assert len(full.events) == 45


def test_inline_seed_wins_over_argument():
    a = tk.generate_synthetic("uniform-random(30,0.2,seed=9)", seed=0)
    b = tk.generate_synthetic("uniform-random(30,0.2)", seed=9)
    assert a.events == b.events


def test_sparse_stream_targets_average_degree():
    rng = random.Random(1)
    events = sparse_stream(2000, 4.0, rng)
    assert len(events) == 2000
    nodes = {x for e in events for x in (e.src, e.dst)}
    assert max(nodes) < 1000
    assert len({(min(e.src, e.dst), max(e.src, e.dst)) for e in events}) == 2000
    g = events_to_graph(events)
    assert g.edge_count == 2000
    deg_sum = 2 * g.edge_count
    assert deg_sum / g.vertex_count == pytest.approx(4.0, rel=0.05)


def test_random_pairs_never_emit_self_loops():
    rng = random.Random(2)
    pairs = random_pairs(50, 300, rng)
    assert len(pairs) == 300
    assert all(u != v for u, v in pairs)


def test_events_from_pairs_assigns_increasing_timestamps():
    events = events_from_pairs([(5, 1), (2, 3)], start_ts=10)
    assert events == [TemporalEdge(5, 1, 10), TemporalEdge(2, 3, 11)]
