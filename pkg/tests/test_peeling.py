"""Static decomposition against the stripping oracle and frozen fixtures.

The JSON files under data/ were computed once with the reference code in
oracles.py (round-based subgraph stripping, raw adjacency intersection)
and are kept frozen, so a regression in either the generators or the
peeling shows up as a diff against known-good numbers rather than as
mutual self-consistency.
"""

import json
import pathlib
import random

from hypothesis import given, settings

import trusskit as tk
from trusskit import Graph, truss_decompose, extract_truss, verify_state

import oracles
from conftest import graph_from_pairs, small_edge_lists

DATA = pathlib.Path(__file__).parent / "data"


def load_fixture(name):
    with open(DATA / name) as f:
        return json.load(f)


def test_support_fixture():
    fx = load_fixture("support_uniform_20_04_seed7.json")
    g = tk.uniform_random_graph(20, 0.4, random.Random(7))
    assert g.edge_count == fx["edge_count"] == 83
    expected = {(u, v): s for u, v, s in fx["support"]}
    assert {e: g.support(*e) for e in g.edges} == expected


def test_truss_number_fixture():
    fx = load_fixture("truss_uniform_30_03_seed1.json")
    g = tk.uniform_random_graph(30, 0.3, random.Random(1))
    assert g.edge_count == fx["edge_count"] == 139
    st = truss_decompose(g)
    expected = {(u, v): k for u, v, k in fx["truss"]}
    assert {e: st.k[i] for i, e in enumerate(g.edges)} == expected
    assert st.ktmax == fx["ktmax"] == 4


def test_truss_degree_rebuild_matches_fixture():
    fx = load_fixture("truss_uniform_30_03_seed1.json")
    g = tk.uniform_random_graph(30, 0.3, random.Random(1))
    st = truss_decompose(g)
    td = tk.rebuild_truss_degrees(g, st)
    expected = {(u, v): d for u, v, d in fx["truss_degree"]}
    assert {e: td.td[i] for i, e in enumerate(g.edges)} == expected


def test_clique_law():
    for n in range(3, 11):
        g = graph_from_pairs(
            (u, v) for u in range(n) for v in range(u + 1, n))
        st = truss_decompose(g)
        assert st.k == [n] * g.edge_count
        assert st.ktmax == n


def test_empty_and_triangle_free():
    assert truss_decompose(Graph()).ktmax == 2
    path = graph_from_pairs([(0, 1), (1, 2), (2, 3)])
    st = truss_decompose(path)
    assert st.k == [2, 2, 2]
    assert st.ktmax == 2


def test_tie_break_does_not_change_numbers():
    g = tk.uniform_random_graph(25, 0.25, random.Random(9))
    lo = truss_decompose(g, tie_break="low-id")
    hi = truss_decompose(g, tie_break="high-id")
    assert lo.k == hi.k
    assert lo.ktmax == hi.ktmax


def test_assignment_log_levels_never_decrease():
    g = tk.uniform_random_graph(25, 0.25, random.Random(9))
    log: list[int] = []
    st = truss_decompose(g, assignment_log=log)
    assert len(log) == g.edge_count
    levels = [st.k[e] for e in log]
    assert levels == sorted(levels)
    assert all(lv >= 2 for lv in levels)


def test_extract_truss_two_disjoint_k4():
    pairs = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    pairs += [(u + 10, v + 10) for u, v in pairs]
    g = graph_from_pairs(pairs)
    st = truss_decompose(g)
    subs = extract_truss(g, st, 4)
    assert len(subs) == 2
    got = {frozenset(s.edges) for s in subs}
    assert got == oracles.truss_components(g.edges, 4)
    assert extract_truss(g, st, 5) == []


def test_verify_state_flags_a_corrupted_entry():
    g = tk.uniform_random_graph(20, 0.3, random.Random(2))
    st = truss_decompose(g)
    assert verify_state(g, st) == []
    st.k[5] += 1
    assert verify_state(g, st) != []


@given(small_edge_lists())
@settings(max_examples=120, deadline=None)
def test_decompose_matches_stripping_oracle(pairs):
    g = graph_from_pairs(pairs)
    st = truss_decompose(g)
    expected = oracles.truss_numbers(g.edges)
    assert {e: st.k[i] for i, e in enumerate(g.edges)} == expected
    if g.edge_count:
        assert st.ktmax == max(expected.values())


@given(small_edge_lists(max_nodes=9, max_edges=22))
@settings(max_examples=80, deadline=None)
def test_adding_an_edge_never_lowers_numbers(pairs):
    if len(pairs) < 2:
        return
    g_small = graph_from_pairs(pairs[:-1])
    g_full = graph_from_pairs(pairs)
    small = truss_decompose(g_small)
    full = truss_decompose(g_full)
    for i, e in enumerate(g_small.edges):
        assert full.k[g_full.edge_id(*e)] >= small.k[i]
