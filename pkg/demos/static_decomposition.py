"""Walk through a static truss decomposition on a small hand-built graph.

Two tight clusters (a 5-clique and a 4-clique) share a single bridge
edge. The decomposition assigns every edge the largest k for which it
survives inside a k-truss, so the clique interiors score high and the
bridge bottoms out at 2. The script prints the assignment, the level
histogram, and the 4-truss that remains after peeling.
"""

from trusskit import Graph, extract_truss, truss_decompose, verify_state

g = Graph()

# 5-clique on vertices 0..4
for u in range(5):
    for v in range(u + 1, 5):
        g.add_edge(u, v)

# 4-clique on vertices 10..13
for u in range(10, 14):
    for v in range(u + 1, 14):
        g.add_edge(u, v)

# one bridge between the clusters
g.add_edge(4, 10)

state = truss_decompose(g)
print(f"{g.edge_count} edges, maximum truss number {state.ktmax}")
print()

print("edge -> truss number")
for eid, (u, v) in enumerate(g.edges):
    print(f"  ({u:2d},{v:2d}) -> {state.k[eid]}")
print()

hist = {}
for k in state.k:
    hist[k] = hist.get(k, 0) + 1
print("level histogram:", dict(sorted(hist.items())))
print()

# The 4-truss keeps every edge with at least 2 triangles of its own
# level or above; the bridge and nothing else falls out at k=4.
components = extract_truss(g, state, 4)
print(f"4-truss has {len(components)} components:")
for comp in sorted(components, key=lambda c: min(min(e) for e in c.edges)):
    verts = sorted({x for e in comp.edges for x in e})
    print(f"  vertices {verts} ({len(comp.edges)} edges)")

assert verify_state(g, state) == []
print()
print("internal consistency check passed")
