"""Apply edge insertions in batches and compare against one-at-a-time.

The batch engine accepts a whole chunk of new edges, settles their truss
numbers together, and lifts existing edges at most once per level pass.
Its final state is always identical to feeding the same chunk through
the single-insertion engine edge by edge; what changes is the amount of
exploration spent getting there, which the work_units counters expose.
"""

import random

from trusskit import (insert_edge, rebuild_truss_degrees, truss_decompose,
                      uniform_random_graph)
from trusskit.batch import batch_insert

rng = random.Random(17)
base = uniform_random_graph(120, 0.08, rng)
state0 = truss_decompose(base)
print(f"base graph: {base.edge_count} edges, ktmax {state0.ktmax}")
print()

# one batch, inspected in detail
chunk = []
while len(chunk) < 12:
    u, v = rng.randrange(120), rng.randrange(120)
    if u != v:
        chunk.append((u, v))

g = base.copy()
st = state0.copy()
td = rebuild_truss_degrees(g, st)
res = batch_insert(g, st, chunk, td=td)

print(f"batch of {len(chunk)} submitted, {len(res.accepted)} accepted")
for (u, v), status in res.statuses:
    print(f"  ({u:3d},{v:3d}) {status.name}")
print()
print(f"new edges settled at levels "
      f"{sorted(st.k[e] for e in res.accepted)}")
if res.promoted_existing:
    print(f"{len(res.promoted_existing)} existing edges rose:")
    for eid, old, new in res.promoted_existing[:6]:
        print(f"  edge {eid}: {old} -> {new}")
print()

# same chunk, sequentially, must land on the same state
g_seq = base.copy()
st_seq = state0.copy()
td_seq = rebuild_truss_degrees(g_seq, st_seq)
seq_work = 0
for u, v in chunk:
    seq_work += insert_edge(g_seq, st_seq, u, v, td=td_seq).work_units
assert st_seq.k == st.k and st_seq.ktmax == st.ktmax
print(f"sequential replay matches exactly "
      f"(batch work {res.work_units}, sequential work {seq_work})")
print()

# sweep chunk sizes over a longer stream of edges
pairs = []
while len(pairs) < 300:
    u, v = rng.randrange(120), rng.randrange(120)
    if u != v:
        pairs.append((u, v))

print("chunk size sweep over the same 300 insertions:")
for size in (1, 10, 50, 150):
    g_b = base.copy()
    st_b = state0.copy()
    td_b = rebuild_truss_degrees(g_b, st_b)
    work = 0
    for i in range(0, len(pairs), size):
        work += batch_insert(g_b, st_b, pairs[i:i + size], td=td_b).work_units
    flag = "" if size == 1 else "   (one shared settling pass per level)"
    print(f"  size {size:3d}: work_units {work:6d}{flag}")
