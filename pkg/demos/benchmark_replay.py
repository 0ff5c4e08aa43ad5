"""Drive the benchmark harness end to end on a synthetic stream.

run_stream_bench replays the tail of a stream through the incremental
engine, optionally timing a from-scratch decomposition after every
insertion for comparison. run_batch_bench does the same with chunked
batches. Both return a report object that serializes to JSON or CSV;
this script prints the text rendering and a few aggregate numbers.
"""

import random

from trusskit.bench import format_report, run_batch_bench, run_stream_bench
from trusskit.stream import sparse_stream

events = sparse_stream(20_000, 4.0, random.Random(99))
print(f"synthetic sparse stream: {len(events)} edges, "
      f"~{2 * len(events) / 5000:.1f} average degree on 5000 nodes")
print()

# per-insertion replay with a scratch-recompute baseline
rep = run_stream_bench(events, fraction="0.995", count=60,
                       algorithm="jk-inc", baseline=True, verify=True)
agg = rep.aggregate
print("stream bench, 60 live insertions against a 99.5% prefix:")
print(f"  verified insertions   {agg['verified_count']}")
print(f"  total work_units      {agg['total_work_units']}")
print(f"  max single latency    {agg['max_latency'] * 1e6:.0f} us")
print(f"  average speedup       {agg['average_speedup']:.0f}x "
      f"over scratch recompute")
print(f"  median speedup        {agg['median_speedup']:.0f}x")
print()

# same tail, chunked
bres = run_batch_bench(events, fraction="0.995", batch_size=20,
                       algorithm="jk-batch", verify=True)
print("batch bench, same tail in chunks of 20:")
print(f"  states match sequential: {bres.states_match}")
print(f"  batch work_units         {bres.batch_work_units}  "
      f"(sequential {bres.sequential_work_units})")
print()

print("text rendering of the stream report:")
print(format_report(rep, "text"))
