"""Temporal edge streams: parsing, normalization, synthetic generation.

Input format is whitespace-separated "SRC DST TIMESTAMP" lines, one event
per line, with '#' comment lines and blank lines ignored. Events are
replayed in timestamp order; ties keep file order. Node labels are
arbitrary non-negative integers and get compacted to dense ids by first
appearance in replay order before any graph is built.

Synthetic generators draw only rng.random() and rng.randrange() so a
seeded random.Random reproduces the same stream everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .graph import Graph, canonical_edge


@dataclass(frozen=True)
class TemporalEdge:
    src: int
    dst: int
    ts: int


@dataclass(frozen=True)
class StreamStats:
    raw_count: int
    distinct_simple_edges: int
    self_loop_count: int
    duplicate_count: int


@dataclass(frozen=True)
class StreamDataset:
    """A replay-ready stream: timestamp-sorted, densely labeled events
    plus the original-label mapping and raw-stream counts."""

    events: list[TemporalEdge]
    label_map: dict[int, int]
    stats: StreamStats

    def inverse_labels(self) -> dict[int, int]:
        return {dense: orig for orig, dense in self.label_map.items()}


def parse_snap_text(lines, *, source: str = "<stream>") -> list[TemporalEdge]:
    """Parse SRC DST TIMESTAMP lines into events.

    Raises ValueError naming the source and 1-based line number on any
    line that is neither blank, a '#' comment, nor three integers.
    """
    events: list[TemporalEdge] = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 3:
            raise ValueError(
                f"{source}:{lineno}: expected 'SRC DST TIMESTAMP', "
                f"got {len(parts)} fields")
        try:
            src, dst, ts = (int(p) for p in parts)
        except ValueError:
            raise ValueError(
                f"{source}:{lineno}: non-integer field in {text!r}") from None
        events.append(TemporalEdge(src, dst, ts))
    return events


def read_snap_file(path) -> list[TemporalEdge]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_snap_text(fh, source=str(path))


def write_snap(path, events) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ev in events:
            fh.write(f"{ev.src} {ev.dst} {ev.ts}\n")


def sort_events(events) -> list[TemporalEdge]:
    """Timestamp order; ties keep input order (sorted is stable)."""
    return sorted(events, key=lambda ev: ev.ts)


def load_temporal_edges(source) -> StreamDataset:
    """Load a SNAP-style temporal edge list into a replay-ready dataset.

    source may be a path or an iterable of lines. Events come out
    timestamp-sorted with labels compacted in replay order; stats count
    the raw stream (loops and repeats included).
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        raw = read_snap_file(source)
    else:
        raw = parse_snap_text(source)
    ordered = sort_events(raw)
    stats = stream_stats(ordered)
    events, label_map = relabel_events(ordered)
    return StreamDataset(events=events, label_map=label_map, stats=stats)


def stream_stats(events) -> StreamStats:
    raw = 0
    loops = 0
    seen: set[tuple[int, int]] = set()
    dups = 0
    for ev in events:
        raw += 1
        if ev.src == ev.dst:
            loops += 1
            continue
        pair = canonical_edge(ev.src, ev.dst)
        if pair in seen:
            dups += 1
        else:
            seen.add(pair)
    return StreamStats(raw_count=raw, distinct_simple_edges=len(seen),
                       self_loop_count=loops, duplicate_count=dups)


def relabel_events(events) -> tuple[list[TemporalEdge], dict[int, int]]:
    """Compact node labels to 0..n-1 by first appearance.

    Every label that occurs is mapped, including ones seen only on
    self-loop events, so the mapping is a property of the stream rather
    than of what later survives filtering.
    """
    label_map: dict[int, int] = {}
    out: list[TemporalEdge] = []
    for ev in events:
        for label in (ev.src, ev.dst):
            if label not in label_map:
                label_map[label] = len(label_map)
        out.append(TemporalEdge(label_map[ev.src], label_map[ev.dst], ev.ts))
    return out, label_map


def build_prefix(events, fraction) -> tuple[list[TemporalEdge],
                                            list[TemporalEdge]]:
    """Split a sorted stream into a warmup prefix and a replay tail.

    The prefix holds the first floor(fraction * len(events)) events.
    fraction goes through Fraction(str(...)) so 0.05 of 332334 events
    lands on exactly 16616 rather than a float-rounding neighbor.
    """
    events = list(events)
    frac = Fraction(str(fraction))
    if frac < 0 or frac > 1:
        raise ValueError(f"fraction must be in [0, 1], got {fraction}")
    cut = int(frac * len(events))  # Fraction * int -> exact, int() floors
    return events[:cut], events[cut:]


def events_to_graph(events) -> Graph:
    """Build a simple graph from events, dropping loops and repeats."""
    g = Graph()
    for ev in events:
        g.add_edge(ev.src, ev.dst)
    return g


def events_from_pairs(pairs, *, start_ts: int = 0) -> list[TemporalEdge]:
    return [TemporalEdge(u, v, start_ts + i)
            for i, (u, v) in enumerate(pairs)]


# ---------------------------------------------------------------------------
# synthetic generators


def _pair_from_index(n: int, idx: int) -> tuple[int, int]:
    """idx-th pair (u, v), u < v < n, in lexicographic order."""
    # pairs with first coordinate < u: f(u) = u*(n-1) - u*(u-1)/2
    # invert by the quadratic formula, then correct the integer estimate
    u = int((2 * n - 1 - math.isqrt((2 * n - 1) ** 2 - 8 * idx)) // 2)
    if u < 0:
        u = 0

    def before(a: int) -> int:
        return a * (n - 1) - a * (a - 1) // 2

    while before(u + 1) <= idx:
        u += 1
    while before(u) > idx:
        u -= 1
    v = u + 1 + (idx - before(u))
    return u, v


def uniform_random_pairs(n: int, p: float, rng: Random) -> list[tuple[int, int]]:
    """Each of the C(n, 2) pairs independently with probability p.

    Skips between kept pairs are drawn geometrically, so the cost scales
    with the number of edges produced rather than with n squared.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    total = n * (n - 1) // 2
    pairs: list[tuple[int, int]] = []
    if p == 0.0 or total == 0:
        return pairs
    if p == 1.0:
        return [_pair_from_index(n, i) for i in range(total)]
    log_q = math.log1p(-p)
    idx = -1
    while True:
        r = rng.random()
        gap = int(math.log1p(-r) / log_q)
        idx += gap + 1
        if idx >= total:
            return pairs
        pairs.append(_pair_from_index(n, idx))


def uniform_random_graph(n: int, p: float, rng: Random) -> Graph:
    g = Graph()
    for u, v in uniform_random_pairs(n, p, rng):
        g.add_edge(u, v)
    if g.vertex_count < n:
        g._grow(n - 1)
    return g


def preferential_attachment_pairs(n: int, m: int,
                                  rng: Random) -> list[tuple[int, int]]:
    """Growing-network stream: nodes m..n-1 each attach to m distinct
    earlier nodes, picked proportionally to current degree.

    Produces exactly (n - m) * m edges in arrival order. The first
    arriving node attaches to the m seed nodes.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < m + 1:
        raise ValueError(f"need n > m, got n={n}, m={m}")
    pairs: list[tuple[int, int]] = []
    # each endpoint appearance makes a node proportionally likelier
    repeated: list[int] = []
    targets = list(range(m))
    for new in range(m, n):
        for t in targets:
            pairs.append((new, t))
            repeated.append(new)
            repeated.append(t)
        # next node's targets: m distinct degree-weighted draws
        if new + 1 < n:
            chosen = set()
            while len(chosen) < m:
                chosen.add(repeated[rng.randrange(len(repeated))])
            targets = sorted(chosen)
    return pairs


def preferential_attachment_graph(n: int, m: int, rng: Random) -> Graph:
    g = Graph()
    for u, v in preferential_attachment_pairs(n, m, rng):
        g.add_edge(u, v)
    if g.vertex_count < n:
        g._grow(n - 1)
    return g


def random_pairs(n: int, count: int, rng: Random, *,
                 allow_self_loops: bool = False) -> list[tuple[int, int]]:
    """count node pairs drawn uniformly; repeats possible by design."""
    if n < 2 and not allow_self_loops:
        raise ValueError("need at least two nodes to avoid self-loops")
    out: list[tuple[int, int]] = []
    for _ in range(count):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while u == v and not allow_self_loops:
            v = rng.randrange(n)
        out.append((u, v))
    return out


UNIFORM_RANDOM = "uniform-random"
PREFERENTIAL = "preferential"


def parse_model_spec(text: str) -> tuple[str, tuple, int | None]:
    """Parse "uniform-random(n,p)" / "preferential(n,m)", optionally with
    a trailing seed=N inside the parentheses.

    Returns (model name, parameters, inline seed or None).
    """
    spec = text.strip()
    open_p = spec.find("(")
    if open_p < 0 or not spec.endswith(")"):
        raise ValueError(f"malformed model spec {text!r}; expected "
                         f"name(args) such as uniform-random(100,0.1)")
    name = spec[:open_p].strip()
    args = [a.strip() for a in spec[open_p + 1:-1].split(",") if a.strip()]
    seed = None
    if args and args[-1].startswith("seed="):
        seed = int(args[-1][len("seed="):])
        args = args[:-1]
    if name == UNIFORM_RANDOM:
        if len(args) != 2:
            raise ValueError(f"{UNIFORM_RANDOM} takes (n, p), got {text!r}")
        return name, (int(args[0]), float(args[1])), seed
    if name == PREFERENTIAL:
        if len(args) != 2:
            raise ValueError(f"{PREFERENTIAL} takes (n, m), got {text!r}")
        return name, (int(args[0]), int(args[1])), seed
    raise ValueError(f"unknown synthetic model {name!r}")


def generate_synthetic(model: str | tuple, seed: int = 0) -> StreamDataset:
    """Deterministic synthetic stream for a model spec.

    model is either a spec string (see parse_model_spec; an inline seed
    wins over the argument) or a (name, params) tuple. Timestamps are the
    generation order and labels are already dense, so label_map is the
    identity over the node range.
    """
    if isinstance(model, str):
        name, params, inline_seed = parse_model_spec(model)
        if inline_seed is not None:
            seed = inline_seed
    else:
        name, params = model
    rng = Random(seed)
    if name == UNIFORM_RANDOM:
        n, p = params
        pairs = uniform_random_pairs(n, p, rng)
    elif name == PREFERENTIAL:
        n, m = params
        pairs = preferential_attachment_pairs(n, m, rng)
    else:
        raise ValueError(f"unknown synthetic model {name!r}")
    events = events_from_pairs(pairs)
    label_map = {i: i for i in range(n)}
    return StreamDataset(events=events, label_map=label_map,
                         stats=stream_stats(events))


def sparse_stream(edge_count: int, avg_degree: float,
                  rng: Random) -> list[TemporalEdge]:
    """A stream of roughly edge_count distinct edges over a node set sized
    so the end-state average degree is about avg_degree."""
    if edge_count < 1:
        raise ValueError("edge_count must be positive")
    if avg_degree <= 0:
        raise ValueError("avg_degree must be positive")
    n = max(2, int(round(2 * edge_count / avg_degree)))
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    while len(pairs) < edge_count:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        pair = canonical_edge(u, v)
        if pair in seen:
            continue
        seen.add(pair)
        pairs.append(pair)
    return events_from_pairs(pairs)
