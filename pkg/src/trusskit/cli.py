"""Command-line entry point.

Verbs: decompose, stream-bench, batch-bench, verify, generate. Inputs are
either a path to a temporal edge list or an inline synthetic model spec
such as "uniform-random(100,0.1)" or "preferential(200,3)" (optionally
with seed=N inside the parentheses, which beats --seed).

Exit codes: 0 on success, 2 when a requested verification fails, 1 for
usage and I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from random import Random

from .bench import (
    BATCH,
    BATCH_ALGORITHMS,
    SCRATCH,
    STREAM_ALGORITHMS,
    format_report,
    run_batch_bench,
    run_stream_bench,
    run_verify_sweep,
)
from .graph import canonical_edge
from .incremental import DEGREE_GATED
from .peeling import truss_decompose
from .stream import (
    StreamDataset,
    events_to_graph,
    generate_synthetic,
    load_temporal_edges,
    parse_model_spec,
    random_pairs,
    write_snap,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here reserves 2 for
    verification failures, so remap."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _looks_like_model(text: str) -> bool:
    return "(" in text and text.rstrip().endswith(")")


def _load_input(text: str, seed: int) -> StreamDataset:
    if _looks_like_model(text):
        return generate_synthetic(text, seed)
    return load_temporal_edges(text)


def _write_out(path: str | None, payload: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(payload)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _emit_report(report, args) -> None:
    payload = format_report(report, args.format)
    if args.report:
        _write_out(args.report, payload)
        sys.stdout.write(report.to_text())
    else:
        sys.stdout.write(payload if args.format != "text"
                         else report.to_text())


def cmd_decompose(args) -> int:
    ds = _load_input(args.input, args.seed)
    g = events_to_graph(ds.events)
    st = truss_decompose(g)
    back = ds.inverse_labels()

    rows = []
    for eid, (u, v) in enumerate(g.edges):
        ou, ov = back.get(u, u), back.get(v, v)
        a, b = canonical_edge(ou, ov)
        rows.append((a, b, st.k[eid]))
    rows.sort()

    if args.format == "json":
        payload = json.dumps({
            "edges": [[a, b, k] for a, b, k in rows],
            "ktmax": st.ktmax,
            "histogram": dict(sorted(Counter(st.k).items())),
        }, indent=2) + "\n"
    elif args.format == "csv":
        payload = "u,v,K\n" + "".join(f"{a},{b},{k}\n" for a, b, k in rows)
    else:
        payload = "".join(f"{a} {b} {k}\n" for a, b, k in rows)
    _write_out(args.output, payload)

    hist = Counter(st.k)
    sys.stderr.write(f"edges: {g.edge_count}  ktmax: {st.ktmax}\n")
    for k in sorted(hist):
        sys.stderr.write(f"  K={k}: {hist[k]} edges\n")
    return EXIT_OK


def cmd_stream_bench(args) -> int:
    ds = _load_input(args.input, args.seed)
    report = run_stream_bench(
        ds.events, fraction=args.fraction, count=args.count,
        algorithm=args.algorithm, verify=args.verify,
        baseline=args.baseline, parallel_levels=args.parallel_levels,
        config={"dataset": args.input, "seed": args.seed})
    _emit_report(report, args)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_batch_bench(args) -> int:
    ds = _load_input(args.input, args.seed)
    result = run_batch_bench(
        ds.events, fraction=args.fraction, batch_size=args.batch_size,
        algorithm=args.algorithm, verify=args.verify,
        config={"dataset": args.input, "seed": args.seed})
    _emit_report(result.report, args)
    return EXIT_OK if result.report.ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    ds = _load_input(args.input, args.seed)
    g = events_to_graph(ds.events)
    st = truss_decompose(g)
    n = max(2, g.vertex_count)
    rng = Random(args.seed)
    pairs = random_pairs(n, args.count, rng)
    failure = run_verify_sweep(g, st, pairs, rng=rng)
    if failure is None:
        sys.stdout.write(
            f"ok: {args.count} insertions verified on {args.input!r} "
            f"(seed {args.seed})\n")
        return EXIT_OK
    sys.stdout.write(
        f"FAIL at step {failure.step}: inserting edge {failure.edge} "
        f"broke {failure.kind}\n  {failure.detail}\n"
        f"  reproduce: trusskit verify --input {args.input!r} "
        f"--count {args.count} --seed {args.seed}\n")
    return EXIT_VERIFY


def cmd_generate(args) -> int:
    if not _looks_like_model(args.input):
        raise ValueError(f"generate needs a model spec, got {args.input!r}")
    ds = generate_synthetic(args.input, args.seed)
    if args.output is None or args.output == "-":
        for ev in ds.events:
            sys.stdout.write(f"{ev.src} {ev.dst} {ev.ts}\n")
    else:
        write_snap(args.output, ds.events)
    sys.stderr.write(
        f"{len(ds.events)} events, "
        f"{ds.stats.distinct_simple_edges} distinct edges\n")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="trusskit",
                     description="Truss decomposition toolkit: static "
                                 "peeling, incremental and batch "
                                 "maintenance, replay benchmarks.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, *, fraction=False, count=None, batch=False,
               algorithms=None, default_algorithm=None, bench=False):
        p.add_argument("--input", required=True,
                       help="edge-list path or model spec like "
                            "'uniform-random(100,0.1)'")
        p.add_argument("--seed", type=int, default=0)
        if fraction:
            p.add_argument("--fraction", default="0.5",
                           help="prefix fraction of raw events (default "
                                "0.5)")
        if count is not None:
            p.add_argument("--count", type=int, default=count)
        if batch:
            p.add_argument("--batch-size", type=int, default=100)
        if algorithms:
            p.add_argument("--algorithm", choices=algorithms,
                           default=default_algorithm)
        if bench:
            p.add_argument("--verify", action="store_true")
            p.add_argument("--report", default=None,
                           help="write the full report to this path")
            p.add_argument("--format", choices=("text", "json", "csv"),
                           default="json")

    p = sub.add_parser("decompose", help="peel a graph, print u v K lines")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("text", "json", "csv"),
                   default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("stream-bench",
                       help="replay single insertions against a prefix")
    common(p, fraction=True, count=100, algorithms=STREAM_ALGORITHMS,
           default_algorithm=DEGREE_GATED, bench=True)
    p.add_argument("--baseline", action="store_true",
                   help="also time scratch recompute per insertion")
    p.add_argument("--parallel-levels", action="store_true")
    p.set_defaults(func=cmd_stream_bench)

    p = sub.add_parser("batch-bench",
                       help="apply one batch vs the sequential replay")
    common(p, fraction=True, batch=True, algorithms=BATCH_ALGORITHMS,
           default_algorithm=BATCH, bench=True)
    p.set_defaults(func=cmd_batch_bench)

    p = sub.add_parser("verify",
                       help="fuzz insertions against the scratch oracle")
    common(p, count=300)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a synthetic stream")
    p.add_argument("--input", required=True,
                   help="model spec, e.g. 'preferential(100,3)'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"trusskit: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
