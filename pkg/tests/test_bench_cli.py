import csv
import io
import json
import random

import trusskit as tk
import trusskit.cli as cli
from trusskit.bench import (format_report, prepare_replay, run_batch_bench,
                            run_stream_bench, run_verify_sweep, states_equal)
from trusskit import truss_decompose

from conftest import random_simple_pairs

K4_LINES = "# k4\n0 1 0\n0 2 1\n0 3 2\n1 2 3\n1 3 4\n2 3 5\n"


def run_cli(capsys, argv):
    rc = cli.main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_decompose_text_output(tmp_path, capsys):
    snap = tmp_path / "k4.txt"
    snap.write_text(K4_LINES)
    rc, out, err = run_cli(capsys, ["decompose", "--input", str(snap),
                                    "--format", "text"])
    assert rc == 0
    rows = [line.split() for line in out.strip().splitlines()]
    assert rows == [["0", "1", "4"], ["0", "2", "4"], ["0", "3", "4"],
                    ["1", "2", "4"], ["1", "3", "4"], ["2", "3", "4"]]
    assert "ktmax: 4" in err


def test_decompose_restores_original_labels(tmp_path, capsys):
    snap = tmp_path / "tri.txt"
    snap.write_text("700 300 1\n300 900 2\n900 700 3\n")
    rc, out, _ = run_cli(capsys, ["decompose", "--input", str(snap),
                                  "--format", "text"])
    assert rc == 0
    rows = {tuple(line.split()[:2]) for line in out.strip().splitlines()}
    assert rows == {("300", "700"), ("300", "900"), ("700", "900")}


def test_decompose_json_and_csv(tmp_path, capsys):
    snap = tmp_path / "k4.txt"
    snap.write_text(K4_LINES)
    rc, out, _ = run_cli(capsys, ["decompose", "--input", str(snap),
                                  "--format", "json"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["ktmax"] == 4
    assert payload["histogram"] == {"4": 6}
    assert len(payload["edges"]) == 6

    rc, out, _ = run_cli(capsys, ["decompose", "--input", str(snap),
                                  "--format", "csv"])
    assert rc == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["u", "v", "K"]
    assert len(rows) == 7


def test_decompose_empty_input_is_fine(tmp_path, capsys):
    snap = tmp_path / "empty.txt"
    snap.write_text("# nothing here\n")
    rc, out, err = run_cli(capsys, ["decompose", "--input", str(snap),
                                    "--format", "text"])
    assert rc == 0
    assert out.strip() == ""


def test_decompose_accepts_model_spec(capsys):
    rc, out, _ = run_cli(capsys, ["decompose", "--input",
                                  "uniform-random(20,0.3)", "--seed", "4",
                                  "--format", "json"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["edges"]


def test_usage_errors_exit_one(tmp_path, capsys):
    rc, _, _ = run_cli(capsys, ["decompose"])
    assert rc == 1
    rc, _, _ = run_cli(capsys, ["no-such-verb"])
    assert rc == 1
    rc, _, _ = run_cli(capsys, ["decompose", "--input",
                                str(tmp_path / "missing.txt")])
    assert rc == 1
    rc, _, _ = run_cli(capsys, ["decompose", "--input", "bogus-model(1)"])
    assert rc == 1


def test_malformed_line_is_a_usage_error(tmp_path, capsys):
    snap = tmp_path / "bad.txt"
    snap.write_text("1 2 3\nnot numbers\n")
    rc, _, err = run_cli(capsys, ["decompose", "--input", str(snap)])
    assert rc == 1
    assert "bad.txt:2" in err


def test_generate_is_deterministic(tmp_path, capsys):
    argv = ["generate", "--input", "preferential(30,2)", "--seed", "6"]
    rc, out1, err = run_cli(capsys, argv)
    assert rc == 0
    rc, out2, _ = run_cli(capsys, argv)
    assert out1 == out2
    assert len(out1.strip().splitlines()) == (30 - 2) * 2
    out_path = tmp_path / "gen.txt"
    rc, _, _ = run_cli(capsys, argv + ["--output", str(out_path)])
    assert rc == 0
    assert out_path.read_text() == out1


def test_generate_requires_model_spec(tmp_path, capsys):
    snap = tmp_path / "k4.txt"
    snap.write_text(K4_LINES)
    rc, _, _ = run_cli(capsys, ["generate", "--input", str(snap)])
    assert rc == 1


def test_stream_bench_report_schema(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    rc, out, _ = run_cli(capsys, [
        "stream-bench", "--input", "uniform-random(40,0.15)", "--seed", "5",
        "--fraction", "0.5", "--count", "15", "--algorithm", "jk-inc",
        "--verify", "--baseline", "--report", str(report_path)])
    assert rc == 0
    payload = json.loads(report_path.read_text())
    assert payload["ok"] is True
    assert payload["config"]["algorithm"] == "jk-inc"
    assert payload["config"]["count"] == 15
    rows = payload["per_insertion"]
    assert len(rows) >= 15
    for row in rows:
        assert set(row) >= {"index", "edge", "applied", "elapsed",
                            "baseline_elapsed", "speedup", "promoted_count",
                            "work_units", "verified"}
    agg = payload["aggregate"]
    assert agg["effective_insertions"] == 15
    assert agg["verified_count"] == 15
    assert agg["failed_index"] is None
    assert agg["max_latency"] >= 0
    # summary text went to stdout
    assert "insertions" in out


def test_stream_bench_csv_report(tmp_path, capsys):
    report_path = tmp_path / "report.csv"
    rc, _, _ = run_cli(capsys, [
        "stream-bench", "--input", "uniform-random(30,0.2)", "--seed", "1",
        "--fraction", "0.5", "--count", "10", "--algorithm", "hcqty",
        "--format", "csv", "--report", str(report_path)])
    assert rc == 0
    rows = list(csv.reader(io.StringIO(report_path.read_text())))
    assert rows[0][0] == "index"
    assert len(rows) >= 11


def test_batch_bench_cli_smoke(tmp_path, capsys):
    report_path = tmp_path / "batch.json"
    rc, _, _ = run_cli(capsys, [
        "batch-bench", "--input", "uniform-random(40,0.2)", "--seed", "2",
        "--fraction", "0.5", "--batch-size", "10", "--verify",
        "--report", str(report_path)])
    assert rc == 0
    payload = json.loads(report_path.read_text())
    assert payload["ok"] is True
    assert payload["config"]["batch_size"] == 10
    assert payload["config"]["states_match"] is True


def test_verify_cli_smoke(capsys):
    rc, out, _ = run_cli(capsys, [
        "verify", "--input", "uniform-random(30,0.2)", "--seed", "3",
        "--count", "60"])
    assert rc == 0
    assert "ok" in out.lower()


def test_run_verify_sweep_healthy():
    g = tk.uniform_random_graph(25, 0.2, random.Random(12))
    st = truss_decompose(g)
    pairs = random_simple_pairs(random.Random(13), 25, 80)
    failure = run_verify_sweep(g, st, pairs, rng=random.Random(14))
    assert failure is None


def test_prepare_replay_splits_on_fraction():
    ds = tk.generate_synthetic("uniform-random(30,0.3)", seed=8)
    g, st, tail = prepare_replay(ds.events, "0.4")
    cut = len(ds.events) * 2 // 5
    assert g.edge_count <= cut
    assert len(tail) == len(ds.events) - cut
    ref = truss_decompose(g)
    assert states_equal(st, ref)


def test_stream_bench_scratch_counts_promotions():
    ds = tk.generate_synthetic("uniform-random(30,0.3)", seed=9)
    rep = run_stream_bench(ds.events, fraction="0.5", count=10,
                           algorithm="non-incremental", verify=True)
    assert rep.ok
    assert rep.aggregate["effective_insertions"] == 10


def test_format_report_mentions_speedup():
    ds = tk.generate_synthetic("uniform-random(30,0.3)", seed=10)
    rep = run_stream_bench(ds.events, fraction="0.5", count=8,
                           algorithm="jk-inc", baseline=True)
    text = format_report(rep, "text")
    assert "speedup" in text.lower()
