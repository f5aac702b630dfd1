"""Command-line interface: generate graphs, run algorithms, verify, benchmark.

Subcommands
-----------

``gen``
    Write a synthetic graph (chain, grid, or sparse random) as a ``.bin``
    file and print its size.
``run``
    Load a ``.bin``/``.adj`` graph, run one algorithm for several rounds,
    and print the median timings (plus the four-step breakdown for the
    parallel pipeline).  ``--out`` appends the same numbers as a CSV row.
``verify``
    Run the parallel pipeline and the sequential baseline on the same graph
    and compare the *full* block partitions and articulation sets, not just
    counts.  Exit 0 on agreement, 1 with a diagnostic on the first mismatch.
``bench``
    Drive a whole suite from a JSON manifest and write one CSV row per
    (graph, algorithm) pair.  Rows for failed runs carry an error marker so
    one crash never loses a batch.

Measurement protocol: every command runs one untimed warm-up round first
(JIT compilation happens there), then reports the per-column median of the
timed rounds.  Timings are wall-clock seconds with 6 decimal places.  The
worker count comes from ``--threads`` (default "auto": all hardware
threads, or the ``FASTBCC_THREADS`` environment variable when set).  Thread
count, seed, and rounds never change any reported count or label — only
timings.

CSV schema (version 1, stable):
``graph,algo,n,m,bcc_count,total_seconds,first_cc_seconds,rooting_seconds,
tagging_seconds,last_cc_seconds,rounds,threads,peak_aux_words,error``.
Step columns are empty for the sequential baselines; on an error row every
numeric field is empty and ``error`` holds the message.

Bench manifest schema (JSON)::

    {
      "graphs": ["chain_1e6.bin", "grid.adj"],
      "algos": ["fastbcc", "hopcroft-tarjan", "tarjan-vishkin"],
      "rounds": 10,         // optional, default 10
      "threads": "auto",    // optional, default "auto"
      "seed": 0             // optional, default 0
    }

Exit codes: 0 success, 1 verification mismatch, 2 usage or I/O error.
"""

import argparse
import csv
import json
import os
import statistics
import sys
from dataclasses import dataclass

from . import _meter, _par
from .baselines import hopcroft_tarjan, tarjan_vishkin
from .bcc import StepTimings, articulation_points, extract_bccs, fast_bcc
from .graphs import (
    Graph,
    gen_chain,
    gen_grid,
    gen_random,
    load_adj,
    load_bin,
    write_bin,
)

ALGOS = ("fastbcc", "hopcroft-tarjan", "tarjan-vishkin")

CSV_COLUMNS = [
    "graph",
    "algo",
    "n",
    "m",
    "bcc_count",
    "total_seconds",
    "first_cc_seconds",
    "rooting_seconds",
    "tagging_seconds",
    "last_cc_seconds",
    "rounds",
    "threads",
    "peak_aux_words",
    "error",
]


@dataclass
class RunReport:
    """Result of benchmarking one algorithm on one graph."""

    graph: str
    algo: str
    n: int = 0
    m: int = 0
    bcc_count: int = 0
    total_seconds: float = 0.0
    steps: StepTimings = None
    rounds: int = 0
    threads: int = 1
    peak_aux_words: int = 0
    error: str = ""

    def csv_row(self) -> list:
        if self.error:
            return [self.graph, self.algo] + [""] * 11 + [self.error]
        s = self.steps
        step_cols = (
            [f"{s.first_cc:.6f}", f"{s.rooting:.6f}", f"{s.tagging:.6f}",
             f"{s.last_cc:.6f}"] if s is not None else ["", "", "", ""]
        )
        return (
            [self.graph, self.algo, self.n, self.m, self.bcc_count,
             f"{self.total_seconds:.6f}"]
            + step_cols
            + [self.rounds, self.threads, self.peak_aux_words, ""]
        )


def _load_graph(path) -> Graph:
    s = str(path)
    if s.endswith(".bin"):
        return load_bin(s)
    if s.endswith(".adj"):
        return load_adj(s)
    raise ValueError(f"{s}: unsupported graph format (expected .bin or .adj)")


def _run_once(g: Graph, algo: str, seed: int):
    """One execution: (bcc_count, total_seconds, StepTimings or None)."""
    if algo == "fastbcc":
        lab = fast_bcc(g, seed=seed)
        return lab.num_bccs, lab.timings.total, lab.timings
    if algo == "hopcroft-tarjan":
        bs = hopcroft_tarjan(g)
    elif algo == "tarjan-vishkin":
        bs = tarjan_vishkin(g)
    else:
        raise ValueError(f"unknown algorithm: {algo}")
    return bs.num_bccs, bs.core_seconds, None


def measure(g: Graph, algo: str, rounds: int, seed: int, threads) -> RunReport:
    """Warm up once, time ``rounds`` runs, report per-column medians."""
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    t = _par.resolve_threads(threads)
    totals, steps_list = [], []
    count = None
    words = 0
    with _par.workers(t):
        for r in range(rounds + 1):
            with _meter.measure() as meter:
                c, total, steps = _run_once(g, algo, seed)
            if count is None:
                count = c
            elif c != count:
                raise RuntimeError(
                    f"{algo} returned {c} blocks after reporting {count}; "
                    "rounds must be deterministic")
            if r == 0:
                continue  # warm-up: JIT compilation lands here
            words = max(words, meter.words)
            totals.append(total)
            if steps is not None:
                steps_list.append(steps)
    med_steps = None
    if steps_list:
        med_steps = StepTimings(
            first_cc=statistics.median(s.first_cc for s in steps_list),
            rooting=statistics.median(s.rooting for s in steps_list),
            tagging=statistics.median(s.tagging for s in steps_list),
            last_cc=statistics.median(s.last_cc for s in steps_list),
            total=statistics.median(s.total for s in steps_list),
        )
    return RunReport(
        graph="", algo=algo, n=g.n, m=g.m, bcc_count=count,
        total_seconds=statistics.median(totals), steps=med_steps,
        rounds=rounds, threads=t, peak_aux_words=words,
    )


def _append_csv(path, rows) -> None:
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as f:
        w = csv.writer(f)
        if fresh:
            w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow(r.csv_row())


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_run(args) -> int:
    g = _load_graph(args.graph)
    rep = measure(g, args.algo, args.rounds, args.seed, args.threads)
    rep.graph = os.path.basename(str(args.graph))
    print(f"graph: {rep.graph}  algo: {rep.algo}  n={rep.n}  m={rep.m}")
    print(f"threads: {rep.threads}  rounds: {rep.rounds}  seed: {args.seed}")
    print(f"bcc_count: {rep.bcc_count}")
    print(f"total_seconds: {rep.total_seconds:.6f}")
    if rep.steps is not None:
        for name, val in rep.steps.as_dict().items():
            if name != "total":
                print(f"  {name}: {val:.6f}")
    print(f"peak_aux_words: {rep.peak_aux_words}")
    if args.out:
        _append_csv(args.out, [rep])
        print(f"appended CSV row to {args.out}")
    return 0


def cmd_gen(args) -> int:
    if args.kind == "chain":
        g = gen_chain(args.n)
        default = f"chain_{args.n}.bin"
    elif args.kind == "grid":
        g = gen_grid(args.rows, args.cols, circular=args.circular,
                     keep_prob=args.keep, seed=args.seed)
        default = f"grid_{args.rows}x{args.cols}.bin"
    else:
        g = gen_random(args.n, args.p, seed=args.seed)
        default = f"random_{args.n}_{args.p}.bin"
    out = args.out or default
    write_bin(g, out)
    print(f"wrote {out}: n={g.n} m={g.m}")
    return 0


def _canonical_partition(blocks):
    return sorted(tuple(int(v) for v in blk) for blk in blocks)


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    lab = fast_bcc(g, seed=args.seed)
    fast_blocks = _canonical_partition(extract_bccs(lab))
    if args.corrupt_label:  # negative-control hook for the test suite
        fast_blocks = fast_blocks[1:] if fast_blocks else [(0, 1)]
    ref = hopcroft_tarjan(g)
    ref_blocks = _canonical_partition(ref.blocks)
    if fast_blocks == ref_blocks:
        fast_artic = [int(v) for v in articulation_points(lab)]
        ref_artic = [int(v) for v in ref.articulation]
        if fast_artic != ref_artic:
            print(f"verification FAILED: {args.graph}: blocks agree but "
                  f"articulation sets differ ({fast_artic} vs {ref_artic})",
                  file=sys.stderr)
            return 1
        print(f"verification OK: {args.graph} "
              f"(n={g.n} m={g.m} blocks={len(ref_blocks)})")
        return 0
    print(f"verification FAILED: {args.graph}: fastbcc found "
          f"{len(fast_blocks)} blocks, hopcroft-tarjan {len(ref_blocks)}",
          file=sys.stderr)
    fast_only = set(fast_blocks) - set(ref_blocks)
    ref_only = set(ref_blocks) - set(fast_blocks)
    if fast_only:
        print(f"  first block only in fastbcc: {sorted(fast_only)[0]}",
              file=sys.stderr)
    if ref_only:
        print(f"  first block only in hopcroft-tarjan: {sorted(ref_only)[0]}",
              file=sys.stderr)
    return 1


def cmd_bench(args) -> int:
    with open(args.manifest) as f:
        manifest = json.load(f)
    graphs = manifest["graphs"]
    algos = manifest.get("algos", ["fastbcc", "hopcroft-tarjan"])
    rounds = int(manifest.get("rounds", 10))
    threads = manifest.get("threads", "auto")
    seed = int(manifest.get("seed", 0))
    for a in algos:
        if a not in ALGOS:
            raise ValueError(f"unknown algorithm in manifest: {a}")

    reports = []
    for gpath in graphs:
        name = os.path.basename(str(gpath))
        try:
            g = _load_graph(gpath)
        except (OSError, ValueError) as exc:
            for algo in algos:
                reports.append(RunReport(graph=name, algo=algo,
                                         error=str(exc)))
            print(f"{name}: load failed: {exc}", file=sys.stderr)
            continue
        for algo in algos:
            try:
                rep = measure(g, algo, rounds, seed, threads)
                rep.graph = name
            except MemoryError as exc:
                rep = RunReport(graph=name, algo=algo,
                                error=f"allocation failed: {exc}")
                print(f"{name}/{algo}: allocation failed", file=sys.stderr)
            reports.append(rep)
            if not rep.error:
                print(f"{name}  {algo}  bcc_count={rep.bcc_count}  "
                      f"median={rep.total_seconds:.6f}s")

    out = args.out
    with open(out, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(CSV_COLUMNS)
        for r in reports:
            w.writerow(r.csv_row())
    print(f"wrote {len(reports)} rows to {out}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fastbcc",
        description="biconnected components: parallel pipeline, sequential "
                    "and edge-graph baselines, generators, benchmarks",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one algorithm on one graph")
    p_run.add_argument("graph", help="input .bin or .adj file")
    p_run.add_argument("--algo", choices=ALGOS, default="fastbcc")
    p_run.add_argument("--rounds", type=int, default=10)
    p_run.add_argument("--threads", default="auto")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--out", default=None,
                       help="append the result as a CSV row to this file")
    p_run.set_defaults(func=cmd_run)

    p_gen = sub.add_parser("gen", help="write a synthetic graph as .bin")
    gsub = p_gen.add_subparsers(dest="kind", required=True)
    g_chain = gsub.add_parser("chain", help="path graph 0-1-...-(n-1)")
    g_chain.add_argument("n", type=int)
    g_grid = gsub.add_parser("grid", help="rows x cols lattice")
    g_grid.add_argument("rows", type=int)
    g_grid.add_argument("cols", type=int)
    g_grid.add_argument("--circular", action="store_true",
                        help="add wraparound edges (torus)")
    g_grid.add_argument("--keep", type=float, default=1.0,
                        help="independent keep probability per edge")
    g_random = gsub.add_parser("random", help="Erdos-Renyi G(n, p)")
    g_random.add_argument("n", type=int)
    g_random.add_argument("p", type=float)
    for gp in (g_chain, g_grid, g_random):
        gp.add_argument("--seed", type=int, default=0)
        gp.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_verify = sub.add_parser(
        "verify", help="compare the parallel pipeline against the "
                       "sequential baseline on one graph")
    p_verify.add_argument("graph")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--corrupt-label", action="store_true",
                          help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="run a JSON manifest, write CSV")
    p_bench.add_argument("manifest")
    p_bench.add_argument("--out", default="bench.csv")
    p_bench.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, MemoryError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
