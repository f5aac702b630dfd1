"""Benchmarking: step breakdowns, auxiliary-space metering, and the CLI.

Everything the bench CLI reports is available programmatically:

* ``fast_bcc(...).timings`` — wall-clock seconds for each pipeline step;
* ``fastbcc._meter.measure()`` — auxiliary words (8-byte units) requested by
  an algorithm's scratch allocations while the context is active;
* ``fastbcc.cli.measure(...)`` — the warm-up + median protocol the CLI uses.

The space numbers below are the practical headline: the pipeline's scratch
stays ~O(n) as the graph gets denser, while the edge-graph reduction's
scratch grows with m.
"""

import json
import os
import subprocess
import sys
import tempfile

from fastbcc import _meter, fast_bcc, gen_random, write_bin
from fastbcc.baselines import tarjan_vishkin
from fastbcc.cli import measure

n = 1 << 15

# --- auxiliary words vs density ---------------------------------------------

print(f"auxiliary words at n = 2^15, rising density (m/n = 4, 16, 48):")
print(f"{'m/n':>6s} {'pipeline words':>16s} {'edge-graph words':>18s} {'ratio':>7s}")
for d in (4, 16, 48):
    g = gen_random(n, d / n, seed=1)
    fast_bcc(g)  # compile before measuring
    with _meter.measure() as meter:
        fast_bcc(g)
    fast_words = meter.words
    with _meter.measure() as meter:
        tarjan_vishkin(g)
    tv_words = meter.words
    print(f"{d:6d} {fast_words:16,d} {tv_words:18,d} {tv_words / fast_words:6.1f}x")

# --- step breakdown via the CLI's measurement protocol -----------------------

g = gen_random(1 << 17, 8 / (1 << 17), seed=2)
report = measure(g, "fastbcc", rounds=5, seed=0, threads="auto")
s = report.steps
print(f"\nG(2^17, 8/n) medians over {report.rounds} rounds "
      f"({report.threads} worker(s)):")
print(f"  connectivity  {s.first_cc * 1e3:7.1f} ms")
print(f"  rooting       {s.rooting * 1e3:7.1f} ms")
print(f"  tagging       {s.tagging * 1e3:7.1f} ms")
print(f"  filtered pass {s.last_cc * 1e3:7.1f} ms")
print(f"  total         {s.total * 1e3:7.1f} ms, "
      f"{report.bcc_count} blocks, {report.peak_aux_words:,} aux words")

# --- the same run, driven through the installed CLI --------------------------

with tempfile.TemporaryDirectory() as tmp:
    gpath = os.path.join(tmp, "g.bin")
    write_bin(gen_random(1 << 14, 8 / (1 << 14), seed=2), gpath)
    manifest = {"graphs": [gpath], "algos": ["fastbcc", "hopcroft-tarjan"],
                "rounds": 3}
    mpath = os.path.join(tmp, "suite.json")
    with open(mpath, "w") as f:
        json.dump(manifest, f)
    out = os.path.join(tmp, "bench.csv")
    print(f"\n$ fastbcc bench suite.json --out bench.csv")
    r = subprocess.run(
        [sys.executable, "-m", "fastbcc.cli", "bench", mpath, "--out", out],
        capture_output=True, text=True,
    )
    sys.stdout.write(r.stdout)
    print("bench.csv:")
    with open(out) as f:
        for line in f:
            print(f"  {line.rstrip()}")
