"""Synthetic graph generators and the two on-disk formats.

Generators cover the shapes used throughout the test and benchmark suites:
paths (maximum diameter), grids (moderate diameter, optional random edge
deletion), and sparse Erdos-Renyi graphs (low diameter).  All of them are
seeded and reproduce bit-identically from (params, seed) on any machine.

Two file formats round-trip through the package:

* ``.bin`` — binary CSR: three little-endian u64 words (n, m, total byte
  size), then n+1 u64 offsets, then m u32 neighbor ids.  ``m`` counts
  directed slots, so an undirected edge contributes 2.
* ``.adj`` — whitespace-separated text: the token ``AdjacencyGraph``, then
  n, m, the n offsets, and the m neighbor ids.  Read support only; it is an
  interchange input, not the native artifact.
"""

import os
import tempfile

import numpy as np

from fastbcc import (
    fast_bcc,
    gen_chain,
    gen_grid,
    gen_random,
    load_adj,
    load_bin,
    write_bin,
)

# --- generators -----------------------------------------------------------

chain = gen_chain(10)
grid = gen_grid(4, 5)
torus = gen_grid(4, 5, circular=True)
holey = gen_grid(6, 6, keep_prob=0.7, seed=3)
gnp = gen_random(1000, 8 / 1000, seed=42)

for name, g in [("chain(10)", chain), ("grid(4x5)", grid),
                ("torus(4x5)", torus), ("grid(6x6, keep 70%)", holey),
                ("G(1000, 8/n)", gnp)]:
    lab = fast_bcc(g)
    print(f"{name:22s} n={g.n:5d} undirected m={g.m // 2:5d} "
          f"blocks={lab.num_bccs:5d} components={lab.num_components}")

# Same (params, seed) -> same graph, on any machine.
assert np.array_equal(gen_random(1000, 8 / 1000, seed=42).edges, gnp.edges)
print("\nseeded generation is reproducible")

# --- binary round-trip ----------------------------------------------------

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "gnp.bin")
    write_bin(gnp, path)
    size = os.path.getsize(path)
    expect = 3 * 8 + (gnp.n + 1) * 8 + gnp.m * 4
    print(f"\nwrote {path.split(os.sep)[-1]}: {size} bytes "
          f"(header 24 + offsets {(gnp.n + 1) * 8} + edges {gnp.m * 4})")
    assert size == expect

    back = load_bin(path)
    assert np.array_equal(back.offsets, gnp.offsets)
    assert np.array_equal(back.edges, gnp.edges)
    print("binary round-trip is exact")

    # --- adjacency text format ---------------------------------------------

    apath = os.path.join(tmp, "tiny.adj")
    with open(apath, "w") as f:
        # chain 0-1-2: offsets 0,1,3 then neighbor lists [1], [0,2], [1]
        f.write("AdjacencyGraph\n3 4\n0 1 3\n1 0 2 1\n")
    tiny = load_adj(apath)
    print(f"\nparsed .adj: n={tiny.n}, neighbor lists "
          f"{[tiny.neighbors(v).tolist() for v in range(tiny.n)]}")
