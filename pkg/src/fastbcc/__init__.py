"""Parallel biconnected components from arbitrary spanning forests.

The package is organized around one pipeline and two baselines:

* :mod:`fastbcc.graphs` — CSR graphs, file formats, generators
* :mod:`fastbcc.connectivity` — clustered + filtered connected components
* :mod:`fastbcc.euler_tour` — forest rooting via Euler circuits
* :mod:`fastbcc.tagging` — per-vertex interval tags and range queries
* :mod:`fastbcc.bcc` — the main biconnectivity algorithm
* :mod:`fastbcc.baselines` — sequential, brute-force, and skeleton-graph
  references
* :mod:`fastbcc.cli` — ``fastbcc gen/run/verify/bench``
"""

from . import _par  # noqa: F401  (must set thread env before numba loads)
from .bcc import (
    BccLabeling,
    EdgeClass,
    StepTimings,
    articulation_points,
    classify_edge,
    extract_bccs,
    fast_bcc,
    in_skeleton,
)
from .connectivity import (
    CCResult,
    LddPartition,
    UnionFind,
    connected_components,
    ldd,
    uf_find,
    uf_union,
)
from .euler_tour import RootedForest, build_euler_tour, is_ancestor, list_ranking
from .graphs import (
    EdgeList,
    Graph,
    gen_chain,
    gen_grid,
    gen_random,
    load_adj,
    load_bin,
    symmetrize,
    write_bin,
)
from .tagging import (
    SparseTable,
    VertexTags,
    build_sparse_table,
    compute_low_high,
    compute_tags,
    compute_w,
)

__version__ = "0.1.0"

__all__ = [
    "BccLabeling",
    "CCResult",
    "EdgeClass",
    "EdgeList",
    "Graph",
    "LddPartition",
    "RootedForest",
    "SparseTable",
    "StepTimings",
    "UnionFind",
    "VertexTags",
    "articulation_points",
    "build_euler_tour",
    "build_sparse_table",
    "classify_edge",
    "compute_low_high",
    "compute_tags",
    "compute_w",
    "connected_components",
    "extract_bccs",
    "fast_bcc",
    "gen_chain",
    "gen_grid",
    "gen_random",
    "in_skeleton",
    "is_ancestor",
    "ldd",
    "list_ranking",
    "load_adj",
    "load_bin",
    "symmetrize",
    "uf_find",
    "uf_union",
    "write_bin",
    "__version__",
]
