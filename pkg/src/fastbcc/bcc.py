"""Biconnected components from an arbitrary spanning forest.

The pipeline has four steps, each linear work and low depth:

1. **Components + forest** — clustered connectivity over the whole graph;
   the spanning forest falls out of the claiming edges.
2. **Rooting** — Euler tour of the forest, rooted at each component's
   minimum vertex: parent pointers and nested tour intervals.
3. **Tagging** — per-vertex extremes ``w1/w2`` over non-forest edges and
   their subtree aggregates ``low/high``.
4. **Filtered components** — connectivity again, now keeping only edges the
   tags prove useful: a tree edge whose subtree can escape past its parent
   ("plain"), or a non-tree edge between interval-incomparable endpoints
   ("cross").  Fence tree edges and back edges are dropped because the
   surviving edges already connect exactly the right vertex sets.

Each component of the filtered graph, other than the singleton holding every
root, is one block minus its shallowest vertex; attaching that vertex (the
block's *head*, the parent of the component's shallowest member) yields the
biconnected components.  Labels are canonical (minimum member id), so output
is identical across worker counts, seeds, and even different spanning
forests.

The division of a vertex's incident edges among blocks is recoverable from
the labeling alone: edge (u, v) with v the deeper endpoint belongs to block
``label[v]`` (tree edges), or ``label[u]``/``label[v]`` whichever is not a
root singleton (non-tree edges land with both endpoints in one block).
"""

import time
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import _meter
from ._par import njit
from .connectivity import (_NO_MASK, _NO_SKEL, _cc_parts, _ldd_schedule,
                           default_beta, skeleton_record)
from .euler_tour import RootedForest, _rooted_from_claims
from .graphs import Graph
from .tagging import VertexTags, compute_tags


class EdgeClass(IntEnum):
    """How an edge relates to the rooted spanning forest."""

    PLAIN_TREE = 0  #: tree edge whose subtree escapes its parent's interval
    FENCE_TREE = 1  #: tree edge fencing its subtree in
    BACK = 2  #: non-tree edge between ancestor and descendant
    CROSS = 3  #: non-tree edge between incomparable vertices


def classify_edge(forest: RootedForest, tags: VertexTags, u: int, v: int) -> EdgeClass:
    """Classify graph edge (u, v) against the rooted forest.

    (u, v) must be an edge of the graph the tags were computed on.
    """
    parent, first, last = forest.parent, forest.first, forest.last
    if parent[v] == u or parent[u] == v:
        c = v if parent[v] == u else u
        p = u if parent[v] == u else v
        if tags.low[c] >= first[p] and tags.high[c] <= last[p]:
            return EdgeClass.FENCE_TREE
        return EdgeClass.PLAIN_TREE
    if first[u] <= first[v] and last[v] <= last[u]:
        return EdgeClass.BACK
    if first[v] <= first[u] and last[u] <= last[v]:
        return EdgeClass.BACK
    return EdgeClass.CROSS


def in_skeleton(cls: EdgeClass) -> bool:
    """Does this edge survive into the filtered connectivity pass?"""
    return cls in (EdgeClass.PLAIN_TREE, EdgeClass.CROSS)


@dataclass
class StepTimings:
    """Wall-clock seconds per pipeline step."""

    first_cc: float = 0.0
    rooting: float = 0.0
    tagging: float = 0.0
    last_cc: float = 0.0
    total: float = 0.0

    def as_dict(self) -> dict:
        return {
            "first_cc": self.first_cc,
            "rooting": self.rooting,
            "tagging": self.tagging,
            "last_cc": self.last_cc,
            "total": self.total,
        }


@dataclass
class BccLabeling:
    """Block structure of a graph.

    ``label[v]``: minimum member of v's filtered component.  ``head[l]``:
    for every component label l, the parent of the component's shallowest
    member — the one block vertex that is not in the component — or -1 when
    the component is a lone forest root (no block).  Entries of ``head`` at
    indices that are not labels are -1.  A block's vertex set is
    ``{v: label[v] == l} | {head[l]}``.
    """

    label: np.ndarray
    head: np.ndarray
    num_bccs: int
    num_components: int
    timings: StepTimings

    @property
    def n(self) -> int:
        return self.label.size

    def head_map(self) -> dict:
        """{component label: head vertex} for every block."""
        ls = np.flatnonzero(self.head != -1)
        return {int(l): int(self.head[l]) for l in ls}

    def is_root(self, v: int) -> bool:
        return self.label[v] == v and self.head[v] == -1


@njit(cache=True)
def _component_heads(label, parent, first, head, best):
    n = label.size
    big = np.int64(1) << 62
    # shallowest member per component, packed to break ties by vertex id
    # (ties cannot actually occur: entry positions are unique)
    best[:] = big
    for v in range(n):
        l = label[v]
        pk = (np.int64(first[v]) << 32) | v
        if pk < best[l]:
            best[l] = pk
    for l in range(n):
        if best[l] != big:
            shallow = best[l] & 0xFFFFFFFF
            head[l] = parent[shallow]


def fast_bcc(g: Graph, *, beta: float | None = None, seed: int = 0,
             block: int = 16) -> BccLabeling:
    """Biconnected components of ``g``.

    ``beta``/``seed`` steer the internal clustering only; the labeling is
    the same for every choice and every worker count.  ``block`` is the
    range-query granularity (result-neutral).  Runs the four-step pipeline
    and records per-step wall times on the result.
    """
    t_start = time.perf_counter()
    n = g.n
    timings = StepTimings()
    if n == 0:
        timings.total = time.perf_counter() - t_start
        return BccLabeling(np.empty(0, np.int32), np.empty(0, np.int32), 0, 0,
                           timings)
    if beta is None:
        beta = default_beta(n)

    t0 = time.perf_counter()
    # both connectivity passes share one activation plan: labels are
    # canonical, so reuse changes nothing observable and saves a pass of
    # random draws and sorting
    sched = _ldd_schedule(n, beta, np.random.SeedSequence(seed).spawn(1)[0])
    labels1, ncomp, parent_src, forest_u, forest_v, fcount = _cc_parts(
        g, _NO_MASK, _NO_SKEL, sched
    )
    timings.first_cc = time.perf_counter() - t0

    t0 = time.perf_counter()
    forest = _rooted_from_claims(n, labels1, parent_src, forest_u, forest_v,
                                 fcount, ncomp)
    timings.rooting = time.perf_counter() - t0

    t0 = time.perf_counter()
    tags = compute_tags(g, forest, block=block)
    timings.tagging = time.perf_counter() - t0

    t0 = time.perf_counter()
    skel = skeleton_record(forest.parent, forest.first, forest.last,
                           tags.low, tags.high)
    labels2 = _cc_parts(g, _NO_MASK, skel, sched)[0]
    head = _meter.full(n, -1, np.int32)
    best = _meter.alloc(n, np.int64)
    _component_heads(labels2, forest.parent, forest.first, head, best)
    num_bccs = int(np.count_nonzero(head != -1))
    timings.last_cc = time.perf_counter() - t0

    timings.total = time.perf_counter() - t_start
    return BccLabeling(labels2, head, num_bccs, ncomp, timings)


def extract_bccs(labeling: BccLabeling) -> list:
    """Vertex sets of all blocks, each sorted, ordered by component label.

    Materializes the implicit labeling; meant for inspection and testing on
    graphs whose block lists fit comfortably in memory.
    """
    label = labeling.label
    head = labeling.head
    order = np.argsort(label, kind="stable")
    if order.size == 0:
        return []
    sorted_lab = label[order]
    bounds = np.flatnonzero(np.diff(sorted_lab)) + 1
    out = []
    for grp in np.split(order, bounds):
        l = int(label[grp[0]])
        h = int(head[l])
        if h == -1:
            continue
        out.append(np.sort(np.append(grp, h)).astype(np.int64))
    return out


def articulation_points(labeling: BccLabeling) -> np.ndarray:
    """Sorted cut vertices, derived from the labeling.

    A non-root vertex cuts iff it heads at least one block; a forest root
    iff it heads at least two.
    """
    n = labeling.n
    head = labeling.head
    label = labeling.label
    heads = head[head != -1]
    headed = np.bincount(heads, minlength=n)
    is_root = (label == np.arange(n, dtype=label.dtype)) & (head == -1)
    cut = np.where(is_root, headed >= 2, headed >= 1)
    return np.flatnonzero(cut).astype(np.int64)
