"""Connected components via low-diameter clustering plus union-find.

The decomposition grows BFS balls from geometrically staggered sources: every
vertex draws an exponential shift, becomes a source when its start round
arrives (unless a ball already claimed it), and claimed vertices expand one
hop per round.  Inter-cluster edges are then folded with union-find.  The
spanning forest falls out for free: each vertex's claiming edge, plus the
edge behind every winning union.

Determinism does not depend on the worker count.  Claiming is a *gather*:
each candidate vertex scans its own neighbors and picks the minimum cluster
id among last-round claimants (ties by minimum neighbor id), so every cell is
written by one logical owner.  Per-vertex claim state packs (round, cluster)
into a single word; claims made concurrently in the current round are
thereby visible to but ignored by other claimers, which accept last-round
state only — that state is frozen for the whole round, so each chunk can
collect candidates and claim them back-to-back without a global barrier
between the two phases.  The only races anywhere are idempotent
duplicate-suppression flags, which affect at most which chunk buffers a
candidate, never what it is claimed as.  A vertex whose start round arrives
before any ball reaches it becomes a source (sources are seeded before the
round's expansion).

Component labels are canonical: the smallest vertex id in the component,
which makes them a graph invariant independent of seeds, workers, and the
decomposition itself.

An edge predicate can filter the graph two ways: a per-slot byte mask (the
generic ``keep_edge`` path, O(m) space), or a packed per-vertex record of
rooted-forest tags (the filtered pass of the main pipeline, O(n) space).
The record holds each vertex's tour interval in one word and its parent plus
a precomputed fence bit in a second, so the per-edge test costs one record
read per endpoint instead of probes into five separate tag arrays.
"""

import threading
from dataclasses import dataclass

import numpy as np

from . import _meter
from ._par import CHUNKS, get_workers, njit, prange
from .graphs import EdgeList, Graph

_NO_MASK = np.empty(0, dtype=np.uint8)
_NO_SKEL = np.empty((0, 2), dtype=np.int64)

# frontier batches scanning fewer slots than this run on one thread
SEQ_GRAIN = 1 << 13


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@njit(inline="always")
def _slot_kept(kept_mask, skel, u, w, s):
    """Does the active filter keep edge (u, w) at slot s?"""
    if kept_mask.size != 0:
        return kept_mask[s] != 0
    if skel.shape[0] != 0:
        # skeleton filter: keep non-fence tree edges and cross edges
        mw = skel[w, 1]
        if (mw >> 1) - 1 == u:  # tree edge, w the child
            return (mw & 1) == 0
        mu = skel[u, 1]
        if (mu >> 1) - 1 == w:  # tree edge, u the child
            return (mu & 1) == 0
        iu = skel[u, 0]
        iw = skel[w, 0]
        fu = iu >> 32
        lu = iu & 0xFFFFFFFF
        fw = iw >> 32
        lw = iw & 0xFFFFFFFF
        if fu <= fw and lu >= lw:
            return False  # u is w's ancestor: back edge
        if fw <= fu and lw >= lu:
            return False
        return True
    return True


@njit(parallel=True, cache=True)
def _pack_skeleton(parent, first, last, low, high, skel):
    n = parent.size
    for c in prange(CHUNKS):
        lo = c * n // CHUNKS
        hi = (c + 1) * n // CHUNKS
        for v in range(lo, hi):
            skel[v, 0] = (np.int64(first[v]) << 32) | np.int64(last[v])
            p = np.int64(parent[v])
            fence = np.int64(0)
            if p >= 0 and low[v] >= first[p] and high[v] <= last[p]:
                fence = np.int64(1)
            skel[v, 1] = ((p + 1) << 1) | fence


@njit(cache=True)
def _counting_sort_rounds(starts, order, bucket_off):
    n = starts.size
    nb = bucket_off.size - 1
    for i in range(n):
        bucket_off[starts[i] + 1] += 1
    for b in range(nb):
        bucket_off[b + 1] += bucket_off[b]
    cursor = bucket_off.copy()
    for v in range(n):
        b = starts[v]
        order[cursor[b]] = v
        cursor[b] += 1


@njit(inline="always")
def _expand_chunk(c, offsets, edges, f_cur, i0, i1, base_slot, pdeg, cand,
                  ccounts, t, state, parent_src, mark, kept_mask, skel):
    nv = i1 - i0
    lo = i0 + c * nv // CHUNKS
    hi = i0 + (c + 1) * nv // CHUNKS
    start = pdeg[lo] - base_slot
    cur = start
    # collect the unclaimed neighbors of this chunk's frontier slice
    # (mark is the narrow, cache-resident test, so it goes first)
    for i in range(lo, hi):
        v = np.int64(f_cur[i])
        for s in range(offsets[v], offsets[v + 1]):
            w = np.int64(edges[s])
            if mark[w] == 0 and state[w] == 0 and _slot_kept(
                kept_mask, skel, v, w, s
            ):
                mark[w] = 1  # benign race: duplicates only
                cand[cur] = w
                cur += 1
    ccounts[c] = cur
    # claim them: only last-round state (hi word == t) qualifies, and
    # that state is frozen all round, so concurrent claims cannot skew
    # the scan
    for k in range(start, cur):
        v = np.int64(cand[k])
        if state[v] != 0:
            continue
        best_c = np.int64(1 << 60)
        best_u = np.int64(1 << 60)
        for s in range(offsets[v], offsets[v + 1]):
            u = np.int64(edges[s])
            su = state[u]
            if (su >> 32) == t and _slot_kept(kept_mask, skel, v, u, s):
                cu = (su & 0xFFFFFFFF) - 1
                if cu < best_c or (cu == best_c and u < best_u):
                    best_c = cu
                    best_u = u
        # a kept edge to the previous frontier is what marked v
        state[v] = ((np.int64(t) + 1) << 32) | (best_c + 1)
        parent_src[v] = best_u


@njit(parallel=True, cache=True)
def _expand_claim(offsets, edges, f_cur, i0, i1, base_slot, pdeg, cand,
                  ccounts, t, state, parent_src, mark, kept_mask, skel):
    for c in prange(CHUNKS):
        _expand_chunk(c, offsets, edges, f_cur, i0, i1, base_slot, pdeg,
                      cand, ccounts, t, state, parent_src, mark, kept_mask,
                      skel)


@njit(cache=True)
def _expand_claim_seq(offsets, edges, f_cur, i0, i1, base_slot, pdeg, cand,
                      ccounts, t, state, parent_src, mark, kept_mask, skel):
    # Same chunk body run on one thread in chunk order.  Claim decisions are
    # owner-independent and the collect races are idempotent, so the outputs
    # match the parallel form exactly.
    for c in range(CHUNKS):
        _expand_chunk(c, offsets, edges, f_cur, i0, i1, base_slot, pdeg,
                      cand, ccounts, t, state, parent_src, mark, kept_mask,
                      skel)


@njit(cache=True)
def _append_claimed(f_cur, i0, i1, base_slot, pdeg, cand, ccounts,
                    enlisted, f_next, fnext_len):
    nv = i1 - i0
    for c in range(CHUNKS):
        lo = i0 + c * nv // CHUNKS
        start = pdeg[lo] - base_slot
        end = ccounts[c]
        for k in range(start, end):
            v = cand[k]
            if enlisted[v] == 0:
                enlisted[v] = 1
                f_next[fnext_len] = v
                fnext_len += 1
    return fnext_len


@njit(cache=True)
def _ldd_drive(offsets, edges, order, bucket_off,
               state, parent_src, mark, enlisted,
               f_cur, f_next, pdeg, cand, ccounts, bcap,
               kept_mask, skel, seq_grain):
    n_buckets = bucket_off.size - 1
    flen = 0
    t = 0
    while True:
        fnext_len = 0
        if t < n_buckets:
            for idx in range(bucket_off[t], bucket_off[t + 1]):
                v = order[idx]
                if state[v] == 0:  # source: claims itself
                    state[v] = ((np.int64(t) + 1) << 32) | (np.int64(v) + 1)
                    enlisted[v] = 1
                    f_next[fnext_len] = v
                    fnext_len += 1
        if flen > 0:
            pdeg[0] = 0
            for i in range(flen):
                v = f_cur[i]
                pdeg[i + 1] = pdeg[i] + (offsets[v + 1] - offsets[v])
            i0 = 0
            while i0 < flen:
                i1 = i0 + 1
                while i1 < flen and pdeg[i1 + 1] - pdeg[i0] <= bcap:
                    i1 += 1
                base_slot = pdeg[i0]
                # below the grain, entering the thread team costs more than
                # the round's work; the sequential twin computes the same
                # thing, so the cut-off cannot show in the output
                if pdeg[i1] - base_slot < seq_grain:
                    _expand_claim_seq(offsets, edges, f_cur, i0, i1,
                                      base_slot, pdeg, cand, ccounts, t,
                                      state, parent_src, mark, kept_mask,
                                      skel)
                else:
                    _expand_claim(offsets, edges, f_cur, i0, i1, base_slot,
                                  pdeg, cand, ccounts, t, state, parent_src,
                                  mark, kept_mask, skel)
                fnext_len = _append_claimed(f_cur, i0, i1, base_slot, pdeg,
                                            cand, ccounts, enlisted, f_next,
                                            fnext_len)
                i0 = i1
        tmp = f_cur
        f_cur = f_next
        f_next = tmp
        flen = fnext_len
        t += 1
        if flen == 0 and t >= n_buckets:
            return t


@njit(parallel=True, cache=True)
def _unpack_cluster(state, cluster):
    n = state.size
    for c in prange(CHUNKS):
        lo = c * n // CHUNKS
        hi = (c + 1) * n // CHUNKS
        for v in range(lo, hi):
            cluster[v] = np.int32((state[v] & 0xFFFFFFFF) - 1)


@njit(inline="always")
def _uf_find(parent, x):
    while parent[x] != x:
        p = parent[x]
        parent[x] = parent[p]  # path splitting
        x = p
    return x


@njit(parallel=True, cache=True)
def _scan_crossing(offsets, edges, cluster, v0, v1, base_slot, buf, bcounts,
                   kept_mask, skel):
    nv = v1 - v0
    for c in prange(CHUNKS):
        lo = v0 + c * nv // CHUNKS
        hi = v0 + (c + 1) * nv // CHUNKS
        cur = offsets[lo] - base_slot
        for u in range(lo, hi):
            for s in range(offsets[u], offsets[u + 1]):
                w = np.int64(edges[s])
                if u < w and cluster[u] != cluster[w] and _slot_kept(
                    kept_mask, skel, np.int64(u), w, s
                ):
                    buf[cur] = (np.int64(u) << 32) | w
                    cur += 1
        bcounts[c] = cur


@njit(cache=True)
def _union_batch(buf, bcounts, offsets, v0, v1, base_slot, cluster, uf_parent,
                 forest_u, forest_v, fcount):
    nv = v1 - v0
    for c in range(CHUNKS):
        lo = v0 + c * nv // CHUNKS
        start = offsets[lo] - base_slot
        end = bcounts[c]
        for k in range(start, end):
            packed = buf[k]
            u = packed >> 32
            w = packed & 0xFFFFFFFF
            ru = _uf_find(uf_parent, cluster[u])
            rw = _uf_find(uf_parent, cluster[w])
            if ru != rw:
                if ru < rw:
                    uf_parent[rw] = ru
                else:
                    uf_parent[ru] = rw
                forest_u[fcount] = u
                forest_v[fcount] = w
                fcount += 1
    return fcount


@njit(parallel=True, cache=True)
def _resolve_reps(cluster, uf_parent, rep):
    n = rep.size
    for c in prange(CHUNKS):
        lo = c * n // CHUNKS
        hi = (c + 1) * n // CHUNKS
        for v in range(lo, hi):
            rep[v] = _uf_find(uf_parent, cluster[v])


@njit(cache=True)
def _min_per_root(rep, minv):
    n = rep.size
    ncomp = 0
    for v in range(n):  # ascending: first visitor is the minimum
        r = rep[v]
        if minv[r] == -1:
            minv[r] = v
            ncomp += 1
    return ncomp


@njit(parallel=True, cache=True)
def _apply_labels(rep, minv, label):
    n = rep.size
    for c in prange(CHUNKS):
        lo = c * n // CHUNKS
        hi = (c + 1) * n // CHUNKS
        for v in range(lo, hi):
            label[v] = minv[rep[v]]


@njit(cache=True)
def _iota32(a):
    for i in range(a.size):
        a[i] = i


@njit(cache=True)
def _starts_from_shifts(shifts, scale, starts):
    """starts[v] = floor((max(shifts) - shifts[v]) * scale); returns the
    round count."""
    mx = shifts[0] if shifts.size else np.float32(0.0)
    for i in range(shifts.size):
        if shifts[i] > mx:
            mx = shifts[i]
    nr = np.int64(0)
    for i in range(shifts.size):
        s = np.int64((mx - shifts[i]) * scale)  # truncation == floor: >= 0
        starts[i] = s
        if s + 1 > nr:
            nr = s + 1
    return nr


@njit(cache=True)
def _emit_forest(parent_src, forest_u, forest_v, fcount, out):
    """Claim edges (ascending child id), then the winning union edges;
    returns the row count."""
    k = 0
    for v in range(parent_src.size):
        p = parent_src[v]
        if p >= 0:
            out[k, 0] = p
            out[k, 1] = v
            k += 1
    for i in range(fcount):
        out[k, 0] = forest_u[i]
        out[k, 1] = forest_v[i]
        k += 1
    return k


# ---------------------------------------------------------------------------
# public types and operations
# ---------------------------------------------------------------------------


@dataclass
class LddPartition:
    """Ball decomposition: cluster id (= source vertex) per vertex, the
    claiming neighbor per non-source vertex (-1 at sources), the number of
    clusters, and how many synchronous rounds the growth took."""

    cluster: np.ndarray
    parent_src: np.ndarray
    num_clusters: int
    rounds: int


@dataclass
class LddSchedule:
    """Source activation plan for one decomposition: vertex ids sorted by
    start round, with bucket offsets delimiting each round's batch.  The
    plan depends only on (n, beta, seed), so passes over related graphs on
    the same vertex set can share one."""

    order: np.ndarray
    bucket_off: np.ndarray


@dataclass
class CCResult:
    """labels[v] is the smallest vertex id in v's component.  forest_edges
    holds exactly n - num_components undirected edges spanning every
    component (claiming edges plus winning union edges)."""

    labels: np.ndarray
    forest_edges: EdgeList
    num_components: int


class UnionFind:
    """Shared-array union-find with path splitting, safe for concurrent use.

    ``find`` is lock-free (element reads/writes are atomic under the
    interpreter; path-splitting shortcuts are always valid parents).  The
    link step of ``union`` runs under a mutex so exactly one caller wins each
    merge.  Links always point the larger root at the smaller, so every
    root is the minimum id of its set.
    """

    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)
        self._lock = threading.Lock()

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            p = int(parent[x])
            parent[x] = parent[p]
            x = p
        return int(x)

    def union(self, a: int, b: int) -> bool:
        with self._lock:
            ra, rb = self.find(a), self.find(b)
            if ra == rb:
                return False
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb
            return True


def uf_find(uf: UnionFind, x: int) -> int:
    return uf.find(x)


def uf_union(uf: UnionFind, a: int, b: int) -> bool:
    return uf.union(a, b)


def default_beta(n: int) -> float:
    # conventional ball-growing rate: shallow clusters, ~20% of edges cut
    return 0.2


def skeleton_record(parent, first, last, low, high) -> np.ndarray:
    """Pack rooted-forest tags into the per-vertex record the skeleton
    filter reads: word 0 is the tour interval ``first << 32 | last``, word 1
    is ``(parent + 1) << 1 | fence`` where the fence bit marks a subtree
    that cannot escape past its parent."""
    n = parent.size
    skel = _meter.alloc((n, 2), np.int64)
    if n:
        _pack_skeleton(parent, first, last, low, high, skel)
    return skel


def _ldd_schedule(n, beta, seed) -> LddSchedule:
    rng = np.random.Generator(np.random.PCG64(seed))
    shifts = _meter.charge(rng.standard_exponential(size=n, dtype=np.float32))
    starts = _meter.alloc(n, np.int64)
    n_rounds = int(_starts_from_shifts(shifts, 1.0 / beta, starts))
    order = _meter.alloc(n, np.int32)
    bucket_off = _meter.zeros(n_rounds + 1, np.int64)
    _counting_sort_rounds(starts, order, bucket_off)
    return LddSchedule(order, bucket_off)


def _ldd_arrays(g, sched, kept_mask, skel):
    """Run the decomposition; returns (cluster, parent_src, rounds)."""
    n = g.n
    state = _meter.zeros(n, np.int64)
    parent_src = _meter.full(n, -1, np.int32)
    mark = _meter.zeros(n, np.uint8)
    enlisted = _meter.zeros(n, np.uint8)
    f_cur = _meter.alloc(n, np.int32)
    f_next = _meter.alloc(n, np.int32)
    pdeg = _meter.alloc(n + 1, np.int64)
    bcap = max(n, 1)
    cand = _meter.alloc(bcap, np.int32)
    ccounts = _meter.alloc(CHUNKS, np.int64)

    # with a worker team of one the parallel twin is pure overhead; the
    # sequential twin computes the same thing, so this is an engine choice
    # that cannot show in the output
    grain = (1 << 62) if get_workers() == 1 else SEQ_GRAIN
    rounds = _ldd_drive(
        g.offsets, g.edges, sched.order, sched.bucket_off,
        state, parent_src, mark, enlisted,
        f_cur, f_next, pdeg, cand, ccounts, bcap,
        kept_mask, skel, grain,
    )
    cluster = _meter.alloc(n, np.int32)
    _unpack_cluster(state, cluster)
    return cluster, parent_src, int(rounds)


def ldd(g: Graph, beta: float | None = None, seed: int = 0) -> LddPartition:
    """Low-diameter clustering of ``g``.

    ``beta`` trades cluster count against inter-cluster edges (expected
    crossing fraction O(beta)); default 1/log2(n).  Deterministic per seed.
    """
    if beta is None:
        beta = default_beta(g.n)
    if not beta > 0:
        raise ValueError("beta must be positive")
    if g.n == 0:
        return LddPartition(np.empty(0, np.int32), np.empty(0, np.int32), 0, 0)
    cluster, parent_src, rounds = _ldd_arrays(
        g, _ldd_schedule(g.n, beta, seed), _NO_MASK, _NO_SKEL
    )
    return LddPartition(cluster, parent_src, int((parent_src == -1).sum()), rounds)


def _cc_parts(g, kept_mask, skel, sched):
    """Labels plus the raw spanning-forest pieces, un-materialized:
    (label, ncomp, parent_src, forest_u, forest_v, fcount)."""
    n = g.n
    cluster, parent_src, _rounds = _ldd_arrays(g, sched, kept_mask, skel)

    uf_parent = _meter.alloc(n, np.int32)
    _iota32(uf_parent)
    buf = _meter.alloc(max(n, 1), np.int64)
    bcounts = _meter.alloc(CHUNKS, np.int64)
    forest_u = _meter.alloc(n, np.int32)
    forest_v = _meter.alloc(n, np.int32)
    fcount = 0
    offsets = g.offsets
    v0 = 0
    bcap = max(n, 1)
    while v0 < n:
        # widest v1 with offsets[v1] - offsets[v0] <= bcap, always advancing
        v1 = int(np.searchsorted(offsets, offsets[v0] + bcap, side="right")) - 1
        v1 = min(max(v1, v0 + 1), n)
        base_slot = offsets[v0]
        _scan_crossing(offsets, g.edges, cluster, v0, v1, base_slot, buf,
                       bcounts, kept_mask, skel)
        fcount = _union_batch(buf, bcounts, offsets, v0, v1, base_slot,
                              cluster, uf_parent, forest_u, forest_v, fcount)
        v0 = v1

    rep = _meter.alloc(n, np.int32)
    _resolve_reps(cluster, uf_parent, rep)
    minv = _meter.full(n, -1, np.int32)
    ncomp = int(_min_per_root(rep, minv))
    label = _meter.alloc(n, np.int32)
    _apply_labels(rep, minv, label)
    return label, ncomp, parent_src, forest_u, forest_v, fcount


def _cc_mode(g, kept_mask, skel, beta=None, seed=0, sched=None):
    n = g.n
    if n == 0:
        return CCResult(np.empty(0, np.int32), EdgeList(np.empty((0, 2), np.int64)), 0)
    if sched is None:
        if beta is None:
            beta = default_beta(n)
        sched = _ldd_schedule(n, beta, seed)
    label, ncomp, parent_src, forest_u, forest_v, fcount = _cc_parts(
        g, kept_mask, skel, sched
    )
    pairs = _meter.alloc((n, 2), np.int64)  # claims + unions total n - ncomp
    k = int(_emit_forest(parent_src, forest_u, forest_v, fcount, pairs))
    return CCResult(label, EdgeList(pairs[:k]), ncomp)


def connected_components(g: Graph, keep_edge=None, *, beta=None, seed: int = 0):
    """Connected components of ``g``, optionally restricted to edges where
    ``keep_edge(u, v)`` holds.  The predicate must be symmetric.

    Returns a :class:`CCResult`; labels are canonical min-member ids, so two
    runs agree exactly whatever the seed or worker count.
    """
    if keep_edge is None:
        return _cc_mode(g, _NO_MASK, _NO_SKEL, beta, seed)
    if isinstance(keep_edge, np.ndarray):
        mask = keep_edge.astype(np.uint8)
    else:
        pairs = g.edge_pairs()
        mask = np.fromiter(
            (keep_edge(int(u), int(v)) for u, v in pairs),
            dtype=np.uint8,
            count=g.m,
        )
    return _cc_mode(g, mask, _NO_SKEL, beta, seed)
