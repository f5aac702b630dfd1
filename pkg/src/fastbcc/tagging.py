"""Per-vertex tour tags: neighbor extremes and subtree aggregates.

Given a rooted forest with tour intervals, each vertex first collects the
minimum and maximum entry position reachable through one non-forest edge
plus its own entry position (``w1``/``w2``).  The subtree minimum of ``w1``
and maximum of ``w2`` (``low``/``high``) then say how far any escape route
from the subtree can jump along the tour; a subtree whose [low, high] stays
inside the parent's interval cannot bypass its parent edge.

Because a vertex u lies in v's subtree exactly when ``first[u]`` falls in
v's interval, the subtree aggregate is a range query over an array indexed
by tour position that holds w at each vertex's entry slot and a neutral
filler elsewhere.  Queries run over a two-level structure: block extremes
plus doubling tables over the blocks, with direct scans of the two partial
boundary blocks.  This costs O(L + (L/block) log(L/block)) words instead of
the O(L log L) of a flat doubling table, which matters at tour lengths in
the tens of millions.

A flat doubling table (:class:`SparseTable`) is also provided; the range
query structure of choice for moderate inputs and the reference the blocked
path is tested against.
"""

from dataclasses import dataclass

import numpy as np

from . import _meter
from ._par import CHUNKS, njit, prange
from .euler_tour import RootedForest
from .graphs import Graph

_MIN_FILLER = (1 << 31) - 1  # larger than any tour position
_MAX_FILLER = -1  # smaller than any tour position

# the two-level structure packs (min-source << 32 | max-source + 1) into one
# word per tour position so boundary scans touch half the cache lines; the
# max part rides one above its true value to stay non-negative
_PACKED_FILLER = (np.int64(_MIN_FILLER) << np.int64(32)) | np.int64(_MAX_FILLER + 1)


@dataclass
class VertexTags:
    """All four tags, as tour positions (int32, length n)."""

    w1: np.ndarray
    w2: np.ndarray
    low: np.ndarray
    high: np.ndarray


# ---------------------------------------------------------------------------
# flat doubling table
# ---------------------------------------------------------------------------


class SparseTable:
    """Idempotent range queries in O(1) after O(L log L) build.

    ``mode`` is "min" or "max"; ``query(lo, hi)`` is inclusive on both ends.
    """

    def __init__(self, values, mode: str = "min"):
        if mode not in ("min", "max"):
            raise ValueError("mode must be 'min' or 'max'")
        values = np.asarray(values)
        self.mode = mode
        self._combine = np.minimum if mode == "min" else np.maximum
        L = values.size
        K = L.bit_length() - 1 if L else 0
        rows = [values]
        for k in range(1, K + 1):
            prev = rows[-1]
            w = 1 << (k - 1)
            limit = L - (1 << k) + 1
            row = prev.copy()
            row[:limit] = self._combine(prev[:limit], prev[w : w + limit])
            rows.append(row)
        self.table = np.stack(rows) if rows else np.empty((1, 0), values.dtype)

    def query(self, lo: int, hi: int):
        """Aggregate of values[lo..hi] inclusive."""
        if lo > hi:
            raise ValueError("empty range")
        span = hi - lo + 1
        k = span.bit_length() - 1
        a = self.table[k, lo]
        b = self.table[k, hi - (1 << k) + 1]
        return self._combine(a, b)


def build_sparse_table(values, mode: str = "min") -> SparseTable:
    return SparseTable(values, mode)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@njit(parallel=True, cache=True)
def _w_gather(offsets, edges, parent, first, w1, w2):
    n = parent.size
    for c in prange(CHUNKS):
        lo = c * n // CHUNKS
        hi = (c + 1) * n // CHUNKS
        for v in range(lo, hi):
            a = first[v]
            b = first[v]
            for s in range(offsets[v], offsets[v + 1]):
                u = np.int64(edges[s])
                if parent[u] != v and parent[v] != u:
                    fu = first[u]
                    if fu < a:
                        a = fu
                    if fu > b:
                        b = fu
            w1[v] = a
            w2[v] = b


@njit(parallel=True, cache=True)
def _scatter_at_first(first, w1, w2, AB):
    L = AB.size
    for c in prange(CHUNKS):
        lo = c * L // CHUNKS
        hi = (c + 1) * L // CHUNKS
        for p in range(lo, hi):
            AB[p] = _PACKED_FILLER
    n = first.size
    for c in prange(CHUNKS):
        lo = c * n // CHUNKS
        hi = (c + 1) * n // CHUNKS
        for v in range(lo, hi):
            AB[first[v]] = (np.int64(w1[v]) << 32) | (np.int64(w2[v]) + 1)


@njit(parallel=True, cache=True)
def _block_extremes(AB, bsz, tmm0):
    L = AB.size
    nb = tmm0.size
    for c in prange(CHUNKS):
        lo = c * nb // CHUNKS
        hi = (c + 1) * nb // CHUNKS
        for blk in range(lo, hi):
            p0 = blk * bsz
            p1 = min(p0 + bsz, L)
            x = AB[p0]
            mn = x >> 32
            mx = x & 0xFFFFFFFF
            for p in range(p0 + 1, p1):
                x = AB[p]
                a = x >> 32
                b = x & 0xFFFFFFFF
                if a < mn:
                    mn = a
                if b > mx:
                    mx = b
            tmm0[blk] = (mn << 32) | mx


@njit(parallel=True, cache=True)
def _doubling_tables(tmm):
    nb = tmm.shape[1]
    K = tmm.shape[0] - 1
    for k in range(1, K + 1):
        w = 1 << (k - 1)
        limit = nb - (1 << k) + 1
        for c in prange(CHUNKS):
            lo = c * nb // CHUNKS
            hi = (c + 1) * nb // CHUNKS
            for i in range(lo, hi):
                if i < limit:
                    x = tmm[k - 1, i]
                    y = tmm[k - 1, i + w]
                    a = x >> 32
                    b = y >> 32
                    mn = a if a < b else b
                    a = x & 0xFFFFFFFF
                    b = y & 0xFFFFFFFF
                    mx = a if a > b else b
                    tmm[k, i] = (mn << 32) | mx
                else:
                    tmm[k, i] = tmm[k - 1, i]


@njit(parallel=True, cache=True)
def _range_queries(first, last, AB, tmm, logt, bsz, low, high):
    n = first.size
    for c in prange(CHUNKS):
        vlo = c * n // CHUNKS
        vhi = (c + 1) * n // CHUNKS
        for v in range(vlo, vhi):
            lo = np.int64(first[v])
            hi = np.int64(last[v])
            blo = lo // bsz
            bhi = hi // bsz
            mn = np.int64(_MIN_FILLER)
            mx = np.int64(_MAX_FILLER + 1)
            if blo == bhi:
                for p in range(lo, hi + 1):
                    x = AB[p]
                    a = x >> 32
                    b = x & 0xFFFFFFFF
                    if a < mn:
                        mn = a
                    if b > mx:
                        mx = b
            else:
                for p in range(lo, (blo + 1) * bsz):
                    x = AB[p]
                    a = x >> 32
                    b = x & 0xFFFFFFFF
                    if a < mn:
                        mn = a
                    if b > mx:
                        mx = b
                for p in range(bhi * bsz, hi + 1):
                    x = AB[p]
                    a = x >> 32
                    b = x & 0xFFFFFFFF
                    if a < mn:
                        mn = a
                    if b > mx:
                        mx = b
                cnt = bhi - blo - 1
                if cnt > 0:
                    k = logt[cnt]
                    x = tmm[k, blo + 1]
                    y = tmm[k, bhi - (1 << k)]
                    a = x >> 32
                    b = y >> 32
                    t = a if a < b else b
                    if t < mn:
                        mn = t
                    a = x & 0xFFFFFFFF
                    b = y & 0xFFFFFFFF
                    t = a if a > b else b
                    if t > mx:
                        mx = t
            low[v] = np.int32(mn)
            high[v] = np.int32(mx - 1)


@njit(cache=True)
def _log_table(logt):
    logt[0] = 0
    if logt.size > 1:
        logt[1] = 0
    for i in range(2, logt.size):
        logt[i] = logt[i >> 1] + 1


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def compute_w(g: Graph, forest: RootedForest):
    """(w1, w2): extreme entry positions over each vertex and the far ends
    of its non-forest edges."""
    n = g.n
    w1 = _meter.alloc(n, np.int32)
    w2 = _meter.alloc(n, np.int32)
    if n:
        _w_gather(g.offsets, g.edges, forest.parent, forest.first, w1, w2)
    return w1, w2


def compute_low_high(forest: RootedForest, w1, w2, block: int = 16):
    """(low, high): subtree min of w1 / max of w2, per vertex.

    ``block`` is the two-level granularity; any value >= 2 gives identical
    results (it only moves work between scans and table lookups).
    """
    n = forest.n
    if block < 2:
        raise ValueError("block must be >= 2")
    low = _meter.alloc(n, np.int32)
    high = _meter.alloc(n, np.int32)
    if n == 0:
        return low, high
    L = 2 * n
    AB = _meter.alloc(L, np.int64)
    _scatter_at_first(forest.first, w1, w2, AB)

    bsz = int(block)
    nb = (L + bsz - 1) // bsz
    K = max(nb - 1, 1).bit_length() - 1
    tmm = _meter.alloc((K + 1, nb), np.int64)
    _block_extremes(AB, bsz, tmm[0])
    if K:
        _doubling_tables(tmm)
    logt = _meter.alloc(nb + 1, np.int32)
    _log_table(logt)
    _range_queries(forest.first, forest.last, AB, tmm, logt, bsz, low, high)
    return low, high


def compute_tags(g: Graph, forest: RootedForest, block: int = 16) -> VertexTags:
    """All four tags in one call (the shape the main pipeline consumes)."""
    w1, w2 = compute_w(g, forest)
    low, high = compute_low_high(forest, w1, w2, block=block)
    return VertexTags(w1, w2, low, high)
