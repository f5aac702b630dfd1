"""Rooting a spanning forest with Euler tours.

The input forest arrives as undirected edge pairs in no particular order
(typically the by-product of :func:`fastbcc.connectivity.connected_components`).
Each tree edge becomes two directed slots; chaining each incoming slot to the
next outgoing slot around every vertex stitches the slots of a tree into one
Euler circuit.  Cutting the circuit at the root and ranking the resulting
linked list gives every slot a tour position, from which per-vertex entry
(``first``) and exit (``last``) positions and the parent pointers follow by a
per-vertex gather.

Positions are laid out in one global sequence: the tree rooted at r owns the
half-open block of 2 * size(r) positions, the root taking the block's two
extremes.  Subtree intervals nest, intervals of different trees are disjoint,
and an isolated vertex owns a 2-position block.  That yields the interval
test ``first[u] <= first[v] and last[v] <= last[u]`` for "u is an ancestor of
v" (inclusive), across the whole forest.

List ranking uses about sqrt(L) random splitters plus every list head:
parallel segment walks, a sequential pass over the short splitter chains, and
a parallel rank scatter.  Ranks are exact positions, so the output is
independent of the splitter sample and of the worker count.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _meter
from ._par import CHUNKS, njit, prange
from .connectivity import _uf_find
from .graphs import EdgeList

_RANK_SEED = 0x5EED


@dataclass
class RootedForest:
    """parent[v] (-1 at roots), tour entry/exit positions, and the root ids
    (ascending).  Tour positions span [0, 2n)."""

    parent: np.ndarray
    first: np.ndarray
    last: np.ndarray
    roots: np.ndarray

    @property
    def n(self) -> int:
        return self.parent.size

    @property
    def tour_len(self) -> int:
        return 2 * self.parent.size


def is_ancestor(forest: RootedForest, u: int, v: int) -> bool:
    """Inclusive ancestry via interval nesting."""
    return bool(
        forest.first[u] <= forest.first[v] and forest.last[v] <= forest.last[u]
    )


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _tree_csr(pairs, toff, cursor, tedges, twin):
    k = pairs.shape[0]
    n = toff.size - 1
    for i in range(k):
        toff[pairs[i, 0] + 1] += 1
        toff[pairs[i, 1] + 1] += 1
    for v in range(n):
        toff[v + 1] += toff[v]
        cursor[v] = toff[v]
    for i in range(k):
        u = pairs[i, 0]
        v = pairs[i, 1]
        su = cursor[u]
        cursor[u] += 1
        sv = cursor[v]
        cursor[v] += 1
        tedges[su] = v
        tedges[sv] = u
        twin[su] = sv
        twin[sv] = su


@njit(cache=True)
def _claims_csr(parent_src, forest_u, forest_v, fcount, toff, cursor,
                tedges, twin):
    # Same CSR _tree_csr builds from edge pairs, taken straight from the
    # connectivity pass's claim/union arrays: claim edges (parent_src[v], v)
    # in ascending v, then the union edges in discovery order.
    n = parent_src.size
    for v in range(n):
        p = parent_src[v]
        if p >= 0:
            toff[p + 1] += 1
            toff[v + 1] += 1
    for i in range(fcount):
        toff[forest_u[i] + 1] += 1
        toff[forest_v[i] + 1] += 1
    for v in range(n):
        toff[v + 1] += toff[v]
        cursor[v] = toff[v]
    for v in range(n):
        u = parent_src[v]
        if u >= 0:
            su = cursor[u]
            cursor[u] += 1
            sv = cursor[v]
            cursor[v] += 1
            tedges[su] = v
            tedges[sv] = u
            twin[su] = sv
            twin[sv] = su
    for i in range(fcount):
        u = forest_u[i]
        v = forest_v[i]
        su = cursor[u]
        cursor[u] += 1
        sv = cursor[v]
        cursor[v] += 1
        tedges[su] = v
        tedges[sv] = u
        twin[su] = sv
        twin[sv] = su


@njit(parallel=True, cache=True)
def _link_circuit(toff, twin, nxt):
    n = toff.size - 1
    for c in prange(CHUNKS):
        lo = c * n // CHUNKS
        hi = (c + 1) * n // CHUNKS
        for v in range(lo, hi):
            base = toff[v]
            k = toff[v + 1] - base
            for i in range(k):
                # incoming slot i hands the tour to outgoing slot i+1
                nxt[twin[base + i]] = base + (i + 1) % k


@njit(cache=True)
def _cut_roots(roots, toff, twin, nxt, heads):
    for i in range(roots.size):
        r = roots[i]
        base = toff[r]
        k = toff[r + 1] - base
        if k == 0:
            heads[i] = -1
        else:
            nxt[twin[base + k - 1]] = -1
            heads[i] = base


@njit(cache=True)
def _register_samples(heads, cand, sample_id, samples):
    count = 0
    for i in range(heads.size):
        h = heads[i]
        if h >= 0 and sample_id[h] == -1:
            sample_id[h] = count
            samples[count] = h
            count += 1
    for i in range(cand.size):
        s = cand[i]
        if sample_id[s] == -1:
            sample_id[s] = count
            samples[count] = s
            count += 1
    return count


@njit(parallel=True, cache=True)
def _walk_segments(samples, count, nxt, sample_id, succ, seglen, flag):
    L = nxt.size
    for c in prange(CHUNKS):
        lo = c * count // CHUNKS
        hi = (c + 1) * count // CHUNKS
        for i in range(lo, hi):
            j = nxt[samples[i]]
            cnt = 1
            while j != -1 and sample_id[j] == -1:
                j = nxt[j]
                cnt += 1
                if cnt > L:
                    flag[0] = 1
                    break
            succ[i] = -1 if j == -1 else sample_id[j]
            seglen[i] = cnt


@njit(cache=True)
def _accumulate_chains(heads, sample_id, succ, seglen, soff):
    covered = 0
    for h_i in range(heads.size):
        h = heads[h_i]
        if h < 0:
            continue
        i = sample_id[h]
        off = 0
        steps = 0
        while i != -1:
            if soff[i] != -1:
                return -1  # chain merge: slot reached twice
            soff[i] = off
            off += seglen[i]
            i = succ[i]
            steps += 1
            if steps > soff.size:
                return -1  # splitter-level cycle
        covered += off
    return covered


@njit(parallel=True, cache=True)
def _scatter_ranks(samples, count, nxt, soff, seglen, ranks):
    for c in prange(CHUNKS):
        lo = c * count // CHUNKS
        hi = (c + 1) * count // CHUNKS
        for i in range(lo, hi):
            base = soff[i]
            if base == -1:
                continue
            s = samples[i]
            for j in range(seglen[i]):
                ranks[s] = base + j
                s = nxt[s]


@njit(parallel=True, cache=True)
def _any_unranked(ranks):
    bad = 0
    for c in prange(CHUNKS):
        lo = c * ranks.size // CHUNKS
        hi = (c + 1) * ranks.size // CHUNKS
        hit = 0
        for i in range(lo, hi):
            if ranks[i] == -1:
                hit = 1
        bad += hit
    return bad


@njit(cache=True)
def _tree_bases(labels, sizes, base):
    n = labels.size
    for v in range(n):
        sizes[labels[v]] += 1
    acc = 0
    for v in range(n):
        if labels[v] == v:
            base[v] = acc
            acc += 2 * sizes[v]


@njit(parallel=True, cache=True)
def _vertex_positions(toff, tedges, twin, ranks, labels, sizes, base,
                      parent, first, last, flag):
    n = toff.size - 1
    for c in prange(CHUNKS):
        lo = c * n // CHUNKS
        hi = (c + 1) * n // CHUNKS
        for v in range(lo, hi):
            r = labels[v]
            if r == v:
                parent[v] = -1
                first[v] = base[r]
                last[v] = base[r] + 2 * sizes[r] - 1
                continue
            s0 = toff[v]
            k = toff[v + 1] - s0
            if k == 0:
                flag[0] = 1  # non-root vertex with no tree edge
                continue
            minin = 1 << 30
            maxout = -1
            par = -1
            for i in range(k):
                rin = ranks[twin[s0 + i]]  # entry via this neighbor
                rout = ranks[s0 + i]
                if rin < minin:
                    minin = rin
                    par = tedges[s0 + i]
                if rout > maxout:
                    maxout = rout
            parent[v] = par
            first[v] = base[r] + 1 + minin
            last[v] = base[r] + 1 + maxout


@njit(cache=True)
def _labels_from_pairs(pairs, lab):
    for i in range(pairs.shape[0]):
        ra = _uf_find(lab, pairs[i, 0])
        rb = _uf_find(lab, pairs[i, 1])
        if ra != rb:
            if ra < rb:
                lab[rb] = ra
            else:
                lab[ra] = rb
    for v in range(lab.size):
        lab[v] = _uf_find(lab, v)


@njit(cache=True)
def _iota32(a):
    for i in range(a.size):
        a[i] = i


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def list_ranking(nxt: np.ndarray, heads: np.ndarray) -> np.ndarray:
    """Rank every cell of the linked lists defined by ``nxt``.

    ``nxt[s]`` is the successor slot (-1 ends a list); ``heads`` holds the
    first slot of each list (-1 entries ignored).  Returns 0-based positions
    counted from each list's own head.  Raises ValueError if the structure is
    not a disjoint union of simple lists covering every cell (cycles, merges,
    cells unreachable from any head).
    """
    nxt = np.ascontiguousarray(nxt, dtype=np.int32)
    heads = np.ascontiguousarray(heads, dtype=np.int32)
    L = nxt.size
    ranks = _meter.full(L, -1, np.int32)
    if L == 0:
        return ranks
    rng = np.random.Generator(np.random.PCG64(_RANK_SEED))
    nsamp = math.isqrt(L - 1) + 1
    cand = _meter.charge(rng.integers(0, L, size=nsamp, dtype=np.int32))
    sample_id = _meter.full(L, -1, np.int32)
    cap = nsamp + heads.size
    samples = _meter.alloc(cap, np.int32)
    count = int(_register_samples(heads, cand, sample_id, samples))

    succ = _meter.alloc(cap, np.int32)
    seglen = _meter.alloc(cap, np.int32)
    flag = np.zeros(1, np.int32)
    _walk_segments(samples, count, nxt, sample_id, succ, seglen, flag)
    if flag[0]:
        raise ValueError("successor structure contains a cycle")
    soff = _meter.full(cap, -1, np.int32)
    covered = int(_accumulate_chains(heads, sample_id, succ, seglen, soff))
    if covered != L:
        raise ValueError("successor structure is not a disjoint list cover")
    _scatter_ranks(samples, count, nxt, soff, seglen, ranks)
    if _any_unranked(ranks):
        raise ValueError("successor structure leaves cells unreachable")
    return ranks


def build_euler_tour(n: int, tree_edges, labels=None) -> RootedForest:
    """Root a spanning forest at each component's minimum vertex.

    ``tree_edges``: undirected forest edges (EdgeList or (k, 2) array-like).
    ``labels``: optional canonical component labels (min member id per
    vertex); derived from the edges when omitted.  The labels must name each
    vertex's tree, and each tree must be connected by ``tree_edges`` —
    inconsistencies raise ValueError.
    """
    if n and 2 * n > (1 << 31) - 1:
        raise ValueError("tour positions need n <= 2**30")
    if isinstance(tree_edges, EdgeList):
        pairs = tree_edges.pairs
    else:
        pairs = np.asarray(tree_edges, dtype=np.int64).reshape(-1, 2)
    k = pairs.shape[0]
    if k >= n and n > 0:
        raise ValueError("a forest on n vertices has at most n-1 edges")
    if k and (pairs.min() < 0 or pairs.max() >= n):
        raise ValueError("tree edge endpoint out of range")

    if labels is None:
        labels = _meter.alloc(n, np.int32)
        _iota32(labels)
        _labels_from_pairs(pairs, labels)
    else:
        labels = np.ascontiguousarray(labels, dtype=np.int32)

    toff = _meter.zeros(n + 1, np.int64)
    cursor = _meter.alloc(n, np.int64)
    tedges = _meter.alloc(2 * k, np.int32)
    twin = _meter.alloc(2 * k, np.int32)
    _tree_csr(pairs, toff, cursor, tedges, twin)
    return _rooted_from_csr(n, labels, toff, tedges, twin)


def _rooted_from_claims(n, labels, parent_src, forest_u, forest_v, fcount,
                        num_components):
    """Root the spanning forest straight from a connectivity pass's claim and
    union arrays, skipping the intermediate edge-pair materialization.  The
    forest has exactly n - num_components edges."""
    if n and 2 * n > (1 << 31) - 1:
        raise ValueError("tour positions need n <= 2**30")
    k = n - num_components
    toff = _meter.zeros(n + 1, np.int64)
    cursor = _meter.alloc(n, np.int64)
    tedges = _meter.alloc(2 * k, np.int32)
    twin = _meter.alloc(2 * k, np.int32)
    _claims_csr(parent_src, forest_u, forest_v, fcount, toff, cursor,
                tedges, twin)
    return _rooted_from_csr(n, labels, toff, tedges, twin)


def _rooted_from_csr(n, labels, toff, tedges, twin):
    nxt = _meter.alloc(tedges.size, np.int32)
    _link_circuit(toff, twin, nxt)
    roots = _meter.charge(
        np.flatnonzero(labels == np.arange(n, dtype=np.int32)).astype(np.int32)
    )
    heads = _meter.alloc(roots.size, np.int32)
    _cut_roots(roots, toff, twin, nxt, heads)

    ranks = list_ranking(nxt, heads)

    sizes = _meter.zeros(n, np.int32)
    base = _meter.zeros(n, np.int32)
    _tree_bases(labels, sizes, base)

    parent = _meter.alloc(n, np.int32)
    first = _meter.alloc(n, np.int32)
    last = _meter.alloc(n, np.int32)
    flag = np.zeros(1, np.int32)
    _vertex_positions(toff, tedges, twin, ranks, labels, sizes, base,
                      parent, first, last, flag)
    if flag[0]:
        raise ValueError("labels are inconsistent with the forest edges")
    return RootedForest(parent, first, last, roots)
