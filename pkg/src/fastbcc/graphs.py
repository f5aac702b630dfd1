"""Compressed-sparse-row graphs, binary/adjacency file IO, and generators.

Graphs are undirected and stored symmetrically: every undirected edge {u, v}
occupies two directed slots (u->v and v->u).  ``m`` always counts directed
slots.  Neighbor lists are sorted, self-loop free, and duplicate free.

All random generation uses numpy's PCG64 generator seeded explicitly, so any
(params, seed) pair reproduces the same graph on any machine.  Substreams,
where needed, come from ``np.random.SeedSequence(seed).spawn``.
"""

import warnings
from dataclasses import dataclass

import numpy as np

_HEADER_BYTES = 24  # three u64 words: n, m, size


@dataclass
class EdgeList:
    """A flat list of undirected edge endpoints, shape (k, 2)."""

    pairs: np.ndarray

    def __post_init__(self):
        self.pairs = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)

    def __len__(self) -> int:
        return self.pairs.shape[0]

    def __iter__(self):
        return iter(map(tuple, self.pairs))


def _pairs_of(edges) -> np.ndarray:
    if isinstance(edges, EdgeList):
        return edges.pairs
    arr = np.asarray(edges, dtype=np.int64)
    return arr.reshape(-1, 2)


class Graph:
    """Symmetric CSR graph.

    :param offsets: int64 array of length n+1, ``offsets[v]:offsets[v+1]``
        delimiting v's neighbor slots
    :param edges: uint32 array of length m with the neighbor ids
    """

    __slots__ = ("offsets", "edges")

    def __init__(self, offsets, edges, validate: bool = False):
        self.offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        self.edges = np.ascontiguousarray(edges, dtype=np.uint32)
        if self.offsets.ndim != 1 or self.offsets.size == 0:
            raise ValueError("offsets must be a 1-d array of length n+1")
        if validate:
            self.validate()

    @property
    def n(self) -> int:
        return self.offsets.size - 1

    @property
    def m(self) -> int:
        """Directed slot count (2x the undirected edge count)."""
        return self.edges.size

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.edges[self.offsets[v] : self.offsets[v + 1]]

    def validate(self) -> None:
        """Check every CSR invariant; raises ValueError on the first breach."""
        off, e, n = self.offsets, self.edges, self.n
        if off[0] != 0 or off[-1] != e.size:
            raise ValueError("offsets must start at 0 and end at m")
        if np.any(np.diff(off) < 0):
            raise ValueError("offsets must be nondecreasing")
        if e.size and int(e.max()) >= n:
            raise ValueError("edge target out of range")
        if e.size:
            starts = np.zeros(e.size, dtype=bool)
            inner_starts = off[1:-1]
            starts[inner_starts[inner_starts < e.size]] = True
            cmp = ~starts[1:]  # positions continuing the same list
            if np.any(e[1:][cmp] <= e[:-1][cmp]):
                raise ValueError("neighbor lists must be strictly increasing")
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(off))
        if np.any(src == e):
            raise ValueError("self-loops are not allowed")
        fwd = (src.astype(np.uint64) << np.uint64(32)) | e.astype(np.uint64)
        rev = (e.astype(np.uint64) << np.uint64(32)) | src.astype(np.uint64)
        if not np.array_equal(np.sort(fwd), np.sort(rev)):
            raise ValueError("graph is not symmetric")

    def edge_pairs(self) -> np.ndarray:
        """All directed (source, target) pairs, shape (m, 2)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.offsets))
        return np.column_stack([src, self.edges.astype(np.int64)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        """n vertices, no edges."""
        return cls(np.zeros(n + 1, dtype=np.int64), np.empty(0, np.uint32))

    @classmethod
    def from_edges(cls, n: int, pairs) -> "Graph":
        """Symmetrized graph over undirected ``pairs`` (see :func:`symmetrize`)."""
        return symmetrize(pairs, n)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def symmetrize(edges, n: int) -> Graph:
    """Build a Graph from arbitrary undirected pairs.

    Adds the reverse of every pair, drops self-loops, removes duplicates, and
    sorts each neighbor list.  ``edges`` may be an EdgeList or any (k, 2)
    array-like; ids must lie in [0, n).
    """
    if n < 0 or n >= 1 << 32:
        raise ValueError("vertex count must fit 32-bit ids")
    pairs = _pairs_of(edges)
    if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
        raise ValueError("edge endpoint out of range")
    u = pairs[:, 0]
    v = pairs[:, 1]
    keep = u != v
    u, v = u[keep], v[keep]
    allu = np.concatenate([u, v]).astype(np.uint64)
    allv = np.concatenate([v, u]).astype(np.uint64)
    # pack (u, v) into one key; sorting keys == lexicographic (u, v) sort
    keys = np.unique((allu << np.uint64(32)) | allv)
    src = (keys >> np.uint64(32)).astype(np.int64)
    dst = (keys & np.uint64(0xFFFFFFFF)).astype(np.uint32)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return Graph(offsets, dst)


# ---------------------------------------------------------------------------
# binary format
#
# little-endian: u64 n, u64 m, u64 size-in-bytes, then (n+1) u64 offsets,
# then m u32 edge targets.  The size word normally equals the true byte
# length 24 + 8*(n+1) + 4*m; some historical writers recorded
# 24 + 8*(n-1) + 4*m instead, and such files are accepted with a warning.
# ---------------------------------------------------------------------------


def expected_bin_size(n: int, m: int) -> int:
    return _HEADER_BYTES + 8 * (n + 1) + 4 * m


def _legacy_bin_size(n: int, m: int) -> int:
    return _HEADER_BYTES + 8 * (n - 1) + 4 * m


def write_bin(g: Graph, path) -> None:
    """Write the binary CSR artifact for ``g`` to ``path``."""
    n, m = g.n, g.m
    with open(path, "wb") as f:
        np.array([n, m, expected_bin_size(n, m)], dtype="<u8").tofile(f)
        g.offsets.astype("<u8").tofile(f)
        g.edges.astype("<u4").tofile(f)


def load_bin(path) -> Graph:
    """Read a binary CSR artifact; validates sizes and the header."""
    with open(path, "rb") as f:
        header = np.fromfile(f, dtype="<u8", count=3)
        if header.size != 3:
            raise ValueError(f"{path}: truncated header (need {_HEADER_BYTES} bytes)")
        n, m, size_field = (int(x) for x in header)
        want = expected_bin_size(n, m)
        offsets = np.fromfile(f, dtype="<u8", count=n + 1)
        edges = np.fromfile(f, dtype="<u4", count=m)
        extra = f.read(1)
    have = _HEADER_BYTES + offsets.size * 8 + edges.size * 4 + len(extra)
    if offsets.size != n + 1 or edges.size != m or extra:
        raise ValueError(
            f"{path}: size mismatch, expected {want} bytes for n={n} m={m}, "
            f"got {have}{'+' if extra else ''}"
        )
    if size_field != want:
        if size_field == _legacy_bin_size(n, m):
            warnings.warn(
                f"{path}: legacy size field {size_field} (expected {want}); "
                "accepting",
                stacklevel=2,
            )
        else:
            raise ValueError(
                f"{path}: size field {size_field} matches neither {want} "
                f"nor the legacy value {_legacy_bin_size(n, m)}"
            )
    if offsets[0] != 0 or offsets[-1] != m:
        raise ValueError(f"{path}: offsets must run from 0 to m")
    return Graph(offsets.astype(np.int64), edges)


def load_adj(path) -> Graph:
    """Read the whitespace-separated adjacency-graph text format.

    Layout: the literal token ``AdjacencyGraph``, then n, m, n offsets, and
    m edge targets, separated by any whitespace.
    """
    with open(path, "r") as f:
        tokens = f.read().split()
    if not tokens or tokens[0] != "AdjacencyGraph":
        raise ValueError(f"{path}: missing AdjacencyGraph header")
    vals = np.array(tokens[1:], dtype=np.int64)
    if vals.size < 2:
        raise ValueError(f"{path}: missing counts")
    n, m = int(vals[0]), int(vals[1])
    if vals.size != 2 + n + m:
        raise ValueError(
            f"{path}: expected {2 + n + m} integers for n={n} m={m}, got {vals.size}"
        )
    offsets = np.empty(n + 1, dtype=np.int64)
    offsets[:n] = vals[2 : 2 + n]
    offsets[n] = m
    return Graph(offsets, vals[2 + n :].astype(np.uint32))


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def gen_chain(n: int) -> Graph:
    """Path graph 0-1-...-(n-1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    i = np.arange(n - 1, dtype=np.int64) if n > 1 else np.empty(0, np.int64)
    return symmetrize(np.column_stack([i, i + 1]), n)


def gen_grid(
    rows: int, cols: int, circular: bool = False, keep_prob: float = 1.0, seed: int = 0
) -> Graph:
    """rows x cols lattice; ``circular`` adds wraparound edges (a torus).

    Each candidate edge is kept independently with probability ``keep_prob``
    (seeded; keep_prob=1 keeps everything).  Vertex (r, c) has id r*cols + c.
    """
    if rows < 0 or cols < 0:
        raise ValueError("grid dimensions must be nonnegative")
    if not 0.0 <= keep_prob <= 1.0:
        raise ValueError("keep_prob must lie in [0, 1]")
    n = rows * cols
    ids = np.arange(n, dtype=np.int64).reshape(rows, cols)
    horiz_src = ids[:, :] if circular else ids[:, :-1]
    horiz_dst = np.roll(ids, -1, axis=1)[:, :] if circular else ids[:, 1:]
    vert_src = ids[:, :] if circular else ids[:-1, :]
    vert_dst = np.roll(ids, -1, axis=0)[:, :] if circular else ids[1:, :]
    u = np.concatenate([horiz_src.ravel(), vert_src.ravel()])
    v = np.concatenate([horiz_dst.ravel(), vert_dst.ravel()])
    if keep_prob < 1.0:
        rng = np.random.Generator(np.random.PCG64(seed))
        keep = rng.random(u.size) < keep_prob
        u, v = u[keep], v[keep]
    return symmetrize(np.column_stack([u, v]), n)


def _decode_pair_index(k: np.ndarray, n: int):
    """Map linear indices over {(i,j): i<j} (row-major) back to (i, j)."""
    a = 2.0 * n - 1.0
    i = np.floor((a - np.sqrt(a * a - 8.0 * k.astype(np.float64))) / 2.0).astype(
        np.int64
    )
    # float sqrt can land one row off; nudge into place
    def row_start(r):
        return r * (2 * n - r - 1) // 2

    i = np.clip(i, 0, n - 2)
    while True:
        too_low = k < row_start(i)
        if not np.any(too_low):
            break
        i[too_low] -= 1
    while True:
        too_high = k >= row_start(i + 1)
        if not np.any(too_high):
            break
        i[too_high] += 1
    j = k - row_start(i) + i + 1
    return i, j


def gen_random(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p) via geometric gap sampling over the pair space.

    Work and memory scale with the number of edges drawn, not with n^2, so
    sparse graphs at n in the millions are cheap.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return symmetrize(np.empty((0, 2), np.int64), n)
    if p >= 1.0:
        if total > 200_000_000:
            raise ValueError("complete graph too large to materialize")
        i, j = np.triu_indices(n, k=1)
        return symmetrize(np.column_stack([i, j]).astype(np.int64), n)
    rng = np.random.Generator(np.random.PCG64(seed))
    chunks = []
    pos = -1
    batch = max(int(total * p * 1.2) + 64, 1024)
    while pos < total:
        gaps = rng.geometric(p, size=batch)
        hits = pos + np.cumsum(gaps)
        chunks.append(hits)
        pos = int(hits[-1])
    k = np.concatenate(chunks)
    k = k[k < total]
    i, j = _decode_pair_index(k, n)
    return symmetrize(np.column_stack([i, j]), n)
