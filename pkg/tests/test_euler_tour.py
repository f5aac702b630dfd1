"""Forest rooting, tour intervals, and list ranking against oracles."""

import numpy as np
import pytest

from fastbcc import _par
from fastbcc.connectivity import connected_components
from fastbcc.euler_tour import (
    RootedForest,
    build_euler_tour,
    is_ancestor,
    list_ranking,
)
from fastbcc.graphs import gen_chain, gen_grid, gen_random

from oracles import ancestor_matrix, bfs_tree_parents, chase_ranks


def rooted_from_graph(g) -> tuple:
    res = connected_components(g)
    return res, build_euler_tour(g.n, res.forest_edges, res.labels)


def check_forest(g, res, f: RootedForest):
    n = g.n
    labels = res.labels

    # roots are the canonical labels; parents match the unique rooting
    assert np.array_equal(f.roots, np.flatnonzero(labels == np.arange(n)))
    want_parent = bfs_tree_parents(n, res.forest_edges.pairs, f.roots)
    assert np.array_equal(f.parent.astype(np.int64), want_parent)

    # every tour position used exactly once, blocks ascending by root
    both = np.concatenate([f.first, f.last])
    assert np.array_equal(np.sort(both), np.arange(2 * n))
    for v in range(n):
        assert f.first[v] < f.last[v]

    # interval nesting == ancestry; membership readable from first[] alone
    anc = ancestor_matrix(f.parent)
    for u in range(n):
        for v in range(n):
            by_interval = f.first[u] <= f.first[v] and f.last[v] <= f.last[u]
            assert by_interval == anc[u, v]
            assert is_ancestor(f, u, v) == anc[u, v]
            in_by_first = f.first[u] <= f.first[v] <= f.last[u]
            assert in_by_first == anc[u, v]


class TestBuildEulerTour:
    def test_chain3_by_hand(self):
        g = gen_chain(3)
        res, f = rooted_from_graph(g)
        assert np.array_equal(f.parent, [-1, 0, 1])
        assert np.array_equal(f.first, [0, 1, 2])
        assert np.array_equal(f.last, [5, 4, 3])

    def test_small_graphs(self, small_graphs):
        for name, g in small_graphs.items():
            res, f = rooted_from_graph(g)
            check_forest(g, res, f)

    def test_random_graphs(self):
        for seed in range(6):
            g = gen_random(48, 0.06, seed=seed)
            res, f = rooted_from_graph(g)
            check_forest(g, res, f)

    def test_isolated_vertices_get_two_slot_blocks(self):
        res, f = rooted_from_graph(gen_grid(1, 1))  # a single vertex
        assert f.first[0] == 0 and f.last[0] == 1

    def test_labels_optional(self):
        g = gen_random(64, 0.04, seed=2)
        res = connected_components(g)
        a = build_euler_tour(g.n, res.forest_edges, res.labels)
        b = build_euler_tour(g.n, res.forest_edges)
        for x, y in ((a.parent, b.parent), (a.first, b.first),
                     (a.last, b.last), (a.roots, b.roots)):
            assert np.array_equal(x, y)

    def test_worker_count_invariance(self):
        g = gen_random(2000, 0.002, seed=7)
        res = connected_components(g)
        outs = []
        for t in (1, _par.max_workers()):
            with _par.workers(t):
                outs.append(build_euler_tour(g.n, res.forest_edges, res.labels))
        assert np.array_equal(outs[0].first, outs[1].first)
        assert np.array_equal(outs[0].last, outs[1].last)
        assert np.array_equal(outs[0].parent, outs[1].parent)

    def test_too_many_edges_rejected(self):
        with pytest.raises(ValueError, match="forest"):
            build_euler_tour(3, [(0, 1), (1, 2), (2, 0)])

    def test_endpoint_out_of_range(self):
        with pytest.raises(ValueError, match="range"):
            build_euler_tour(3, [(0, 5)])

    def test_inconsistent_labels_rejected(self):
        with pytest.raises(ValueError, match="labels"):
            build_euler_tour(3, [], labels=np.array([0, 0, 0], np.int32))

    def test_empty(self):
        f = build_euler_tour(0, [])
        assert f.n == 0 and f.roots.size == 0


class TestListRanking:
    def test_single_chain(self):
        nxt = np.array([1, 2, 3, -1], np.int32)
        ranks = list_ranking(nxt, np.array([0], np.int32))
        assert np.array_equal(ranks, [0, 1, 2, 3])

    def test_matches_chase_oracle_on_random_lists(self):
        rng = np.random.Generator(np.random.PCG64(3))
        for trial in range(10):
            L = int(rng.integers(1, 400))
            perm = rng.permutation(L)
            n_lists = int(rng.integers(1, 5))
            cuts = np.sort(rng.choice(np.arange(1, L), size=min(n_lists - 1, L - 1),
                                      replace=False)) if L > 1 else np.array([], int)
            pieces = np.split(perm, cuts)
            nxt = np.full(L, -1, np.int32)
            heads = []
            for piece in pieces:
                heads.append(piece[0])
                for a, b in zip(piece[:-1], piece[1:]):
                    nxt[a] = b
            heads = np.array(heads, np.int32)
            ranks = list_ranking(nxt, heads)
            for h in heads:
                want = chase_ranks(nxt, int(h))
                got_mask = want != -1
                assert np.array_equal(ranks[got_mask], want[got_mask])

    def test_ignores_negative_heads(self):
        nxt = np.array([1, -1], np.int32)
        ranks = list_ranking(nxt, np.array([-1, 0], np.int32))
        assert np.array_equal(ranks, [0, 1])

    def test_cycle_rejected(self):
        nxt = np.array([1, 2, 0], np.int32)  # pure 3-cycle, head inside
        with pytest.raises(ValueError):
            list_ranking(nxt, np.array([0], np.int32))

    def test_unreachable_rejected(self):
        nxt = np.array([-1, -1], np.int32)
        with pytest.raises(ValueError, match="cover|unreachable"):
            list_ranking(nxt, np.array([0], np.int32))

    def test_merge_rejected(self):
        # two chains sharing a tail: 0 -> 2, 1 -> 2
        nxt = np.array([2, 2, -1], np.int32)
        with pytest.raises(ValueError):
            list_ranking(nxt, np.array([0, 1], np.int32))

    def test_head_mid_list_rejected(self):
        nxt = np.array([1, 2, -1], np.int32)
        with pytest.raises(ValueError):
            list_ranking(nxt, np.array([0, 1], np.int32))

    def test_empty(self):
        assert list_ranking(np.array([], np.int32), np.array([], np.int32)).size == 0

    def test_long_chain(self):
        L = 100_000
        nxt = np.arange(1, L + 1, dtype=np.int32)
        nxt[-1] = -1
        ranks = list_ranking(nxt, np.array([0], np.int32))
        assert np.array_equal(ranks, np.arange(L))
