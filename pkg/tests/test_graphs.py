import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastbcc import graphs
from fastbcc.graphs import (
    Graph,
    gen_chain,
    gen_grid,
    gen_random,
    load_adj,
    load_bin,
    symmetrize,
    write_bin,
)

import oracles


# --- CSR construction -------------------------------------------------------


def test_symmetrize_dedups_and_drops_self_loops():
    g = symmetrize([(0, 1), (1, 0), (2, 2)], 3)
    assert g.n == 3 and g.m == 2
    assert list(g.neighbors(0)) == [1]
    assert list(g.neighbors(1)) == [0]
    assert list(g.neighbors(2)) == []
    g.validate()


def test_symmetrize_sorts_neighbors():
    g = symmetrize([(0, 3), (0, 1), (2, 0)], 4)
    assert list(g.neighbors(0)) == [1, 2, 3]
    g.validate()


def test_symmetrize_rejects_out_of_range():
    with pytest.raises(ValueError):
        symmetrize([(0, 5)], 3)


def test_validate_catches_asymmetry():
    # hand-build a CSR with a one-directional edge
    g = Graph(np.array([0, 1, 1]), np.array([1], dtype=np.uint32))
    with pytest.raises(ValueError):
        g.validate()


def test_validate_catches_unsorted():
    g = Graph(np.array([0, 2, 3, 4]), np.array([2, 1, 0, 0], dtype=np.uint32))
    with pytest.raises(ValueError):
        g.validate()


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=60),
    st.integers(16, 20),
)
def test_symmetrize_idempotent(pairs, n):
    g = symmetrize(pairs, n)
    g.validate()
    again = symmetrize(g.edge_pairs(), n)
    assert np.array_equal(again.offsets, g.offsets)
    assert np.array_equal(again.edges, g.edges)


# --- binary format ----------------------------------------------------------


def test_bin_round_trip_chain3(tmp_path):
    g = gen_chain(3)
    p = tmp_path / "chain3.bin"
    write_bin(g, p)
    assert p.stat().st_size == 72  # 3*8 + 4*8 + 4*4
    back = load_bin(p)
    assert np.array_equal(back.offsets, g.offsets)
    assert np.array_equal(back.edges, g.edges)


def test_bin_round_trip_random(tmp_path):
    g = gen_random(60, 0.2, seed=7)
    p = tmp_path / "g.bin"
    write_bin(g, p)
    back = load_bin(p)
    assert np.array_equal(back.offsets, g.offsets)
    assert np.array_equal(back.edges, g.edges)
    assert p.stat().st_size == graphs.expected_bin_size(g.n, g.m)


def test_bin_truncated_reports_expected_size(tmp_path):
    g = gen_chain(3)
    p = tmp_path / "t.bin"
    write_bin(g, p)
    data = p.read_bytes()
    p.write_bytes(data[:-5])
    with pytest.raises(ValueError, match="72"):
        load_bin(p)


def test_bin_legacy_size_field_accepted_with_warning(tmp_path):
    g = gen_chain(3)
    p = tmp_path / "l.bin"
    write_bin(g, p)
    raw = bytearray(p.read_bytes())
    legacy = 24 + 8 * (g.n - 1) + 4 * g.m
    raw[16:24] = int(legacy).to_bytes(8, "little")
    p.write_bytes(bytes(raw))
    with pytest.warns(UserWarning, match="legacy"):
        back = load_bin(p)
    assert np.array_equal(back.edges, g.edges)


def test_bin_bogus_size_field_rejected(tmp_path):
    g = gen_chain(3)
    p = tmp_path / "b.bin"
    write_bin(g, p)
    raw = bytearray(p.read_bytes())
    raw[16:24] = (12345).to_bytes(8, "little")
    p.write_bytes(bytes(raw))
    with pytest.raises(ValueError, match="size field"):
        load_bin(p)


def test_bin_trailing_garbage_rejected(tmp_path):
    g = gen_chain(3)
    p = tmp_path / "g.bin"
    write_bin(g, p)
    p.write_bytes(p.read_bytes() + b"xx")
    with pytest.raises(ValueError, match="size mismatch"):
        load_bin(p)


# --- adjacency text format --------------------------------------------------


def test_load_adj_triangle(tmp_path):
    p = tmp_path / "tri.adj"
    p.write_text("AdjacencyGraph\n3\n6\n0\n2\n4\n1\n2\n0\n2\n0\n1\n")
    g = load_adj(p)
    assert g.n == 3 and g.m == 6
    g.validate()
    assert list(g.neighbors(1)) == [0, 2]


def test_load_adj_requires_header(tmp_path):
    p = tmp_path / "bad.adj"
    p.write_text("3\n6\n0 2 4 1 2 0 2 0 1\n")
    with pytest.raises(ValueError, match="AdjacencyGraph"):
        load_adj(p)


def test_load_adj_wrong_count(tmp_path):
    p = tmp_path / "bad2.adj"
    p.write_text("AdjacencyGraph\n3\n6\n0 2 4 1 2 0\n")
    with pytest.raises(ValueError, match="expected"):
        load_adj(p)


def test_adj_matches_bin(tmp_path):
    g = gen_grid(3, 3)
    lines = ["AdjacencyGraph", str(g.n), str(g.m)]
    lines += [str(int(x)) for x in g.offsets[:-1]]
    lines += [str(int(x)) for x in g.edges]
    p = tmp_path / "grid.adj"
    p.write_text("\n".join(lines) + "\n")
    back = load_adj(p)
    assert np.array_equal(back.offsets, g.offsets)
    assert np.array_equal(back.edges, g.edges)


# --- generators -------------------------------------------------------------


def test_gen_chain_shape():
    g = gen_chain(5)
    assert g.n == 5 and g.m == 8
    assert g.degree(0) == 1 and g.degree(2) == 2
    g.validate()


def test_gen_chain_tiny():
    assert gen_chain(0).n == 0
    assert gen_chain(1).m == 0


def test_gen_chain_diameter_million():
    g = gen_chain(10**6)
    assert g.n == 10**6 and g.m == 2 * (10**6 - 1)
    assert oracles.double_bfs_diameter(g) == 10**6 - 1


def test_gen_grid_3x3():
    g = gen_grid(3, 3)
    assert g.n == 9 and g.m == 24
    # corners have degree 2, center degree 4
    assert g.degree(0) == 2 and g.degree(4) == 4
    g.validate()


def test_gen_grid_torus_regular():
    g = gen_grid(4, 4, circular=True)
    degs = np.diff(g.offsets)
    assert np.all(degs == 4)
    g.validate()


def test_gen_grid_small_torus_collapses_duplicates():
    # wraparound on a width-2 ring produces coincident edges; they merge
    g = gen_grid(2, 2, circular=True)
    g.validate()
    assert g.degree(0) == 2


def test_gen_grid_keep_prob():
    g0 = gen_grid(6, 6, keep_prob=0.0, seed=1)
    assert g0.m == 0
    ga = gen_grid(6, 6, keep_prob=0.5, seed=1)
    gb = gen_grid(6, 6, keep_prob=0.5, seed=1)
    gc = gen_grid(6, 6, keep_prob=0.5, seed=2)
    assert np.array_equal(ga.edges, gb.edges)
    assert ga.m < gen_grid(6, 6).m
    assert not (ga.m == gc.m and np.array_equal(ga.edges, gc.edges))


def test_gen_random_deterministic_per_seed():
    a = gen_random(100, 0.05, seed=3)
    b = gen_random(100, 0.05, seed=3)
    c = gen_random(100, 0.05, seed=4)
    assert np.array_equal(a.edges, b.edges) and np.array_equal(a.offsets, b.offsets)
    assert not np.array_equal(a.edges, c.edges)


def test_gen_random_edge_count_near_expectation():
    # E[edges] = p * C(100,2) = 247.5, sigma ~ 15.3; average over seeds
    counts = [gen_random(100, 0.05, seed=s).m // 2 for s in range(20)]
    assert abs(np.mean(counts) - 247.5) < 3 * 15.34 / np.sqrt(20)


def test_gen_random_all_edges_valid():
    g = gen_random(50, 0.3, seed=11)
    g.validate()


def test_gen_random_extremes():
    assert gen_random(40, 0.0).m == 0
    k5 = gen_random(5, 1.0)
    assert k5.m == 20
    assert gen_random(0, 0.5).n == 0
    assert gen_random(1, 0.5).m == 0


def test_gen_random_large_sparse_scales():
    g = gen_random(1 << 18, 8 / (1 << 18), seed=0)
    assert g.n == 1 << 18
    und = g.m // 2
    expect = 4 * (1 << 18)
    assert 0.9 * expect < und < 1.1 * expect
    g.validate()
