import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fastbcc import graphs


def union_disjoint(*gs):
    """Disjoint union of graphs (ids shifted)."""
    pairs = []
    base = 0
    for g in gs:
        p = g.edge_pairs()
        p = p[p[:, 0] < p[:, 1]] + base
        pairs.append(p)
        base += g.n
    cat = np.concatenate(pairs) if pairs else np.empty((0, 2), np.int64)
    return graphs.symmetrize(cat, base)


def with_isolated(g, k=1):
    """g plus k extra degree-0 vertices at the top of the id range."""
    p = g.edge_pairs()
    return graphs.symmetrize(p[p[:, 0] < p[:, 1]], g.n + k)


def from_pairs(pairs, n):
    return graphs.symmetrize(np.array(pairs, dtype=np.int64).reshape(-1, 2), n)


def gen_cycle(n):
    i = np.arange(n, dtype=np.int64)
    return graphs.symmetrize(np.column_stack([i, (i + 1) % n]), n)


def gen_star(n):
    """Hub 0 with n-1 spokes."""
    i = np.arange(1, n, dtype=np.int64)
    return graphs.symmetrize(np.column_stack([np.zeros_like(i), i]), n)


def named_small_graphs():
    """Handcrafted shapes with well-understood biconnectivity structure."""
    out = {
        "empty": from_pairs([], 0),
        "single": from_pairs([], 1),
        "two_isolated": from_pairs([], 2),
        "k2": from_pairs([(0, 1)], 2),
        "chain3": graphs.gen_chain(3),
        "chain4": graphs.gen_chain(4),
        "chain7": graphs.gen_chain(7),
        "triangle": gen_cycle(3),
        "c4": gen_cycle(4),
        "c5": gen_cycle(5),
        "c9": gen_cycle(9),
        "star5": gen_star(5),
        "star9": gen_star(9),
        "k4": graphs.gen_random(4, 1.0),
        "k5": graphs.gen_random(5, 1.0),
        "bowtie": from_pairs([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], 5),
        "theta": from_pairs(
            [(0, 1), (1, 2), (2, 5), (0, 3), (3, 5), (0, 4), (4, 5)], 6
        ),
        "bridge_cycles": from_pairs(
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)], 6
        ),
        "grid33": graphs.gen_grid(3, 3),
        "grid44_torus": graphs.gen_grid(4, 4, circular=True),
        "lolly": from_pairs([(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)], 5),
        "two_triangles_apart": union_disjoint(gen_cycle(3), gen_cycle(3)),
        "cycle_plus_isolated": with_isolated(gen_cycle(4), 2),
        "chain_plus_isolated": with_isolated(graphs.gen_chain(5), 1),
        "diamond_chain": from_pairs(
            [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7)],
            8,
        ),
        "binary_tree15": from_pairs([(i, (i - 1) // 2) for i in range(1, 15)], 15),
    }
    return out


def corpus_random(n_values=(4, 6, 8, 10, 12, 16, 24, 32, 48, 64),
                  p_values=(0.02, 0.05, 0.1, 0.2, 0.3, 0.5),
                  seeds=range(17)):
    """The seeded G(n, p) sweep used by the acceptance gate (>= 1000 graphs)."""
    out = []
    for n in n_values:
        for p in p_values:
            for s in seeds:
                out.append((f"gnp_n{n}_p{p}_s{s}", graphs.gen_random(n, p, seed=s)))
    return out


def corpus_families():
    out = [(k, v) for k, v in named_small_graphs().items()]
    for n in (2, 3, 5, 9, 17, 33):
        out.append((f"chain{n}", graphs.gen_chain(n)))
        out.append((f"star{n}", gen_star(n)))
        if n >= 3:
            out.append((f"cycle{n}", gen_cycle(n)))
    for r, c in ((2, 2), (3, 4), (5, 5)):
        out.append((f"grid{r}x{c}", graphs.gen_grid(r, c)))
        out.append((f"torus{r}x{c}", graphs.gen_grid(r, c, circular=True)))
    for s in range(6):
        out.append(
            (f"sparse_grid_s{s}", graphs.gen_grid(5, 5, keep_prob=0.7, seed=s))
        )
    # stitched shapes: bridges between blocks, shared cut vertices
    bow = named_small_graphs()["bowtie"]
    out.append(("bowtie_isolated", with_isolated(bow, 3)))
    out.append(("bowtie_pair", union_disjoint(bow, bow)))
    return out


@pytest.fixture(scope="session")
def small_graphs():
    return named_small_graphs()


@pytest.fixture(scope="session")
def mixed_corpus():
    """Families + a thinned G(n,p) sweep for module-level tests."""
    return corpus_families() + corpus_random(seeds=range(3))


@pytest.fixture(scope="session")
def full_corpus():
    """The >= 1000-graph acceptance corpus."""
    return corpus_families() + corpus_random()
