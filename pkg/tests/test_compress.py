"""Terminal compression of block-cut forests: classification and size."""

import random

import pytest

from decbicon.bcforest import build_bc_forest
from decbicon.compress import (
    CONTRACTIBLE,
    CRITICAL,
    DISPOSABLE,
    classify,
    compress,
    rep_maps,
)
from decbicon.graphs import gen_grid
from tests.conftest import random_graph


def cases():
    out = []
    for seed in range(30):
        g = random_graph(seed, max_n=30)
        rng = random.Random(seed)
        alive = g.alive_vertices()
        k = rng.randint(1, max(1, len(alive) // 3))
        out.append((g, sorted(rng.sample(alive, k))))
    g = gen_grid(5, 5)
    out.append((g, [0, 4, 20, 24]))
    out.append((g, [12]))
    return out


@pytest.mark.parametrize("g,terms", cases())
def test_size_bound_four_per_terminal(g, terms):
    f = build_bc_forest(g)
    c = compress(f, terms)
    assert c.node_count() <= 4 * len(terms)


@pytest.mark.parametrize("g,terms", cases())
def test_terminals_are_retained_and_disposables_dropped(g, terms):
    f = build_bc_forest(g)
    c = compress(f, terms)
    for t in terms:
        assert c.status[t] == CRITICAL
        assert t in c.retained
    for x in c.retained:
        assert c.status[x] == CRITICAL or c.status[x] == CONTRACTIBLE
    for x in range(len(f.node_adj)):
        if c.status[x] == DISPOSABLE:
            assert x not in c.retained


@pytest.mark.parametrize("g,terms", cases())
def test_edges_reference_kept_nodes_and_flanks(g, terms):
    f = build_bc_forest(g)
    c = compress(f, terms)
    kept = c.retained | set(c.pseudo)
    for a, b in c.edges:
        assert a in kept and b in kept
    for pid, pb in c.pseudo.items():
        fa, fb = pb.flanks
        assert fa in c.retained and fb in c.retained
        # flanks are vertex-side nodes, the ends of the replaced run
        assert not f.is_block(fa) and not f.is_block(fb)
        assert pb.members, "empty pseudoblock"


@pytest.mark.parametrize("g,terms", cases()[:12])
def test_classification_matches_definition(g, terms):
    """Critical = terminal or Steiner-tree degree >= 3; contractible = other
    Steiner nodes; everything off terminal paths is disposable."""
    f = build_bc_forest(g)
    status = classify(f, terms)
    total = len(f.node_adj)
    # brute-force Steiner membership: node lies on some terminal-terminal path
    on_path = set()
    for i, s in enumerate(terms):
        for t in terms[i:]:
            if f.comp[s] != f.comp[t]:
                continue
            on_path.update(f.path_nodes(s, t))
    for x in range(total):
        if f.comp[x] < 0 or x not in on_path:
            assert status[x] == DISPOSABLE
            continue
        deg = sum(1 for y in f.node_adj[x] if y in on_path)
        if x in terms or deg >= 3:
            assert status[x] == CRITICAL, x
        else:
            assert status[x] == CONTRACTIBLE, x


@pytest.mark.parametrize("g,terms", cases()[:10])
def test_rep_maps_point_into_compressed_forest(g, terms):
    f = build_bc_forest(g)
    c = compress(f, terms)
    maps = rep_maps(f, c)
    kept = c.retained | set(c.pseudo)
    for x, r in maps.rep.items():
        assert r is None or r in kept
    for x, w in maps.nr.items():
        if w is None:
            continue
        assert not f.is_block(w)
        # the nearest represented vertex is itself represented
        assert maps.rep.get(w) is not None
