"""Static block-cut forests and the capacity expansion, against brute force."""

import random

import pytest

from decbicon.bcforest import BicapBC, build_bc_forest
from decbicon.graphs import Graph, gen_grid, gen_random_connected
from decbicon.oracle import (
    BICONNECTED,
    BRIDGE_NIL,
    o_biconnected,
    o_connected,
    o_nearest_cut,
)
from tests.conftest import random_graph


def graphs_under_test():
    out = [gen_grid(4, 4), gen_grid(5, 3)]
    for seed in range(25):
        out.append(random_graph(seed, max_n=24))
    # fragmented variants
    for seed in range(8):
        g = random_graph(100 + seed, max_n=24)
        rng = random.Random(seed)
        for e in rng.sample(g.alive_edges(), len(g.alive_edges()) // 3):
            g.delete_edge(e)
        out.append(g)
    return out


@pytest.mark.parametrize("g", graphs_under_test())
def test_forest_queries_match_oracle(g):
    rng = random.Random(42)
    f = build_bc_forest(g)
    alive = g.alive_vertices()
    for _ in range(60):
        u, v = rng.choice(alive), rng.choice(alive)
        assert f.same_component(u, v) == o_connected(g, u, v)
        assert f.biconnected(u, v) == o_biconnected(g, u, v)
        if u != v and f.same_component(u, v):
            want = o_nearest_cut(g, u, v)
            got = f.nearest_cutvertex(u, v)
            assert got == want, (u, v, got, want)


@pytest.mark.parametrize("g", graphs_under_test()[:12])
def test_bicap_default_caps_match_plain_forest(g):
    rng = random.Random(11)
    bb = BicapBC(g)
    alive = g.alive_vertices()
    for _ in range(40):
        u, v = rng.choice(alive), rng.choice(alive)
        assert bb.connected(u, v) == o_connected(g, u, v)
        assert bb.biconnected(u, v) == o_biconnected(g, u, v)
        if u != v and bb.connected(u, v):
            want = o_nearest_cut(g, u, v)
            got = bb.second_node(u, v)
            if want == BICONNECTED:
                assert got == ("bicon",)
            elif want == BRIDGE_NIL:
                assert got == ("bridge",)
            else:
                assert got == ("cut", want)


def test_capacity_two_vertex_does_not_separate():
    # path 0-1-2 with cap(1)=2: the middle vertex can carry two disjoint
    # flow units, so the endpoints count as biconnected
    g = Graph(3)
    g.cap[1] = 2
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    bb = BicapBC(g)
    assert bb.biconnected(0, 2)
    assert bb.second_node(0, 2) == ("bicon",)
    # with unit capacity the same graph separates at 1
    h = Graph(3)
    h.add_edge(0, 1)
    h.add_edge(1, 2)
    hb = BicapBC(h)
    assert not hb.biconnected(0, 2)
    assert hb.second_node(0, 2) == ("cut", 1)


def test_capacity_chain_separates_at_unit_vertex():
    # 0-1-2-3 with cap(1)=2 still separates at the unit vertex 2
    g = Graph(4)
    g.cap[1] = 2
    for u, v in [(0, 1), (1, 2), (2, 3)]:
        g.add_edge(u, v)
    bb = BicapBC(g)
    assert bb.second_node(0, 3) == ("cut", 2)


def test_block_structure_of_figure_eight():
    g = Graph(5)
    for u, v in [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]:
        g.add_edge(u, v)
    f = build_bc_forest(g)
    assert len(f.block_members) == 2
    assert all(len(m) == 3 for m in f.block_members)
    assert f.nearest_cutvertex(0, 4) == 2


def test_bridge_blocks_have_unit_capacity():
    # single-edge blocks (bridges) carry capacity 1; multi-edge blocks 2
    g = Graph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    f = build_bc_forest(g)
    assert f.block_cap == [1, 1]
    assert f.nearest_cutvertex(0, 1) == BRIDGE_NIL
    h = Graph(2)
    h.add_edge(0, 1)
    h.add_edge(0, 1)
    fh = build_bc_forest(h)
    assert fh.block_cap == [2]
