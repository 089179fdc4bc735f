"""End-to-end engine tests: differential against the brute-force oracle at
every level count, vertex deletions, parallel edges, companion instances,
counters, and error handling."""

import random

import pytest

from decbicon import Engine, gen_grid, gen_nested_grid_pair
from decbicon.engine import ConnInstance, TwoECInstance
from decbicon.graphs import Graph
from decbicon import oracle
from decbicon.cli import answer_query, oracle_answer

from conftest import grid_instance, random_instance

KINDS = ("conn", "bicon", "2ec", "cut", "bridge")


def _check_all_kinds(eng, shadow, rng, alive, pairs=4):
    for _ in range(pairs):
        u, v = rng.choice(alive), rng.choice(alive)
        for kind in KINDS:
            got = answer_query(eng, kind, u, v)
            want = oracle_answer(shadow, kind, u, v)
            assert got == want, f"{kind} {u} {v}: engine {got!r} oracle {want!r}"


@pytest.mark.parametrize("levels", [1, 2, 3])
def test_grid_differential_full_deletion(levels):
    g, pair = grid_instance(6, 6, 3, 3)
    eng = Engine(g.copy(), pair, levels=levels)
    shadow = g.copy()
    rng = random.Random(77 + levels)
    alive = list(range(g.n))
    edges = list(g.alive_edges())
    rng.shuffle(edges)
    for e in edges:
        u, v = g.endpoints(e)
        eng.delete_edge(u, v)
        shadow.delete_edge(shadow.find_edge(u, v))
        _check_all_kinds(eng, shadow, rng, alive, pairs=3)


@pytest.mark.parametrize("seed", range(6))
def test_random_graph_differential(seed):
    g, pair = random_instance(seed, max_n=24)
    eng = Engine(g.copy(), pair, levels=3)
    shadow = g.copy()
    rng = random.Random(seed)
    alive = list(g.alive_vertices())
    edges = list(g.alive_edges())
    rng.shuffle(edges)
    for e in edges:
        u, v = g.endpoints(e)
        ee = shadow.find_edge(u, v)
        shadow.delete_edge(ee)
        eng.delete_edge(u, v)
        _check_all_kinds(eng, shadow, rng, alive, pairs=3)


def test_vertex_deletion_matches_oracle():
    g, pair = grid_instance(6, 6, 2, 2)
    eng = Engine(g.copy(), pair, levels=3)
    shadow = g.copy()
    rng = random.Random(3)
    victims = rng.sample(range(g.n), 8)
    for v in victims:
        eng.delete_vertex(v)
        shadow.delete_vertex(v)
        alive = list(shadow.alive_vertices())
        _check_all_kinds(eng, shadow, rng, alive, pairs=4)


def test_delete_edge_id_disambiguates_parallel_edges():
    g = Graph(3)
    e0 = g.add_edge(0, 1)
    e1 = g.add_edge(0, 1)
    g.add_edge(1, 2)
    from decbicon.graphs import single_region_division, DivisionPair

    fine = single_region_division(g)
    coarse = single_region_division(g)
    pair = DivisionPair(coarse, fine, g.n, 0, g.n, 0, {coarse[0].rid: [fine[0].rid]})
    eng = Engine(g.copy(), pair, levels=2)
    assert eng.biconnected(0, 1)
    eng.delete_edge_id(e0)
    assert eng.connected(0, 1)
    assert not eng.biconnected(0, 1)
    eng.delete_edge_id(e1)
    assert not eng.connected(0, 1)
    with pytest.raises(ValueError):
        eng.delete_edge_id(e0)


def test_error_cases():
    g, pair = grid_instance(4, 4, 2, 2)
    eng = Engine(g.copy(), pair, levels=2)
    with pytest.raises(ValueError):
        eng.nearest_cutvertex(3, 3)
    with pytest.raises(ValueError):
        eng.nearest_bridge(3, 3)
    with pytest.raises(ValueError):
        eng.biconnected(0, g.n + 5)
    assert eng.two_edge_connected(2, 2) is True
    assert eng.connected(1, 1) is True
    # disconnect a corner and exercise the disconnected paths
    eng.delete_edge(0, 1)
    eng.delete_edge(0, 4)
    assert not eng.connected(0, 5)
    assert eng.two_edge_connected(0, 5) is False
    with pytest.raises(ValueError):
        eng.nearest_cutvertex(0, 5)
    with pytest.raises(ValueError):
        eng.nearest_bridge(0, 5)
    with pytest.raises(ValueError):
        eng.delete_edge(0, 1)


def test_dead_vertex_rejected_after_delete_vertex():
    g, pair = grid_instance(4, 4, 2, 2)
    eng = Engine(g.copy(), pair, levels=2)
    eng.delete_vertex(5)
    with pytest.raises(ValueError):
        eng.connected(5, 6)
    with pytest.raises(ValueError):
        eng.delete_vertex(5)


def test_levels_validation():
    g, pair = grid_instance(4, 4, 2, 2)
    with pytest.raises(ValueError):
        Engine(g.copy(), pair, levels=4)


def test_counters_track_deletions():
    g, pair = grid_instance(4, 4, 2, 2)
    eng = Engine(g.copy(), pair, levels=3, aux=False)
    edges = list(g.alive_edges())[:10]
    for e in edges:
        eng.delete_edge_id(e)
    c = eng.counters()
    assert c["edge_deletes"] == 10
    assert c["top_rebuilds"] >= 1


def test_last_query_lookups_bounded_small_grid():
    g, pair = grid_instance(6, 6, 3, 3)
    eng = Engine(g.copy(), pair, levels=3, aux=False)
    rng = random.Random(11)
    edges = list(g.alive_edges())
    rng.shuffle(edges)
    for i, e in enumerate(edges):
        eng.delete_edge_id(e)
        if i % 5:
            continue
        u, v = rng.sample(range(g.n), 2)
        eng.biconnected(u, v)
        assert eng.last_query_lookups <= 64


def test_conn_instance_equals_plain_connectivity():
    g, pair = grid_instance(6, 6, 2, 2)
    ci = ConnInstance(g.copy(), pair.fine, levels=2)
    shadow = g.copy()
    rng = random.Random(9)
    edges = list(g.alive_edges())
    rng.shuffle(edges)
    for e in edges:
        ci.delete_host_edge(e)
        shadow.delete_edge(e)
        for _ in range(3):
            u, v = rng.randrange(g.n), rng.randrange(g.n)
            assert ci.connected(u, v) == oracle.o_connected(shadow, u, v)


def test_twoec_instance_structure_and_answers():
    g, pair = grid_instance(6, 6, 2, 2)
    ti = TwoECInstance(g.copy(), pair.fine, levels=2)
    # the cycle expansion has maximum degree 3: two cycle edges plus one chord
    gp = ti.gp
    for v in gp.alive_vertices():
        deg = sum(1 for e in gp.adj[v] if gp.edge_alive[e])
        assert deg <= 3
    shadow = g.copy()
    rng = random.Random(21)
    edges = list(g.alive_edges())
    rng.shuffle(edges)
    for e in edges[: len(edges) // 2]:
        ti.delete_host_edge(e)
        shadow.delete_edge(e)
        for _ in range(3):
            u, v = rng.sample(range(g.n), 2)
            if not oracle.o_connected(shadow, u, v):
                continue
            want = oracle.o_2ec(shadow, u, v)
            assert ti.two_edge_connected(u, v) == want
            if not want:
                assert ti.nearest_bridge(u, v) == oracle.o_nearest_bridge(
                    shadow, u, v
                )
