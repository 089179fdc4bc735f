"""Sanity checks of the brute-force ground truth on hand-built graphs."""

import pytest

from decbicon.graphs import Graph
from decbicon.oracle import (
    BICONNECTED,
    BRIDGE_NIL,
    o_2ec,
    o_biconnected,
    o_connected,
    o_nearest_bridge,
    o_nearest_cut,
)


def cycle(k: int) -> Graph:
    g = Graph(k)
    for i in range(k):
        g.add_edge(i, (i + 1) % k)
    return g


def path(k: int) -> Graph:
    g = Graph(k)
    for i in range(k - 1):
        g.add_edge(i, i + 1)
    return g


def test_cycle_is_biconnected():
    g = cycle(5)
    assert o_biconnected(g, 0, 2)
    assert o_2ec(g, 0, 3)
    assert o_nearest_cut(g, 0, 2) == BICONNECTED
    assert o_nearest_bridge(g, 0, 2) is None


def test_path_cuts_and_bridges():
    g = path(4)  # 0-1-2-3
    assert o_connected(g, 0, 3)
    assert not o_biconnected(g, 0, 2)
    assert o_nearest_cut(g, 0, 3) == 1
    assert o_nearest_cut(g, 0, 1) == BRIDGE_NIL
    e = o_nearest_bridge(g, 0, 3)
    assert g.endpoints(e) == (0, 1)
    assert not o_2ec(g, 0, 1)


def test_two_triangles_sharing_a_vertex():
    g = Graph(5)
    for u, v in [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]:
        g.add_edge(u, v)
    assert o_biconnected(g, 0, 1)
    assert not o_biconnected(g, 0, 3)
    assert o_nearest_cut(g, 0, 4) == 2
    assert o_nearest_cut(g, 3, 0) == 2
    # both triangles are cycles: no bridges anywhere
    assert o_nearest_bridge(g, 0, 4) is None
    assert o_2ec(g, 0, 4)


def test_parallel_edges_make_two_edge_connected():
    g = Graph(2)
    g.add_edge(0, 1)
    g.add_edge(0, 1)
    assert o_biconnected(g, 0, 1)
    assert o_2ec(g, 0, 1)
    assert o_nearest_cut(g, 0, 1) == BICONNECTED
    g.delete_edge(0)
    assert o_nearest_cut(g, 0, 1) == BRIDGE_NIL
    assert not o_2ec(g, 0, 1)


def test_degenerate_inputs():
    g = path(3)
    assert o_connected(g, 1, 1)
    assert o_biconnected(g, 1, 1)
    with pytest.raises(ValueError):
        o_nearest_cut(g, 1, 1)
    with pytest.raises(ValueError):
        o_nearest_bridge(g, 1, 1)
    g.delete_edge(0)
    with pytest.raises(ValueError):
        o_nearest_cut(g, 0, 2)
