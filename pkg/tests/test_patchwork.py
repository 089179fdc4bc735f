"""Glued region structures: the compress-then-glue identity and the top
structure's path answers."""

import random

import pytest

from decbicon.graphs import Region, gen_grid, gen_grid_division
from decbicon.oracle import BICONNECTED, BRIDGE_NIL, o_biconnected, o_connected, o_nearest_cut
from decbicon.patchwork import PatchworkLevel, RegionStructure, TopLevel, check_samecbc
from tests.conftest import division_for, random_graph


def samecbc_cases():
    out = []
    for seed in range(40):
        g = random_graph(seed, max_n=32)
        fine = division_for(g, seed)
        boundary = sorted({b for r in fine for b in r.boundary})
        if not boundary:
            continue
        rng = random.Random(seed)
        k = rng.randint(1, len(boundary))
        out.append((g, fine, sorted(rng.sample(boundary, k))))
    g = gen_grid(6, 6)
    fine = gen_grid_division(6, 6, 3, g)
    boundary = sorted({b for r in fine for b in r.boundary})
    out.append((g, fine, boundary))
    out.append((g, fine, boundary[:2]))
    return out


@pytest.mark.parametrize("g,fine,terms", samecbc_cases())
def test_compress_then_glue_equals_compress(g, fine, terms):
    assert check_samecbc(g, fine, terms)


def test_compress_then_glue_with_deletions():
    g = gen_grid(6, 6)
    fine = gen_grid_division(6, 6, 2, g)
    boundary = sorted({b for r in fine for b in r.boundary})
    rng = random.Random(5)
    edges = g.alive_edges()
    for e in rng.sample(edges, len(edges) // 2):
        g.delete_edge(e)
    assert check_samecbc(g, fine, boundary)


# -- the top structure ---------------------------------------------------------


@pytest.mark.parametrize("seed", range(12))
def test_top_level_answers_match_oracle(seed):
    g = random_graph(seed, max_n=28)
    rng = random.Random(seed)
    top = TopLevel(g)
    alive = g.alive_vertices()
    edges = list(g.alive_edges())
    rng.shuffle(edges)
    for e in edges:
        g.delete_edge(e)
        top.mark_dirty()
        for _ in range(6):
            u, v = rng.choice(alive), rng.choice(alive)
            assert top.connected(u, v) == o_connected(g, u, v)
            assert top.bicon(u, v) == o_biconnected(g, u, v)
            if u != v and top.connected(u, v):
                want = o_nearest_cut(g, u, v)
                got = top.first_separator(u, v)
                if want == BICONNECTED:
                    assert got == ("bicon",)
                elif want == BRIDGE_NIL:
                    assert got == ("bridge",)
                else:
                    assert got == ("cut", want)


def test_top_level_is_lazy():
    g = gen_grid(4, 4)
    top = TopLevel(g)
    base = top.rebuilds
    for e in list(g.alive_edges())[:5]:
        g.delete_edge(e)
        top.mark_dirty()
    assert top.rebuilds == base  # still pending
    top.connected(0, 15)
    assert top.rebuilds == base + 1
    top.bicon(0, 15)
    assert top.rebuilds == base + 1  # one rebuild serves many queries


def test_top_level_ascent_is_logarithmic():
    g = gen_grid(8, 8)
    top = TopLevel(g)
    bound = 2 * max(1, top.black_count).bit_length()
    rng = random.Random(0)
    alive = g.alive_vertices()
    for _ in range(100):
        u, v = rng.sample(alive, 2)
        top.first_separator(u, v)
        assert top.last_ascent <= bound


# -- region structures and regluing ---------------------------------------------


def test_reglue_reports_change_only_on_change():
    g = gen_grid(4, 4)
    fine = gen_grid_division(4, 4, 2, g)
    lvl = PatchworkLevel(g, fine)
    # regluing an untouched region is a no-op
    assert lvl.reglue_region(fine[0].rid) is False
    # delete an interior edge of region 0 and reglue: contribution changes
    interior = [
        e
        for e in fine[0].edges
        if g.edge_u[e] not in fine[0].boundary or g.edge_v[e] not in fine[0].boundary
    ]
    g.delete_edge(interior[0])
    assert lvl.reglue_region(fine[0].rid) is True


def test_region_structure_canonical_tracks_recompute():
    g = gen_grid(6, 6)
    fine = gen_grid_division(6, 6, 3, g)
    lvl = PatchworkLevel(g, fine)
    rng = random.Random(2)
    edges = list(g.alive_edges())
    rng.shuffle(edges)
    region_of = {e: r.rid for r in fine for e in r.edges}
    for e in edges[:30]:
        g.delete_edge(e)
        lvl.reglue_region(region_of[e])
        for r in fine:
            st = lvl.structs[r.rid]
            fresh = RegionStructure(
                lvl, Region(rid=r.rid, vertices=st.vertices, boundary=st.boundary, edges=st.edge_ids)
            )
            assert st.canonical() == fresh.canonical()
