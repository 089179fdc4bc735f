"""Shared instance builders and differential-test helpers."""

import random

import pytest

from decbicon.graphs import (
    DivisionPair,
    gen_grid,
    gen_nested_grid_pair,
    gen_random_connected,
    heuristic_division,
    single_region_division,
)


def random_graph(seed: int, max_n: int = 40):
    """Seeded random connected multigraph-free graph."""
    rng = random.Random(seed)
    n = rng.randint(5, max_n)
    extra = rng.randint(0, max(1, n // 2))
    return gen_random_connected(n, extra, rng)


def division_for(g, seed: int):
    """A fine division: heuristic when it succeeds, single-region otherwise."""
    rng = random.Random(seed)
    r = max(4, g.n // rng.randint(2, 4))
    s = max(2, r // 2)
    fine = heuristic_division(g, r, s, seed)
    if fine is None or not fine:
        fine = single_region_division(g)
    return fine


def pair_for(g, fine=None, seed: int = 0) -> DivisionPair:
    """Wrap a fine division in a one-region coarse division."""
    if fine is None:
        fine = division_for(g, seed)
    coarse = single_region_division(g)
    nesting = {coarse[0].rid: [r.rid for r in fine]}
    r1 = max(len(r.vertices) for r in coarse)
    s1 = max((len(r.boundary) for r in coarse), default=0)
    r2 = max(len(r.vertices) for r in fine)
    s2 = max((len(r.boundary) for r in fine), default=0)
    return DivisionPair(coarse, fine, r1, s1, r2, s2, nesting)


def grid_instance(w: int, h: int, t1: int, t2: int):
    return gen_grid(w, h), gen_nested_grid_pair(w, h, t1, t2)


def random_instance(seed: int, max_n: int = 40):
    g = random_graph(seed, max_n)
    return g, pair_for(g, seed=seed)


@pytest.fixture
def rng():
    return random.Random(0)
