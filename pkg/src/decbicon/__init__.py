"""Decremental biconnectivity over nested region divisions.

Layers, bottom to top:

  graphs    -- adjacency-list multigraph, file formats, instance generators
  oracle    -- brute-force ground truth recomputed from scratch per query
  bcforest  -- static block-cut forests and the capacity expansion
  compress  -- terminal-compressed block-cut forests
  dynamics  -- operation counters, update classification, quick-find
  patchwork -- one glued level of region structures, and the top structure
  catree    -- split/contract trees with heavy-path characteristic ancestors
  engine    -- the full decremental structure plus query front-end
  cli       -- trace-driven command line front-end
"""

from .graphs import (
    DivisionPair,
    Graph,
    ParseError,
    Region,
    Trace,
    gen_grid,
    gen_nested_grid_pair,
    gen_random_connected,
    load_division,
    load_graph,
    load_trace,
    serialize_division,
    serialize_graph,
    serialize_trace,
)
from .engine import ConnInstance, Engine, TwoECInstance

__all__ = [
    "ConnInstance",
    "DivisionPair",
    "Engine",
    "Graph",
    "ParseError",
    "Region",
    "Trace",
    "TwoECInstance",
    "gen_grid",
    "gen_nested_grid_pair",
    "gen_random_connected",
    "load_division",
    "load_graph",
    "load_trace",
    "serialize_division",
    "serialize_graph",
    "serialize_trace",
]
