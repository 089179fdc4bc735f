"""Brute-force ground truth for connectivity-family queries.

Everything here is recomputed from scratch per call and deliberately avoids
block-cut trees so that it shares no code with the structures under test.
"""

from __future__ import annotations

from collections import deque

from .graphs import Graph

BICONNECTED = "bicon"
BRIDGE_NIL = "nil"


def _reachable(g: Graph, src: int, skip_vertex: int = -1, skip_edge: int = -1) -> set[int]:
    if src == skip_vertex:
        return set()
    seen = {src}
    q = deque([src])
    while q:
        v = q.popleft()
        for e in g.adj[v]:
            if e == skip_edge:
                continue
            w = g.other_end(e, v)
            if w == skip_vertex or w in seen:
                continue
            seen.add(w)
            q.append(w)
    return seen


def o_connected(g: Graph, u: int, v: int) -> bool:
    return v in _reachable(g, u)


def o_biconnected(g: Graph, u: int, v: int) -> bool:
    """True iff no single vertex (other than u,v) or bridge edge uv separates them."""
    if u == v:
        return True
    if not o_connected(g, u, v):
        return False
    for w in g.alive_vertices():
        if w != u and w != v and v not in _reachable(g, u, skip_vertex=w):
            return False
    # adjacent pair joined only by one edge: the uv bridge case
    uv_edges = [e for e in g.adj[u] if g.other_end(e, u) == v]
    if uv_edges and len(uv_edges) == 1:
        if v not in _reachable(g, u, skip_edge=uv_edges[0]):
            return False
    return True


def o_2ec(g: Graph, u: int, v: int) -> bool:
    if u == v:
        return True
    if not o_connected(g, u, v):
        return False
    return all(
        v in _reachable(g, u, skip_edge=e) for e in g.alive_edges()
    )


def _some_path(g: Graph, u: int, v: int) -> list[int] | None:
    """A simple u-v path by BFS (vertex sequence)."""
    if u == v:
        return [u]
    prev = {u: -1}
    q = deque([u])
    while q:
        x = q.popleft()
        for e in g.adj[x]:
            w = g.other_end(e, x)
            if w not in prev:
                prev[w] = x
                if w == v:
                    path = [v]
                    while path[-1] != u:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                q.append(w)
    return None


def o_nearest_cut(g: Graph, u: int, v: int):
    """BICONNECTED, BRIDGE_NIL, or the first separating cutvertex on a u-v path."""
    if u == v:
        raise ValueError("nearest cutvertex undefined for u == v")
    path = _some_path(g, u, v)
    if path is None:
        raise ValueError(f"{u} and {v} are not connected")
    for w in path[1:-1]:
        if v not in _reachable(g, u, skip_vertex=w):
            return w
    uv_edges = [e for e in g.adj[u] if g.other_end(e, u) == v]
    if len(uv_edges) == 1 and v not in _reachable(g, u, skip_edge=uv_edges[0]):
        return BRIDGE_NIL
    if o_biconnected(g, u, v):
        return BICONNECTED
    # path interior held no separator yet the pair is not biconnected: cannot
    # happen (every separating cutvertex lies on every u-v path)
    raise AssertionError("inconsistent nearest-cut state")


def o_nearest_bridge(g: Graph, u: int, v: int):
    """First separating bridge (edge id) walking a u-v path, or None if 2EC."""
    if u == v:
        raise ValueError("nearest bridge undefined for u == v")
    path = _some_path(g, u, v)
    if path is None:
        raise ValueError(f"{u} and {v} are not connected")
    for a, b in zip(path, path[1:]):
        for e in g.adj[a]:
            if g.other_end(e, a) == b and v not in _reachable(g, u, skip_edge=e):
                return e
    return None


# ---------------------------------------------------------------------------
# Tree oracles (explicit root-path intersection)


def o_ca(parent: dict[int, int], u: int, v: int):
    """Characteristic ancestors on an explicit parent map: (nca, u', v')."""
    pu = _root_path(parent, u)
    pv = _root_path(parent, v)
    su = set(pu)
    a = next((x for x in pv if x in su), None)
    if a is None:
        raise ValueError(f"{u} and {v} are in different trees")
    iu = pu.index(a)
    iv = pv.index(a)
    u1 = pu[iu - 1] if iu > 0 else a
    v1 = pv[iv - 1] if iv > 0 else a
    return a, u1, v1


def o_first_on_path(parent: dict[int, int], u: int, v: int):
    if u == v:
        raise ValueError("first-on-path undefined for u == v")
    a, u1, v1 = o_ca(parent, u, v)
    if u == a:
        return v1
    return parent[u]


def _root_path(parent: dict[int, int], u: int) -> list[int]:
    path = [u]
    while parent.get(path[-1], -1) != -1 and parent[path[-1]] is not None:
        nxt = parent[path[-1]]
        if nxt == path[-1]:
            break
        path.append(nxt)
    return path
