"""Graph representation, strict (r,s)-divisions, instance generation and file I/O.

Vertices and edges carry dense integer ids.  Parallel edges are allowed (each
with its own id); self-loops are rejected.  Vertex capacities are 1 or 2;
capacity 2 only ever appears on "block side" nodes of patchwork graphs.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field


class ParseError(ValueError):
    pass


class Graph:
    """Mutable multigraph with alive-flags on vertices and edges."""

    def __init__(self, n: int = 0):
        self.cap: list[int] = [1] * n
        self.vertex_alive: list[bool] = [True] * n
        # edge records: (u, v); dead edges keep their slot
        self.edge_u: list[int] = []
        self.edge_v: list[int] = []
        self.edge_alive: list[bool] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]
        # live id sets, so alive_* enumeration costs live size, not history
        self._alive_v: set[int] = set(range(n))
        self._alive_e: set[int] = set()

    @property
    def n(self) -> int:
        return len(self.cap)

    @property
    def m(self) -> int:
        return len(self.edge_u)

    def add_vertex(self, cap: int = 1) -> int:
        v = len(self.cap)
        self.cap.append(cap)
        self.vertex_alive.append(True)
        self.adj.append([])
        self._alive_v.add(v)
        return v

    def add_edge(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) out of range")
        e = len(self.edge_u)
        self.edge_u.append(u)
        self.edge_v.append(v)
        self.edge_alive.append(True)
        self._alive_e.add(e)
        self.adj[u].append(e)
        self.adj[v].append(e)
        return e

    def delete_edge(self, e: int) -> None:
        if not self.edge_alive[e]:
            raise ValueError(f"edge {e} already dead")
        self.edge_alive[e] = False
        self._alive_e.discard(e)
        self.adj[self.edge_u[e]].remove(e)
        self.adj[self.edge_v[e]].remove(e)

    def delete_vertex(self, v: int) -> None:
        if not self.vertex_alive[v]:
            raise ValueError(f"vertex {v} already dead")
        for e in list(self.adj[v]):
            self.delete_edge(e)
        self.vertex_alive[v] = False
        self._alive_v.discard(v)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edge_u[e], self.edge_v[e]

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edge_u[e], self.edge_v[e]
        return w if v == u else u

    def neighbors(self, v: int):
        for e in self.adj[v]:
            yield self.other_end(e, v)

    def kill_vertex(self, v: int) -> None:
        """Mark an isolated vertex dead without touching edges."""
        self.vertex_alive[v] = False
        self._alive_v.discard(v)

    def alive_edges(self):
        return sorted(self._alive_e)

    def alive_vertices(self):
        return sorted(self._alive_v)

    def find_edge(self, u: int, v: int) -> int | None:
        """Any alive edge between u and v, lowest id first."""
        for e in self.adj[u]:
            if self.other_end(e, u) == v:
                return e
        return None

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def copy(self) -> "Graph":
        g = Graph(0)
        g.cap = list(self.cap)
        g.vertex_alive = list(self.vertex_alive)
        g.edge_u = list(self.edge_u)
        g.edge_v = list(self.edge_v)
        g.edge_alive = list(self.edge_alive)
        g.adj = [list(a) for a in self.adj]
        g._alive_v = set(self._alive_v)
        g._alive_e = set(self._alive_e)
        return g

    def subgraph(self, vertices, edges) -> tuple["Graph", dict[int, int], dict[int, int]]:
        """Graph induced by the given edge list, with dense local ids.

        Returns (graph, vertex_map global->local, edge_map global->local).
        Only alive edges are copied.
        """
        vmap = {v: i for i, v in enumerate(vertices)}
        g = Graph(len(vmap))
        for v, i in vmap.items():
            g.cap[i] = self.cap[v]
            if not self.vertex_alive[v]:
                g.kill_vertex(i)
        emap = {}
        eu, ev, ea = self.edge_u, self.edge_v, self.edge_alive
        gu, gv, ga, gadj, gset = g.edge_u, g.edge_v, g.edge_alive, g.adj, g._alive_e
        for e in edges:
            if ea[e]:
                a, b = vmap[eu[e]], vmap[ev[e]]
                k = len(gu)
                gu.append(a)
                gv.append(b)
                ga.append(True)
                gset.add(k)
                gadj[a].append(k)
                gadj[b].append(k)
                emap[e] = k
        return g, vmap, emap


@dataclass
class Region:
    rid: int
    vertices: list[int]
    boundary: list[int]
    edges: list[int]


@dataclass
class DivisionPair:
    coarse: list[Region]
    fine: list[Region]
    r1: int
    s1: int
    r2: int
    s2: int
    # coarse region id -> fine region ids partitioning its edges
    nesting: dict[int, list[int]] = field(default_factory=dict)


# trace events
DELETE_EDGE = "D"
DELETE_VERTEX = "DV"
QUERY = "Q"
QUERY_KINDS = ("conn", "bicon", "2ec", "cut", "bridge")


@dataclass
class Trace:
    events: list[tuple]  # ("D",u,v) | ("DV",v) | ("Q",kind,u,v)


# ---------------------------------------------------------------------------
# File I/O


def load_graph(text: str) -> Graph:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty graph file")
    no, header = lines[0]
    try:
        n, m = map(int, header.split())
    except ValueError:
        raise ParseError(f"line {no}: expected 'n m' header") from None
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}")
    g = Graph(n)
    for no, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"line {no}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {no}: non-integer endpoint") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {no}: vertex id out of range")
        if u == v:
            raise ParseError(f"line {no}: self-loop")
        g.add_edge(u, v)
    return g


def serialize_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out += [f"{g.edge_u[e]} {g.edge_v[e]}" for e in range(g.m)]
    return "\n".join(out) + "\n"


def load_division(text: str) -> list[Region]:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty division file")
    no, header = lines[0]
    try:
        k = int(header)
    except ValueError:
        raise ParseError(f"line {no}: expected region count") from None
    if len(lines) - 1 != 3 * k:
        raise ParseError(f"expected {3 * k} region lines, found {len(lines) - 1}")
    regions = []
    for i in range(k):
        rows = {}
        for j in range(3):
            no, ln = lines[1 + 3 * i + j]
            tag, *ids = ln.split()
            if tag not in ("V", "B", "E"):
                raise ParseError(f"line {no}: expected V/B/E row")
            try:
                rows[tag] = [int(x) for x in ids]
            except ValueError:
                raise ParseError(f"line {no}: non-integer id") from None
        if set(rows) != {"V", "B", "E"}:
            raise ParseError(f"region {i}: missing V/B/E row")
        regions.append(Region(i, rows["V"], rows["B"], rows["E"]))
    return regions


def serialize_division(regions: list[Region]) -> str:
    out = [str(len(regions))]
    for r in regions:
        out.append("V " + " ".join(map(str, r.vertices)))
        out.append("B " + " ".join(map(str, r.boundary)))
        out.append("E " + " ".join(map(str, r.edges)))
    return "\n".join(out) + "\n"


def load_trace(text: str) -> Trace:
    events = []
    for no, ln in enumerate(text.splitlines(), start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if parts[0] == "D" and len(parts) == 3:
            events.append((DELETE_EDGE, int(parts[1]), int(parts[2])))
        elif parts[0] == "DV" and len(parts) == 2:
            events.append((DELETE_VERTEX, int(parts[1])))
        elif parts[0] == "Q" and len(parts) == 4 and parts[1] in QUERY_KINDS:
            events.append((QUERY, parts[1], int(parts[2]), int(parts[3])))
        else:
            raise ParseError(f"line {no}: bad trace event {ln!r}")
    return Trace(events)


def serialize_trace(t: Trace) -> str:
    out = []
    for ev in t.events:
        if ev[0] == QUERY:
            out.append(f"Q {ev[1]} {ev[2]} {ev[3]}")
        else:
            out.append(" ".join(map(str, ev)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Validation


def validate_division(g: Graph, regions: list[Region], r: int, s: int) -> list[str]:
    """All violations of the strict (r,s)-division rules; empty means valid."""
    report = []
    covered: dict[int, int] = {}
    vertex_regions: dict[int, list[int]] = {}
    for reg in regions:
        vset = set(reg.vertices)
        if len(reg.vertices) > r:
            report.append(f"region {reg.rid}: {len(reg.vertices)} vertices > r={r}")
        if len(reg.boundary) > s:
            report.append(f"region {reg.rid}: {len(reg.boundary)} boundary > s={s}")
        if not set(reg.boundary) <= vset:
            report.append(f"region {reg.rid}: boundary not a subset of vertices")
        for e in reg.edges:
            covered[e] = covered.get(e, 0) + 1
            if self_edge_outside(g, e, vset):
                report.append(f"region {reg.rid}: edge {e} has endpoint outside region")
        for v in reg.vertices:
            vertex_regions.setdefault(v, []).append(reg.rid)
    for e in g.alive_edges():
        c = covered.get(e, 0)
        if c == 0:
            report.append(f"edge {e} not covered")
        elif c > 1:
            report.append(f"edge {e} covered {c} times")
    for v, rids in vertex_regions.items():
        if len(rids) >= 2:
            for reg in regions:
                if reg.rid in rids and v not in reg.boundary:
                    report.append(f"vertex {v} shared by regions but not boundary in {reg.rid}")
    return report


def self_edge_outside(g: Graph, e: int, vset) -> bool:
    return g.edge_u[e] not in vset or g.edge_v[e] not in vset


def default_t(n: int) -> float:
    """Cost function for suitable-pair checking; configurable elsewhere."""
    import math

    return math.ceil(math.log2(n + 2)) ** 5


def validate_suitable_pair(g: Graph, pair: DivisionPair, t_poly=None) -> list[str]:
    """Structural checks for a nested division pair.

    Parameter inequalities are reported (not enforced) alongside structural
    violations; the observed regions-per-coarse-region constant is reported.
    """
    import math

    if t_poly is None:
        t_poly = default_t
    report = []
    coarse_boundary = set()
    for a in pair.coarse:
        coarse_boundary.update(a.boundary)
    fine_boundary = set()
    for r in pair.fine:
        fine_boundary.update(r.boundary)
    if not coarse_boundary <= fine_boundary:
        missing = sorted(coarse_boundary - fine_boundary)
        report.append(f"coarse boundary not subset of fine boundary: {missing[:8]}")
    fine_by_id = {r.rid: r for r in pair.fine}
    max_count = 0
    for a in pair.coarse:
        rids = pair.nesting.get(a.rid)
        if rids is None:
            report.append(f"coarse region {a.rid}: no nesting entry")
            continue
        max_count = max(max_count, len(rids))
        sub_edges: dict[int, int] = {}
        for rid in rids:
            reg = fine_by_id[rid]
            if len(reg.vertices) > pair.r2 or len(reg.boundary) > pair.s2:
                report.append(f"fine region {rid} exceeds (r2,s2) inside coarse {a.rid}")
            for e in reg.edges:
                sub_edges[e] = sub_edges.get(e, 0) + 1
        if sorted(sub_edges) != sorted(a.edges) or any(c != 1 for c in sub_edges.values()):
            report.append(f"coarse region {a.rid}: fine regions do not partition its edges")
    if pair.r1 <= pair.r2:
        report.append("nesting map does not refine: r1 <= r2")
    n = max(g.n, 2)
    if pair.r1 / max(pair.s1, 1) < t_poly(n) * math.log2(n):
        report.append(
            f"parameter inequality r1/s1 >= t(n)*log n not met "
            f"({pair.r1}/{pair.s1} < {t_poly(n) * math.log2(n):.1f})"
        )
    if pair.r2 / max(pair.s2, 1) < t_poly(pair.r1) * math.log2(max(pair.r1, 2)):
        report.append(
            f"parameter inequality r2/s2 >= t(r1)*log r1 not met "
            f"({pair.r2}/{pair.s2} < {t_poly(pair.r1) * math.log2(max(pair.r1, 2)):.1f})"
        )
    if max_count:
        c = max_count * pair.r2 / pair.r1
        report.append(f"observed regions-per-coarse constant c={c:.2f}")
    return [r for r in report if not r.startswith("observed")] or []


def observed_nesting_constant(pair: DivisionPair) -> float:
    mx = max((len(v) for v in pair.nesting.values()), default=0)
    return mx * pair.r2 / pair.r1 if pair.r1 else 0.0


# ---------------------------------------------------------------------------
# Generators


def gen_grid(w: int, h: int) -> Graph:
    """w x h grid graph; vertex (x,y) has id y*w + x."""
    g = Graph(w * h)
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                g.add_edge(v, v + 1)
            if y + 1 < h:
                g.add_edge(v, v + w)
    return g


def gen_grid_division(w: int, h: int, tile: int, g: Graph | None = None) -> list[Region]:
    """Tile the grid into tile x tile regions; perimeter vertices are boundary."""
    if w % tile or h % tile:
        raise ValueError(f"tile {tile} must divide {w}x{h}")
    if g is None:
        g = gen_grid(w, h)
    regions = []
    rid = 0
    for ty in range(h // tile):
        for tx in range(w // tile):
            xs = range(tx * tile, (tx + 1) * tile)
            ys = range(ty * tile, (ty + 1) * tile)
            verts = [y * w + x for y in ys for x in xs]
            boundary = [
                y * w + x
                for y in ys
                for x in xs
                if (x == tx * tile and x > 0)
                or (x == (tx + 1) * tile - 1 and x < w - 1)
                or (y == ty * tile and y > 0)
                or (y == (ty + 1) * tile - 1 and y < h - 1)
            ]
            regions.append(Region(rid, verts, boundary, []))
            rid += 1
    # assign each edge to the region owning both endpoints; cross-tile edges
    # go to the lower region id
    vert_region = {}
    for reg in regions:
        for v in reg.vertices:
            vert_region.setdefault(v, reg.rid)
    by_id = {reg.rid: reg for reg in regions}
    for e in range(g.m):
        u, v = g.edge_u[e], g.edge_v[e]
        ru, rv = vert_region[u], vert_region[v]
        if ru == rv:
            by_id[ru].edges.append(e)
        else:
            # cross-tile edge: both endpoints become boundary of the owning region
            owner = by_id[min(ru, rv)]
            owner.edges.append(e)
            for x in (u, v):
                if x not in owner.vertices:
                    owner.vertices.append(x)
                if x not in owner.boundary:
                    owner.boundary.append(x)
                other = by_id[max(ru, rv)]
                if x in other.vertices and x not in other.boundary:
                    other.boundary.append(x)
    return regions


def gen_nested_grid_pair(w: int, h: int, t1: int, t2: int) -> DivisionPair:
    if t1 % t2:
        raise ValueError(f"t2={t2} must divide t1={t1}")
    g = gen_grid(w, h)
    coarse = gen_grid_division(w, h, t1, g)
    fine = gen_grid_division(w, h, t2, g)
    # every coarse-boundary vertex must be fine-boundary; grids guarantee this
    # because tile borders of t1 are also tile borders of t2
    edge_to_fine = {}
    for r in fine:
        for e in r.edges:
            edge_to_fine[e] = r.rid
    nesting: dict[int, list[int]] = {}
    for a in coarse:
        rids = sorted({edge_to_fine[e] for e in a.edges})
        nesting[a.rid] = rids
    s1 = max((len(a.boundary) for a in coarse), default=0)
    s2 = max((len(r.boundary) for r in fine), default=0)
    r1 = max((len(a.vertices) for a in coarse), default=1)
    r2 = max((len(r.vertices) for r in fine), default=1)
    return DivisionPair(coarse, fine, r1, s1, r2, s2, nesting)


def single_region_division(g: Graph) -> list[Region]:
    return [Region(0, list(range(g.n)), [], g.alive_edges())]


def heuristic_division(g: Graph, r: int, s: int, seed: int = 0) -> list[Region] | None:
    """Recursive BFS-level-separator splitting into an (r,s)-division.

    Returns None when the recursion budget fails to produce a valid division.
    """
    del seed  # deterministic; kept for interface stability
    regions: list[Region] = []
    boundary_global: set[int] = set()

    def bfs_levels(vertices: set[int], edges: list[int], start: int):
        dist = {start: 0}
        q = deque([start])
        order = [start]
        adj: dict[int, list[int]] = {v: [] for v in vertices}
        for e in edges:
            adj[g.edge_u[e]].append(e)
            adj[g.edge_v[e]].append(e)
        while q:
            v = q.popleft()
            for e in adj[v]:
                w = g.other_end(e, v)
                if w not in dist:
                    dist[w] = dist[v] + 1
                    q.append(w)
                    order.append(w)
        return dist, order

    def split(vertices: set[int], edges: list[int], depth: int) -> bool:
        if len(vertices) <= r:
            regions.append(Region(len(regions), sorted(vertices), [], list(edges)))
            return True
        if depth > 64:
            return False
        # highest-eccentricity start: two BFS sweeps, ties by smallest id
        start = min(vertices)
        dist, _ = bfs_levels(vertices, edges, start)
        far = max(dist.values())
        start = min(v for v, d in dist.items() if d == far)
        dist, _ = bfs_levels(vertices, edges, start)
        span = max(dist.values())
        if span == 0:
            return False
        mid = (span + 1) // 2
        sep = sorted(v for v, d in dist.items() if d == mid)
        if not sep:
            return False
        boundary_global.update(sep)
        left_e, right_e = [], []
        for e in edges:
            du = dist[g.edge_u[e]]
            dv = dist[g.edge_v[e]]
            if du <= mid and dv <= mid:
                left_e.append(e)
            else:
                right_e.append(e)
        lv = {v for v in vertices if dist[v] <= mid}
        rv = {v for v in vertices if dist[v] >= mid}
        # isolated vertices keep to the left piece
        rv -= {v for v in rv if dist[v] == mid}
        rv.update(sep)
        if not left_e or not right_e:
            return False
        del lv, rv
        for es in (left_e, right_e):
            used = {g.edge_u[e] for e in es} | {g.edge_v[e] for e in es}
            if not split_components(used, es, depth + 1):
                return False
        return True

    def split_components(vertices: set[int], edges: list[int], depth: int) -> bool:
        # process connected pieces independently
        seen: set[int] = set()
        adj: dict[int, list[int]] = {v: [] for v in vertices}
        for e in edges:
            adj[g.edge_u[e]].append(e)
            adj[g.edge_v[e]].append(e)
        for v0 in sorted(vertices):
            if v0 in seen:
                continue
            comp = {v0}
            ce = set()
            q = deque([v0])
            seen.add(v0)
            while q:
                v = q.popleft()
                for e in adj.get(v, ()):
                    ce.add(e)
                    w = g.other_end(e, v)
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        q.append(w)
            if not split(comp, sorted(ce), depth):
                return False
        return True

    alive_v = set()
    for e in g.alive_edges():
        alive_v.add(g.edge_u[e])
        alive_v.add(g.edge_v[e])
    isolated = [v for v in g.alive_vertices() if v not in alive_v]
    if alive_v and not split_components(alive_v, g.alive_edges(), 0):
        return None
    for v in isolated:
        regions.append(Region(len(regions), [v], [], []))
    # mark boundary: separator vertices and any vertex in >= 2 regions
    count: dict[int, int] = {}
    for reg in regions:
        for v in reg.vertices:
            count[v] = count.get(v, 0) + 1
    for reg in regions:
        reg.boundary = sorted(
            v for v in reg.vertices if count[v] >= 2 or v in boundary_global
        )
    if validate_division(g, regions, r, s):
        return None
    return regions


# ---------------------------------------------------------------------------
# Random instances (testing aid)


def gen_random_connected(n: int, extra_edges: int, rng: random.Random) -> Graph:
    g = Graph(n)
    for v in range(1, n):
        g.add_edge(v, rng.randrange(v))
    for _ in range(extra_edges):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            g.add_edge(u, v)
    return g
