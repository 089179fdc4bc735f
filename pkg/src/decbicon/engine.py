"""Decremental biconnectivity engine.

Composes per-region compressed forests into a two- or three-level patchwork
hierarchy over a nested division pair, plus two companion instances:

* a connectivity instance (host plus a dummy apex adjacent to every vertex,
  whose edges are never deleted: connectivity in the host equals
  biconnectivity there), and
* a two-edge-connectivity instance (every vertex expanded into a cycle of
  its incident-edge attachments, grouped into per-region bundles: vertex
  cuts in the expansion are edge cuts in the host).

Public API: delete_edge, delete_vertex, connected, biconnected,
two_edge_connected, nearest_cutvertex, nearest_bridge, counter export.
"""

from __future__ import annotations

from .graphs import DivisionPair, Graph, Region, validate_suitable_pair
from .oracle import BICONNECTED, BRIDGE_NIL
from .patchwork import PatchworkLevel, TopLevel

_FATAL_MARKS = ("not subset", "no nesting entry", "do not partition", "exceeds")


class _Core:
    """One decremental structure over a host graph.

    levels=1: explicit forest over the whole host, rebuilt per deletion.
    levels=2: one patchwork level over the fine division, explicit top.
    levels=3: fine and grouped (coarse) patchwork levels, explicit top.
    """

    def __init__(
        self,
        host: Graph,
        fine: list[Region] | None = None,
        grouping: dict[int, int] | None = None,
        parent_boundaries: dict[int, list[int]] | None = None,
        levels: int = 1,
    ):
        self.host = host
        self.levels = levels
        self.l1 = None
        self.l2 = None
        if levels == 1:
            self.top = TopLevel(host)
            self.entry = self.top
        elif levels == 2:
            self.l1 = PatchworkLevel(host, fine)
            self.top = TopLevel(self.l1.parent_host)
            self.l1.parent = self.top
            self.entry = self.l1
        else:
            self.l1 = PatchworkLevel(host, fine, grouping, parent_boundaries)
            self.l2 = PatchworkLevel(
                self.l1.parent_host,
                self.l1.parent_regions(),
                labels=self.l1.parent_labels,
                label_to_host=self.l1.registry,
            )
            self.top = TopLevel(self.l2.parent_host)
            self.l1.parent = self.l2
            self.l2.parent = self.top
            self.entry = self.l1
        self.edge_region: dict[int, int] = {}
        for r in fine or []:
            for e in r.edges:
                self.edge_region[e] = r.rid

    # -- deletions, handled bottom up --------------------------------------

    def delete_edge(self, e: int) -> None:
        self.host.delete_edge(e)
        if self.levels == 1:
            self.top.mark_dirty()
            return
        self.l1.counters.edge_deletes += 1
        self._propagate([self.edge_region[e]])

    def delete_vertex(self, v: int) -> None:
        """Mark v dead; all incident edges must already be gone."""
        rids = [] if self.l1 is None else list(self.l1.vertex_regions.get(v, []))
        self.host.delete_vertex(v)
        if self.levels == 1:
            self.top.mark_dirty()
            return
        self._propagate(rids)

    def _propagate(self, fine_rids) -> None:
        changed_groups = set()
        for rid in fine_rids:
            if self.l1.reglue_region(rid):
                changed_groups.add(self.l1.grouping[rid])
        if not changed_groups:
            return
        if self.l2 is None:
            self.top.mark_dirty()
            return
        pids = sorted(changed_groups)
        fresh = {r.rid: r for r in self.l1.parent_regions(pids)}
        changed_top = False
        for pid in pids:
            if self.l2.redefine_region(fresh[pid]):
                changed_top = True
        if changed_top:
            self.top.mark_dirty()

    # -- queries -------------------------------------------------------------

    def connected(self, u: int, v: int) -> bool:
        return self.entry.connected(u, v)

    def bicon(self, u: int, v: int) -> bool:
        return self.entry.bicon(u, v)

    def first_separator(self, u: int, v: int) -> tuple:
        return self.entry.first_separator(u, v)

    # -- accounting ------------------------------------------------------------

    def query_ops(self) -> int:
        total = self.top.query_ops
        for lvl in (self.l1, self.l2):
            if lvl is not None:
                total += lvl.query_ops
        return total

    def counters(self) -> dict:
        out: dict = {}
        for lvl in (self.l1, self.l2):
            if lvl is not None:
                for k, n in lvl.counters.as_dict().items():
                    out[k] = out.get(k, 0) + n
        out["top_rebuilds"] = self.top.rebuilds
        return out


class ConnInstance:
    """Host plus a dummy apex adjacent to every vertex.

    The apex joins every region's vertex and boundary sets and its edges are
    never deleted, so two host vertices are connected in the host exactly
    when they are biconnected here.
    """

    def __init__(self, g: Graph, fine: list[Region], levels: int = 2):
        self.gpp = g.copy()
        self.apex = self.gpp.add_vertex(1)
        vertex_rids: dict[int, list[int]] = {}
        for r in fine:
            for v in r.vertices:
                vertex_rids.setdefault(v, []).append(r.rid)
        extra: dict[int, list[int]] = {r.rid: [] for r in fine}
        self.apex_edge: dict[int, int] = {}
        for v in range(g.n):
            if not g.vertex_alive[v]:
                continue
            e = self.gpp.add_edge(self.apex, v)
            self.apex_edge[v] = e
            rids = vertex_rids.get(v)
            if rids:
                extra[min(rids)].append(e)
        regions = [
            Region(
                rid=r.rid,
                vertices=sorted(set(r.vertices) | {self.apex}),
                boundary=sorted(set(r.boundary) | {self.apex}),
                edges=list(r.edges) + extra[r.rid],
            )
            for r in fine
        ]
        lv = min(levels, 2)
        self.core = _Core(self.gpp, regions if lv == 2 else None, levels=lv)

    def delete_host_edge(self, e: int) -> None:
        self.core.delete_edge(e)

    def connected(self, u: int, v: int) -> bool:
        return self.core.bicon(u, v)


class TwoECInstance:
    """Cycle expansion of the host: each vertex becomes a cycle of one
    attachment copy per incident edge, incident edges grouped into bundles
    by owning region so every bundle is circularly consecutive.  Cycle edges
    are never deleted, so all copies of a vertex stay mutually two-edge
    connected and cut vertices of the expansion are exactly bridges of the
    host.  Queries use the lowest-indexed copy of each endpoint.
    """

    def __init__(self, g: Graph, fine: list[Region], levels: int = 2):
        edge_rid = {}
        vertex_rids: dict[int, list[int]] = {}
        for r in fine:
            for e in r.edges:
                edge_rid[e] = r.rid
            for v in r.vertices:
                vertex_rids.setdefault(v, []).append(r.rid)
        gp = Graph(0)
        self.copies: dict[int, list[int]] = {}
        slot: dict[tuple[int, int], int] = {}  # (edge, endpoint) -> copy
        region_edges: dict[int, list[int]] = {r.rid: [] for r in fine}
        region_extra: dict[int, list[int]] = {r.rid: [] for r in fine}
        self.cycle_edges: set[int] = set()
        for v in range(g.n):
            if not g.vertex_alive[v]:
                continue
            inc = sorted(
                (e for e in g.adj[v] if g.edge_alive[e]),
                key=lambda e: (edge_rid[e], e),
            )
            if not inc:
                c = gp.add_vertex(1)
                self.copies[v] = [c]
                rids = vertex_rids.get(v)
                if rids:
                    region_extra[min(rids)].append(c)
                continue
            cps = [gp.add_vertex(1) for _ in inc]
            self.copies[v] = cps
            for i, e in enumerate(inc):
                slot[(e, v)] = cps[i]
            if len(cps) >= 2:
                for i in range(len(cps)):
                    ce = gp.add_edge(cps[i], cps[(i + 1) % len(cps)])
                    self.cycle_edges.add(ce)
                    region_edges[edge_rid[inc[i]]].append(ce)
        self.chord: dict[int, int] = {}
        self.chord_back: dict[int, int] = {}
        for e in g.alive_edges():
            a, b = g.endpoints(e)
            if a == b:
                raise ValueError("self-loops are not supported")
            ce = gp.add_edge(slot[(e, a)], slot[(e, b)])
            self.chord[e] = ce
            self.chord_back[ce] = e
            region_edges[edge_rid[e]].append(ce)
        self.gp = gp
        owner_count: dict[int, int] = {}
        per_region_vertices: dict[int, set] = {}
        for rid in region_edges:
            vs = set(region_extra[rid])
            for ce in region_edges[rid]:
                vs.add(gp.edge_u[ce])
                vs.add(gp.edge_v[ce])
            per_region_vertices[rid] = vs
            for c in vs:
                owner_count[c] = owner_count.get(c, 0) + 1
        regions = [
            Region(
                rid=rid,
                vertices=sorted(per_region_vertices[rid]),
                boundary=sorted(
                    c for c in per_region_vertices[rid] if owner_count[c] > 1
                ),
                edges=region_edges[rid],
            )
            for rid in sorted(region_edges)
        ]
        self.regions = regions
        self.edge_rid = edge_rid
        lv = min(levels, 2)
        self.core = _Core(gp, regions if lv == 2 else None, levels=lv)

    def canon(self, v: int) -> int:
        return self.copies[v][0]

    def delete_host_edge(self, e: int) -> None:
        self.core.delete_edge(self.chord[e])

    def two_edge_connected(self, u: int, v: int) -> bool:
        return self.core.bicon(self.canon(u), self.canon(v))

    def nearest_bridge(self, u: int, v: int) -> int | None:
        """First separating bridge (host edge id) walking from u, or None."""
        cu, cv = self.canon(u), self.canon(v)
        r = self.core.first_separator(cu, cv)
        if r[0] == "bicon":
            return None
        if r[0] == "bridge":
            ce = self.gp.find_edge(cu, cv)
            assert ce is not None and ce in self.chord_back
            return self.chord_back[ce]
        w = r[1]
        chords = [
            ce
            for ce in self.gp.adj[w]
            if self.gp.edge_alive[ce] and ce not in self.cycle_edges
        ]
        assert len(chords) == 1, "separating copy without a unique attachment"
        return self.chord_back[chords[0]]


class Engine:
    """Decremental biconnectivity over a host graph with a nested division
    pair; optionally materializes the connectivity and two-edge-connectivity
    companion instances (they share the deletion feed)."""

    def __init__(self, g: Graph, pair: DivisionPair, levels: int = 3, aux: bool = True):
        if levels not in (1, 2, 3):
            raise ValueError(f"levels must be 1, 2 or 3, got {levels}")
        problems = [
            p
            for p in validate_suitable_pair(g, pair)
            if any(m in p for m in _FATAL_MARKS)
        ]
        if problems:
            raise ValueError("invalid division pair: " + "; ".join(problems))
        self.g = g
        self.levels = levels
        grouping = None
        parent_boundaries = None
        if levels == 3:
            grouping = {
                rid: a for a, rids in pair.nesting.items() for rid in rids
            }
            parent_boundaries = {a.rid: list(a.boundary) for a in pair.coarse}
        self.core = _Core(
            g,
            pair.fine if levels >= 2 else None,
            grouping,
            parent_boundaries,
            levels,
        )
        self.conn = ConnInstance(g, pair.fine, levels) if aux else None
        self.twoec = TwoECInstance(g, pair.fine, levels) if aux else None
        self._ops_before = 0

    # -- mutation ---------------------------------------------------------

    def delete_edge(self, u: int, v: int) -> None:
        e = self.g.find_edge(u, v)
        if e is None:
            raise ValueError(f"no alive edge between {u} and {v}")
        self._delete_edge_id(e)

    def delete_edge_id(self, e: int) -> None:
        self._delete_edge_id(e)

    def _delete_edge_id(self, e: int) -> None:
        if not self.g.edge_alive[e]:
            raise ValueError(f"edge {e} is already deleted")
        if self.twoec is not None:
            self.twoec.delete_host_edge(e)
        if self.conn is not None:
            self.conn.delete_host_edge(e)
        self.core.delete_edge(e)

    def delete_vertex(self, v: int) -> None:
        self._alive(v)
        for e in sorted(e for e in self.g.adj[v] if self.g.edge_alive[e]):
            self._delete_edge_id(e)
        self.core.delete_vertex(v)

    # -- queries ------------------------------------------------------------

    def _alive(self, *vs: int) -> None:
        for v in vs:
            if v < 0 or v >= self.g.n or not self.g.vertex_alive[v]:
                raise ValueError(f"vertex {v} is not alive")

    def _begin(self) -> None:
        self._ops_before = self.core.query_ops()

    @property
    def last_query_lookups(self) -> int:
        return self.core.query_ops() - self._ops_before

    def connected(self, u: int, v: int) -> bool:
        self._alive(u, v)
        if u == v:
            return True
        self._begin()
        if self.conn is not None:
            return self.conn.connected(u, v)
        return self.core.connected(u, v)

    def biconnected(self, u: int, v: int) -> bool:
        self._alive(u, v)
        self._begin()
        return self.core.bicon(u, v)

    def nearest_cutvertex(self, u: int, v: int):
        """BICONNECTED, BRIDGE_NIL (bridge pair), or the first separating
        vertex on u-v paths nearest to u."""
        self._alive(u, v)
        if u == v:
            raise ValueError("nearest cutvertex undefined for u == v")
        self._begin()
        if not self.core.connected(u, v):
            raise ValueError(f"{u} and {v} are not connected")
        r = self.core.first_separator(u, v)
        if r[0] == "bicon":
            return BICONNECTED
        if r[0] == "bridge":
            return BRIDGE_NIL
        return r[1]

    def two_edge_connected(self, u: int, v: int) -> bool:
        self._alive(u, v)
        if u == v:
            return True
        if self.twoec is None:
            raise ValueError("two-edge-connectivity instance not materialized")
        self._begin()
        if not self.connected(u, v):
            return False
        return self.twoec.two_edge_connected(u, v)

    def nearest_bridge(self, u: int, v: int) -> int | None:
        """First separating bridge (host edge id) from u, or None if 2EC."""
        self._alive(u, v)
        if u == v:
            raise ValueError("nearest bridge undefined for u == v")
        if self.twoec is None:
            raise ValueError("two-edge-connectivity instance not materialized")
        if not self.connected(u, v):
            raise ValueError(f"{u} and {v} are not connected")
        self._begin()
        return self.twoec.nearest_bridge(u, v)

    # -- accounting ------------------------------------------------------------

    def counters(self) -> dict:
        return self.core.counters()
