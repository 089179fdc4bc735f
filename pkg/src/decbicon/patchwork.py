"""Patchwork graphs: glued per-region compressed forests and level queries.

A PatchworkLevel owns a bicapacitated host graph together with a division
into regions.  Each region is compressed relative to its boundary; the
compressed forests, glued at shared boundary vertices, form the parent host
graph handed to the next level.  Biconnectivity and first-separator queries
are answered by combining bounded in-region lookups with one query against
the parent, recursively, down to an explicit BC forest at the top.

Every node at every level carries a global label: real vertices are
("v", id); blocks and pseudoblocks created when compressing region `rid`
are keyed ("b", rid, members) and ("p", rid, flanks).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bcforest import BCForest, BicapBC
from .catree import SCTree
from .compress import CompressedBC, RepMaps, compress, rep_maps
from .dynamics import (
    Counters,
    WeightedQuickFind,
    classify_update,
    memo_get,
    memo_put,
    region_memo_key,
)
from .graphs import Graph, Region


def _lsort(labels):
    return tuple(sorted(labels, key=repr))


class RegionStructure:
    """One region of a host graph, compressed relative to its boundary."""

    def __init__(self, level: "PatchworkLevel", region: Region):
        self.level = level
        self.rid = region.rid
        self.vertices = list(region.vertices)
        self.boundary = list(region.boundary)
        self.edge_ids = list(region.edges)
        self.refresh()

    def refresh(self) -> None:
        host = self.level.host
        alive = [e for e in self.edge_ids if host.edge_alive[e]]
        self.local, self.vmap, self.emap = host.subgraph(self.vertices, alive)
        self.l2g = {i: v for v, i in self.vmap.items()}
        terms = sorted(
            self.vmap[b] for b in self.boundary if host.vertex_alive[b]
        )
        self.level.counters.oracle_ops += 1
        self._keys: dict[int, tuple] = {}
        key = region_memo_key(self.local, terms)
        hit = memo_get(key) if key is not None else None
        if hit is None:
            bb = BicapBC(self.local)
            comp = compress(bb.f, [bb.node(t) for t in terms])
            reps = rep_maps(bb.f, comp)
            hit = (bb, comp, reps)
            if key is not None:
                memo_put(key, hit)
        self.bb, self.comp, self.reps = hit

    # -- host-id helpers ----------------------------------------------------

    def has(self, u: int) -> bool:
        return u in self.vmap

    def _x(self, u: int) -> int:
        return self.bb.node(self.vmap[u])

    def connected(self, u: int, v: int) -> bool:
        self.level.query_ops += 1
        return self.bb.connected(self.vmap[u], self.vmap[v])

    def bicon(self, u: int, v: int) -> bool:
        self.level.query_ops += 1
        return self.bb.biconnected(self.vmap[u], self.vmap[v])

    def second_node(self, u: int, v: int) -> tuple:
        self.level.query_ops += 1
        r = self.bb.second_node(self.vmap[u], self.vmap[v])
        if r[0] == "cut":
            return ("cut", self.l2g[r[1]])
        return r

    def meet_is(self, u: int, v: int, w: int) -> bool:
        self.level.query_ops += 1
        return self.bb.meet_is(self.vmap[u], self.vmap[v], self.vmap[w])

    def nr(self, u: int) -> int | None:
        x = self.reps.nr.get(self._x(u))
        if x is None:
            return None
        return self.l2g[self.bb.back[x]]

    def rep_key(self, u: int):
        """Compressed-forest surrogate of u as a global label, or None."""
        cid = self.reps.rep.get(self._x(u))
        if cid is None:
            return None
        return self.node_key(cid)

    # -- labels and contribution --------------------------------------------

    def _host_label(self, xnode: int):
        return self.level.labels[self.l2g[self.bb.back[xnode]]]

    def node_key(self, cid: int):
        k = self._keys.get(cid)
        if k is None:
            k = self._keys[cid] = self._node_key(cid)
        return k

    def _node_key(self, cid: int):
        if cid < 0:
            pb = self.comp.pseudo[cid]
            return ("p", self.rid, _lsort(self._host_label(t) for t in pb.flanks))
        if cid < self.bb.x.n:
            return self._host_label(cid)
        mem = {
            self._host_label(v)
            for v in self.bb.f.block_members[self.bb.f.block_index(cid)]
        }
        return ("b", self.rid, _lsort(mem))

    def contribution(self):
        """(label -> capacity, edge label pairs, pseudo label -> member labels)."""
        host = self.level.host
        caps: dict = {}
        for x in self.comp.retained:
            k = self.node_key(x)
            if x < self.bb.x.n:
                caps[k] = host.cap[self.l2g[self.bb.back[x]]]
            else:
                caps[k] = self.bb.f.block_cap[self.bb.f.block_index(x)]
        members: dict = {}
        for pid, pb in self.comp.pseudo.items():
            k = self.node_key(pid)
            caps[k] = 1
            mem = set()
            for t in pb.members:
                if t < self.bb.x.n:
                    mem.add(self._host_label(t))
                else:
                    for c in self.bb.f.block_members[self.bb.f.block_index(t)]:
                        mem.add(self._host_label(c))
            members[k] = frozenset(mem)
        edges = set()
        for a, b in self.comp.edges:
            ka, kb = self.node_key(a), self.node_key(b)
            if ka != kb:
                edges.add(_lsort((ka, kb)))
        return caps, edges, members

    def canonical(self):
        return canonical_compressed(self.bb, self.comp, self._host_label)


def canonical_compressed(bb: BicapBC, c: CompressedBC, label) -> tuple:
    """Provenance-free canonical form of a compressed forest.

    Vertex-side nodes by global label, blocks by the sorted labels of their
    retained vertex neighbors, pseudoblocks by their flank labels.
    """
    nbrs: dict[int, set] = {}
    for a, b in c.edges:
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)

    def render(x):
        if x < 0:
            pb = c.pseudo[x]
            return ("P", _lsort(label(t) for t in pb.flanks))
        if x < bb.x.n:
            return ("n", label(x), bb.g.cap[bb.back[x]])
        vn = _lsort(label(y) for y in nbrs.get(x, ()) if y >= 0 and y < bb.x.n)
        cap = bb.f.block_cap[bb.f.block_index(x)]
        if cap == 1 and len(vn) == 2:
            # a retained bridge is indistinguishable from a pseudoblock
            return ("P", vn)
        return ("B", vn, cap)

    nodes = frozenset(render(x) for x in list(c.retained) + list(c.pseudo))
    edges = frozenset(_lsort((render(a), render(b))) for a, b in c.edges)
    return (nodes, edges)


class TopLevel:
    """Explicit BC forest over the top patchwork graph, with path queries
    answered through a heavy-path structure (light-tree ascent is counted
    per query, and is logarithmic in the number of vertex nodes)."""

    def __init__(self, host: Graph):
        self.host = host
        self.query_ops = 0
        self.ascent_steps = 0
        self.last_ascent = 0
        self.rebuilds = 0
        self.dirty = False
        self.rebuild()

    def mark_dirty(self) -> None:
        """Defer the rebuild until the next query; repeated deletions between
        queries then share one rebuild."""
        self.dirty = True

    def _ensure(self) -> None:
        if self.dirty:
            self.rebuild()

    def rebuild(self) -> None:
        # compact onto alive vertices: the host accumulates dead ids as
        # lower levels resplice their contributions, and rebuild cost must
        # track the live size, not the historical one
        alive_v = list(self.host.alive_vertices())
        alive_e = list(self.host.alive_edges())
        local, self.vmap, _ = self.host.subgraph(alive_v, alive_e)
        self.l2g = {i: v for v, i in self.vmap.items()}
        self.bb = BicapBC(local)
        f = self.bb.f
        total = f.n + len(f.block_members)
        parents = [f.parent[i] if f.parent[i] >= 0 else None for i in range(total)]
        blacks = [i < f.n for i in range(total)]
        self.sc = SCTree.from_forest(parents, blacks)
        self.black_count = f.n
        self.rebuilds += 1
        self.dirty = False

    def connected(self, u: int, v: int) -> bool:
        self._ensure()
        self.query_ops += 1
        return self.bb.connected(self.vmap[u], self.vmap[v])

    def bicon(self, u: int, v: int) -> bool:
        self._ensure()
        self.query_ops += 1
        return self.bb.biconnected(self.vmap[u], self.vmap[v])

    def first_separator(self, u: int, v: int) -> tuple:
        """(BICONNECTED,)-style tuple via two first-on-path hops in the
        heavy-path structure over the expansion BC forest."""
        self._ensure()
        self.query_ops += 1
        f = self.bb.f
        nu, nv = self.bb.node(self.vmap[u]), self.bb.node(self.vmap[v])
        tu, tv = self.sc.nodes[nu], self.sc.nodes[nv]
        b = self.sc.first_on_path(tu, tv)
        steps = self.sc.last_ascent
        w = self.sc.first_on_path(b, tv)
        steps += self.sc.last_ascent
        self.ascent_steps += steps
        self.last_ascent = steps
        if w is tv:
            if f.block_cap[f.block_index(b.nid)] == 2:
                return ("bicon",)
            return ("bridge",)
        return ("cut", self.l2g[self.bb.back[w.nid]])


class PatchworkLevel:
    """Host graph + division; builds and owns the parent patchwork graph.

    grouping maps each region id to a parent region id; parent_boundaries
    maps each parent region id to its boundary (host vertex ids).  With a
    single parent region and empty boundary the parent host is simply the
    glued patchwork handed to an explicit top structure.
    """

    def __init__(
        self,
        host: Graph,
        regions: list[Region],
        grouping: dict[int, int] | None = None,
        parent_boundaries: dict[int, list[int]] | None = None,
        labels: dict | None = None,
        label_to_host: dict | None = None,
    ):
        self.host = host
        self.labels = labels or {v: ("v", v) for v in range(host.n)}
        # the reverse map must stay live when the host is respliced below;
        # the lower level's registry is exactly that map, so callers pass it
        self._label_to_host = (
            label_to_host
            if label_to_host is not None
            else {lab: v for v, lab in self.labels.items()}
        )
        self.grouping = grouping or {r.rid: 0 for r in regions}
        self.parent_boundaries = parent_boundaries or {0: []}
        self.counters = Counters()
        self.qf = WeightedQuickFind()
        self.query_ops = 0
        self.structs: dict[int, RegionStructure] = {}
        self.vertex_regions: dict[int, list[int]] = {}
        self.boundary_count: dict[int, int] = {}
        self.group_rids: dict[int, list[int]] = {}
        for r in regions:
            self.structs[r.rid] = RegionStructure(self, r)
            for v in r.vertices:
                self.vertex_regions.setdefault(v, []).append(r.rid)
            for b in r.boundary:
                self.boundary_count[b] = self.boundary_count.get(b, 0) + 1
            self.group_rids.setdefault(self.grouping[r.rid], []).append(r.rid)
        self.boundary_set = {b for b, c in self.boundary_count.items() if c}
        self.parent = None  # set by the engine: PatchworkLevel or TopLevel
        self._glue()

    # -- gluing ---------------------------------------------------------------

    def _glue(self) -> None:
        self.parent_host = Graph(0)
        self.parent_labels: dict[int, tuple] = {}
        self.registry: dict = {}  # label -> parent node id
        self.label_owners: dict = {}  # label -> set of rids contributing it
        self.region_nodes: dict[int, set] = {}  # rid -> labels
        self.region_edges: dict[int, dict] = {}  # rid -> edge label pair -> pid
        self.contribs: dict[int, tuple] = {}
        self.pseudo_members: dict = {}
        for rid in sorted(self.structs):
            self._add_contribution(rid)

    def _add_contribution(self, rid: int, contrib: tuple | None = None) -> None:
        caps, edges, members = contrib or self.structs[rid].contribution()
        self.contribs[rid] = (caps, edges, members)
        self.pseudo_members.update(members)
        self.region_nodes[rid] = set(caps)
        self.region_edges[rid] = {}
        for k, cap in sorted(caps.items(), key=lambda kv: repr(kv[0])):
            if k not in self.registry:
                self.registry[k] = self.parent_host.add_vertex(cap)
                self.parent_labels[self.registry[k]] = k
            self.label_owners.setdefault(k, set()).add(rid)
        for ka, kb in sorted(edges, key=repr):
            eid = self.parent_host.add_edge(self.registry[ka], self.registry[kb])
            self.region_edges[rid][(ka, kb)] = eid

    def _remove_contribution(self, rid: int) -> None:
        for pair, eid in self.region_edges[rid].items():
            if self.parent_host.edge_alive[eid]:
                self.parent_host.delete_edge(eid)
        for k in self.region_nodes[rid]:
            owners = self.label_owners[k]
            owners.discard(rid)
            if not owners:
                pid = self.registry.pop(k)
                del self.parent_labels[pid]
                del self.label_owners[k]
                self.parent_host.delete_vertex(pid)
            if k in self.pseudo_members:
                del self.pseudo_members[k]
        self.region_nodes[rid] = set()
        self.region_edges[rid] = {}

    def reglue_region(self, rid: int) -> bool:
        """Recompute one region and splice its contribution; True if changed."""
        old = self.contribs[rid]
        self.structs[rid].refresh()
        new = self.structs[rid].contribution()
        if (old[0], old[1]) == (new[0], new[1]):
            self.contribs[rid] = new
            self.pseudo_members.update(new[2])
            return False
        self.counters.add(classify_update(old, new, self.qf))
        self._remove_contribution(rid)
        self._add_contribution(rid, new)
        self.counters.quickfind_relabels = self.qf.relabels
        return True

    def redefine_region(self, region: Region) -> bool:
        """Replace one region's definition (vertices/boundary/edges) and
        reglue it; used when this level's host was itself respliced below."""
        st = self.structs[region.rid]
        for v in st.vertices:
            lst = self.vertex_regions.get(v)
            if lst and region.rid in lst:
                lst.remove(region.rid)
        for b in st.boundary:
            c = self.boundary_count[b] - 1
            if c:
                self.boundary_count[b] = c
            else:
                del self.boundary_count[b]
                self.boundary_set.discard(b)
        st.vertices = list(region.vertices)
        st.boundary = list(region.boundary)
        st.edge_ids = list(region.edges)
        for v in st.vertices:
            self.vertex_regions.setdefault(v, []).append(region.rid)
        for b in st.boundary:
            self.boundary_count[b] = self.boundary_count.get(b, 0) + 1
            self.boundary_set.add(b)
        return self.reglue_region(region.rid)

    def parent_regions(self, pids=None) -> list[Region]:
        if pids is None:
            pids = list(self.group_rids)
        groups: dict[int, tuple[set, list]] = {pid: (set(), []) for pid in pids}
        for pid in pids:
            g = groups[pid]
            for rid in self.group_rids[pid]:
                g[0].update(self.registry[k] for k in self.region_nodes[rid])
                g[1].extend(self.region_edges[rid].values())
        out = []
        for pid in sorted(groups):
            verts, edges = groups[pid]
            bnd = [
                self.registry[self.labels[b]]
                for b in self.parent_boundaries.get(pid, [])
                if self.labels[b] in self.registry
            ]
            out.append(
                Region(rid=pid, vertices=sorted(verts), boundary=sorted(set(bnd)), edges=edges)
            )
        return out

    # -- node helpers ---------------------------------------------------------

    def is_boundary(self, u: int) -> bool:
        return u in self.boundary_set

    def struct_for(self, u: int) -> RegionStructure:
        rids = self.vertex_regions.get(u, [])
        for rid in rids:
            if not self.is_boundary(u):
                return self.structs[rid]
        if rids:
            return self.structs[rids[0]]
        raise ValueError(f"node {u} is in no region")

    def regions_with(self, u: int, v: int):
        for rid in self.vertex_regions.get(u, []):
            st = self.structs[rid]
            if st.has(v):
                yield st

    def rep_id(self, u: int) -> int | None:
        if self.is_boundary(u):
            return self.registry.get(self.labels[u])
        k = self.struct_for(u).rep_key(u)
        return None if k is None else self.registry[k]

    def _down(self, parent_node: int) -> tuple:
        """Map a parent cut answer down: host vertex or this-level pseudoblock."""
        lab = self.parent_labels[parent_node]
        return lab

    def _pseudo_flanks(self, lab) -> tuple[int, int]:
        a, b = lab[2]
        # flank labels are labels of this level's host vertices
        return self._host_of(a), self._host_of(b)

    def _host_of(self, lab) -> int:
        h = self._label_to_host.get(lab)
        if h is None:
            raise KeyError(f"label {lab!r} is not a host vertex here")
        return h

    # -- queries ---------------------------------------------------------------

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        for st in self.regions_with(u, v):
            if st.connected(u, v):
                return True
        au = self._boundary_anchor(u)
        av = self._boundary_anchor(v)
        if au is None or av is None:
            return False
        return self.parent.connected(
            self.registry[self.labels[au]], self.registry[self.labels[av]]
        )

    def _boundary_anchor(self, u: int) -> int | None:
        if self.is_boundary(u):
            return u
        st = self.struct_for(u)
        for b in st.boundary:
            if self.host.vertex_alive[b] and st.connected(u, b):
                return b
        return None

    def bicon(self, u: int, v: int) -> bool:
        if u == v:
            return True
        if not (self.is_boundary(u) and self.is_boundary(v)):
            for st in self.regions_with(u, v):
                if st.bicon(u, v):
                    return True
        ru, rv = self.rep_id(u), self.rep_id(v)
        if ru is None or rv is None:
            return False
        if ru == rv:
            lab = self.parent_labels[ru]
            if lab in self.pseudo_members:
                fa, fb = self._pseudo_flanks(lab)
                ra, rb = self.rep_id(fa), self.rep_id(fb)
                return ra is not None and rb is not None and self.parent.bicon(ra, rb)
            return False
        return self.parent.bicon(ru, rv)

    def first_separator(self, u: int, v: int) -> tuple:
        """("bicon",) | ("bridge",) | ("cut", w): first capacity-1 node of the
        host separating u from v, nearest to u.  Requires connected(u, v)."""
        if self.bicon(u, v):
            return ("bicon",)
        if self.host.find_edge(u, v) is not None:
            return ("bridge",)
        if self.rep_id(u) is None:
            st = self.struct_for(u)
            a = st.nr(u)
            if a is None or v == a or (
                st.has(v) and st.connected(u, v) and not st.meet_is(u, v, a)
            ):
                return st.second_node(u, v)
            r = st.second_node(u, a)
            return r if r[0] == "cut" else ("cut", a)
        if self.rep_id(v) is None:
            st = self.struct_for(v)
            b = st.nr(v)
            if b is None or u == b:
                return st.second_node(u, v)
            if self.bicon(u, b):
                return ("cut", b)
            r = self.first_separator(u, b)
            return r if r[0] == "cut" else ("cut", b)
        ru, rv = self.rep_id(u), self.rep_id(v)
        if ru == rv:
            lab = self.parent_labels[ru]
            assert lab in self.pseudo_members, "distinct vertices share a block rep"
            st = self.structs[lab[1]]
            r = st.second_node(u, v)
            assert r[0] == "cut", "pseudoblock interior pair without separator"
            return r
        r = self.parent.first_separator(ru, rv)
        if r[0] == "bridge":
            plab = self.parent_labels[rv]
            if plab not in self.pseudo_members:
                plab = self.parent_labels[ru]
            assert plab in self.pseudo_members, "parent bridge without pseudoblock"
            st = self.structs[plab[1]]
            rr = st.second_node(u, v)
            assert rr[0] == "cut", "bridge refinement without separator"
            return rr
        assert r[0] == "cut"
        plab = self.parent_labels[r[1]]
        if plab not in self.pseudo_members:
            if plab in self._label_to_host:
                rr = self._refine_chain_end(u, ru, r)
                if rr is not None:
                    return rr
                return ("cut", self._label_to_host[plab])
            # a capacity-1 bridge block: it can only flank the source side,
            # and the true separator is its far endpoint
            assert plab[0] == "b" and len(plab[2]) == 2, f"bad separator {plab!r}"
            ea, eb = (self._host_of(x) for x in plab[2])
            if self.rep_id(ea) == ru:
                return ("cut", eb)
            assert self.rep_id(eb) == ru, "separating bridge does not flank source"
            return ("cut", ea)
        # the separator is one of this level's pseudoblocks: it flanks the
        # u-side representative; refine toward the far flank in its region
        st = self.structs[plab[1]]
        fa, fb = self._pseudo_flanks(plab)
        if self.rep_id(fa) == ru:
            near, far = fa, fb
        elif self.rep_id(fb) == ru:
            near, far = fb, fa
        else:
            raise AssertionError("separating pseudoblock does not flank the source")
        rr = st.second_node(u, far)
        return rr if rr[0] == "cut" else ("cut", far)

    def _refine_chain_end(self, u: int, ru: int, r: tuple) -> tuple | None:
        """Pseudoblock-source refinement: u sits on a pseudoblock and the
        parent answer is one of its flanks."""
        ulab = self.parent_labels[ru]
        if ulab not in self.pseudo_members or r[0] != "cut":
            return None
        plab = self.parent_labels[r[1]]
        if plab not in self._label_to_host:
            return None
        w = self._label_to_host[plab]
        fa, fb = self._pseudo_flanks(ulab)
        if w not in (fa, fb):
            return None
        ra, rb = self.rep_id(fa), self.rep_id(fb)
        if ra is not None and rb is not None and self.parent.bicon(ra, rb):
            return ("cut", w)
        st = self.structs[ulab[1]]
        rr = st.second_node(u, w)
        return rr if rr[0] == "cut" else ("cut", w)


def check_samecbc(g: Graph, regions: list[Region], terminals: list[int]) -> bool:
    """Compressing the graph and compressing its patchwork relative to the
    same terminal set (a subset of the division's boundary) must agree."""
    lvl = PatchworkLevel(g, regions)
    direct_bb = BicapBC(g)
    direct = compress(direct_bb.f, sorted(direct_bb.node(s) for s in terminals))
    left = canonical_compressed(direct_bb, direct, lambda x: lvl.labels[direct_bb.back[x]])

    pw = lvl.parent_host
    pw_bb = BicapBC(pw)
    pmap = {s: lvl.registry[lvl.labels[s]] for s in terminals}
    pwc = compress(pw_bb.f, sorted(pw_bb.node(pmap[s]) for s in terminals))
    right = canonical_compressed(
        pw_bb, pwc, lambda x: lvl.parent_labels[pw_bb.back[x]]
    )
    return left == right
