"""Block-cut forests: construction, tree-path queries, and capacity handling.

A BC forest over a graph with n vertices uses node ids 0..n-1 for vertex
nodes and n..n+k-1 for the k block nodes.  Each component is rooted at the
block containing its lowest-numbered vertex (ties by lowest block id); a
component that is an isolated vertex is rooted at that vertex node.
"""

from __future__ import annotations

from .graphs import Graph

BICONNECTED = "bicon"
BRIDGE_NIL = "nil"


class BCForest:
    def __init__(self, g: Graph):
        self.n = g.n
        self.block_members: list[list[int]] = []  # vertex ids, sorted
        self.block_edges: list[list[int]] = []  # edge ids
        self.block_cap: list[int] = []
        self.node_adj: list[list[int]] = []
        self.parent: list[int] = []
        self.depth: list[int] = []
        self.comp: list[int] = []
        self.roots: list[int] = []
        self._build(g)

    # -- construction -------------------------------------------------------

    def _build(self, g: Graph) -> None:
        n = g.n
        blocks = _tarjan_blocks(g)
        self.block_edges = blocks
        self.block_members = []
        self.block_cap = []
        for es in blocks:
            mem = set()
            for e in es:
                mem.add(g.edge_u[e])
                mem.add(g.edge_v[e])
            self.block_members.append(sorted(mem))
            self.block_cap.append(2 if len(es) >= 2 else 1)
        total = n + len(blocks)
        self.node_adj = [[] for _ in range(total)]
        for bi, mem in enumerate(self.block_members):
            b = n + bi
            for v in mem:
                self.node_adj[b].append(v)
                self.node_adj[v].append(b)
        # components over nodes (dead vertices form their own singletons)
        self.comp = [-1] * total
        self.parent = [-1] * total
        self.depth = [0] * total
        self.roots = []
        cid = 0
        for v in range(n):
            if not g.vertex_alive[v]:
                self.comp[v] = -2
                continue
            if self.comp[v] != -1:
                continue
            nodes = self._collect(v)
            # root: block containing the lowest vertex, ties lowest block id
            low = min(x for x in nodes if x < n)
            cands = [b for b in self.node_adj[low] if b >= n]
            root = min(cands) if cands else low
            self._root_component(root, cid)
            cid += 1
        self.ncomp = cid

    def _collect(self, start: int) -> list[int]:
        seen = {start}
        stack = [start]
        out = []
        while stack:
            x = stack.pop()
            out.append(x)
            for y in self.node_adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return out

    def _root_component(self, root: int, cid: int) -> None:
        self.roots.append(root)
        self.comp[root] = cid
        self.parent[root] = -1
        self.depth[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.node_adj[x]:
                if self.comp[y] == -1:
                    self.comp[y] = cid
                    self.parent[y] = x
                    self.depth[y] = self.depth[x] + 1
                    stack.append(y)

    # -- helpers -------------------------------------------------------------

    def is_block(self, node: int) -> bool:
        return node >= self.n

    def block_index(self, node: int) -> int:
        return node - self.n

    def vertex_blocks(self, v: int) -> list[int]:
        return [b for b in self.node_adj[v]]

    def same_component(self, x: int, y: int) -> bool:
        return self.comp[x] == self.comp[y] and self.comp[x] >= 0

    # -- tree-path queries ---------------------------------------------------

    def nca(self, x: int, y: int) -> int:
        if not self.same_component(x, y):
            raise ValueError(f"nodes {x},{y} in different components")
        while x != y:
            if self.depth[x] >= self.depth[y]:
                x = self.parent[x]
            else:
                y = self.parent[y]
        return x

    def meet(self, u: int, v: int, w: int) -> int:
        """Unique common node of the three pairwise tree paths."""
        a = self.nca(u, v)
        b = self.nca(u, w)
        c = self.nca(v, w)
        # the meet is the deepest of the three pairwise ncas
        best = a
        for x in (b, c):
            if self.depth[x] > self.depth[best]:
                best = x
        return best

    def first_on_path(self, x: int, y: int) -> int:
        if x == y:
            raise ValueError("first-on-path undefined for equal nodes")
        a = self.nca(x, y)
        if x != a:
            return self.parent[x]
        # x is an ancestor of y: step down from y
        z = y
        while self.parent[z] != x:
            z = self.parent[z]
        return z

    def on_path(self, x: int, y: int, z: int) -> bool:
        """True iff node z lies on the tree path x..y."""
        return self.meet(x, y, z) == z

    def path_nodes(self, x: int, y: int) -> list[int]:
        a = self.nca(x, y)
        up = []
        z = x
        while z != a:
            up.append(z)
            z = self.parent[z]
        up.append(a)
        down = []
        z = y
        while z != a:
            down.append(z)
            z = self.parent[z]
        return up + down[::-1]

    # -- biconnectivity queries ----------------------------------------------

    def biconnected(self, u: int, v: int) -> bool:
        """Rooted criterion: same non-bridge block as parent, or one is the
        parent of the non-bridge block that is the parent of the other."""
        if u == v:
            return True
        if not self.same_component(u, v):
            return False
        pu, pv = self.parent[u], self.parent[v]
        if pu == pv and pu != -1 and self.block_cap[self.block_index(pu)] == 2:
            return True
        if pu != -1 and self.parent[pu] == v and self.block_cap[self.block_index(pu)] == 2:
            return True
        if pv != -1 and self.parent[pv] == u and self.block_cap[self.block_index(pv)] == 2:
            return True
        return False

    def nearest_cutvertex(self, u: int, v: int):
        """BICONNECTED, BRIDGE_NIL, or the separating vertex nearest u."""
        if u == v:
            raise ValueError("nearest cutvertex undefined for u == v")
        if not self.same_component(u, v):
            raise ValueError(f"{u} and {v} are not connected")
        b = self.first_on_path(u, v)
        w = self.first_on_path(b, v)
        if w == v:
            if self.block_cap[self.block_index(b)] == 2:
                return BICONNECTED
            return BRIDGE_NIL
        return w

    # -- debug serialization ---------------------------------------------------

    def serialize(self) -> str:
        out = []
        for v in range(self.n):
            if self.comp[v] >= 0:
                out.append(f"v {v}")
        for bi in range(len(self.block_members)):
            mem = ",".join(map(str, self.block_members[bi]))
            out.append(f"B {self.n + bi} cap={self.block_cap[bi]} V:{mem}")
        for bi, mem in enumerate(self.block_members):
            for v in mem:
                out.append(f"e {v} {self.n + bi}")
        return "\n".join(out) + "\n"


def _tarjan_blocks(g: Graph) -> list[list[int]]:
    """Blocks as edge-id lists (iterative Tarjan over the alive subgraph)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    estack: list[int] = []
    blocks: list[list[int]] = []
    timer = 0
    eu, ev, adj = g.edge_u, g.edge_v, g.adj
    for s in range(n):
        if disc[s] != -1 or not g.vertex_alive[s]:
            continue
        # [vertex, incoming edge id, adjacency iterator index]
        stack = [[s, -1, 0]]
        disc[s] = low[s] = timer
        timer += 1
        while stack:
            top = stack[-1]
            v, pe, i = top
            av = adj[v]
            if i < len(av):
                top[2] = i + 1
                e = av[i]
                if e == pe:
                    continue
                w = eu[e]
                if w == v:
                    w = ev[e]
                if disc[w] == -1:
                    estack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append([w, e, 0])
                elif disc[w] < disc[v]:
                    estack.append(e)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if low[v] >= disc[u]:
                        # pop a block ending at tree edge pe (u,v)
                        blk = []
                        while True:
                            e = estack.pop()
                            blk.append(e)
                            if e == pe:
                                break
                        blocks.append(blk)
        assert not estack
    return blocks


def build_bc_forest(g: Graph) -> BCForest:
    if any(c != 1 for c in g.cap):
        raise ValueError("build_bc_forest expects all capacities 1")
    return BCForest(g)


# ---------------------------------------------------------------------------
# Capacity expansion (bicapacitated -> plain)


def expand_capacities(g: Graph) -> tuple[Graph, dict[int, list[int]]]:
    """Replace each capacity-2 vertex with two copies, each linked to every
    copy of its neighbors.  Returns (expansion, vertex -> copy list)."""
    eu, ev, cap = g.edge_u, g.edge_v, g.cap
    alive = g.alive_edges()
    for e in alive:
        if cap[eu[e]] == 2 and cap[ev[e]] == 2:
            raise ValueError(f"edge {e} joins two capacity-2 vertices")
    x = Graph(g.n)
    copies: dict[int, list[int]] = {}
    for v in range(g.n):
        if not g.vertex_alive[v]:
            x.kill_vertex(v)
            copies[v] = [v]
        elif cap[v] == 2:
            copies[v] = [v, x.add_vertex()]
        else:
            copies[v] = [v]
    xu, xv, xa, xadj, xset = x.edge_u, x.edge_v, x.edge_alive, x.adj, x._alive_e
    for e in alive:
        for cu in copies[eu[e]]:
            for cv in copies[ev[e]]:
                k = len(xu)
                xu.append(cu)
                xv.append(cv)
                xa.append(True)
                xset.add(k)
                xadj[cu].append(k)
                xadj[cv].append(k)
    return x, copies


class BicapBC:
    """BC forest of the capacity expansion, queried in original node terms.

    Vertex v of the bicapacitated graph maps to its first copy; answers map
    back through the copy table.  Tree queries return either an original
    vertex id (vertex nodes) or an opaque block handle >= x.n.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.x, self.copies = expand_capacities(g)
        self.f = BCForest(self.x)
        self.back = {}
        for v, cs in self.copies.items():
            for c in cs:
                self.back[c] = v

    def node(self, v: int) -> int:
        return self.copies[v][0]

    def to_original(self, node: int):
        """Original vertex id for a vertex node; block handles pass through."""
        if node < self.x.n:
            return self.back[node]
        return node

    def connected(self, u: int, v: int) -> bool:
        return self.f.same_component(self.node(u), self.node(v))

    def biconnected(self, u: int, v: int) -> bool:
        """Flow-of-2 biconnectivity (plain biconnectivity in the expansion)."""
        return self.f.biconnected(self.node(u), self.node(v))

    def second_node(self, u: int, v: int):
        """(BICONNECTED,) | (BRIDGE_NIL,) | ("cut", w) with w an original id."""
        r = self.f.nearest_cutvertex(self.node(u), self.node(v))
        if r == BICONNECTED:
            return ("bicon",)
        if r == BRIDGE_NIL:
            return ("bridge",)
        return ("cut", self.back[r])

    def meet_is(self, u: int, v: int, w: int) -> bool:
        """True iff w's node is the meet of the three vertices' tree paths."""
        m = self.f.meet(self.node(u), self.node(v), self.node(w))
        return m == self.node(w)


def bicap_biconnected(g: Graph, u: int, v: int) -> bool:
    if g.cap[u] != 1 or g.cap[v] != 1:
        raise ValueError("bicap queries require capacity-1 endpoints")
    return BicapBC(g).biconnected(u, v)
