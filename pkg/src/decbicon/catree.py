"""Dynamic rooted trees with node splits and edge contractions.

Three cooperating structures over black/white trees:

* SCTree — heavy-path machinery: children rings with rank-sorted order,
  heavy paths as order-maintenance lists, a light tree with parent
  pointers and depth labels.  Supports split/contract plus parent,
  first_child, next_sibling, ca (characteristic ancestors) and
  first_on_path queries, with per-node light-depth-change instrumentation
  and a structural work counter.
* CATree — the same interface, but the heavy machinery only runs on the
  compressed tree (every single-child node merged with its child), kept
  in per-bar depth-ordered lists.  This is what makes total work
  O(s + B log B) instead of O((B+s) log B).
* ConnTree — the connectivity variant: split/contract plus edge deletion
  and O(1) connected queries via component ids, relabelling the side with
  smaller black weight.

BCAdapter combines a CATree (deletions ignored; first-on-path answers are
only valid for connected pairs) with a ConnTree (deletions applied) and
drives both with block-cut-forest operations: path deletion, block split
(two splits + one contract) and pseudoblock contraction (two contracts).
"""

from __future__ import annotations

_GAP = 1 << 32


class _Item:
    """Order-maintenance list element; payload is the owning tree node."""

    __slots__ = ("payload", "label", "prev", "next", "olist")

    def __init__(self, payload):
        self.payload = payload
        self.label = 0
        self.prev = None
        self.next = None
        self.olist = None


class OrderList:
    """Doubly-linked list with integer labels: O(1) order/succ/pred and
    amortized O(1) insert/delete (relabelling the whole list on label
    collision, which unbounded integer labels make vanishingly rare)."""

    __slots__ = ("first", "last", "size", "work")

    def __init__(self, work=None):
        self.first = None
        self.last = None
        self.size = 0
        self.work = work

    def _bump(self, n=1):
        if self.work is not None:
            self.work.list_ops += n

    def insert_first(self, item: _Item) -> None:
        self._bump()
        item.olist = self
        item.prev = None
        item.next = self.first
        if self.first is None:
            self.last = item
            item.label = 0
        else:
            self.first.prev = item
            item.label = self.first.label - _GAP
        self.first = item
        self.size += 1

    def insert_after(self, at: _Item, item: _Item) -> None:
        self._bump()
        assert at.olist is self
        item.olist = self
        item.prev = at
        item.next = at.next
        at.next = item
        if item.next is None:
            self.last = item
            item.label = at.label + _GAP
        else:
            item.next.prev = item
            lo, hi = at.label, item.next.label
            if hi - lo < 2:
                self._renumber()
                lo, hi = at.label, item.next.label
            item.label = (lo + hi) // 2
        self.size += 1

    def _renumber(self) -> None:
        lab = 0
        x = self.first
        while x is not None:
            x.label = lab
            lab += _GAP
            x = x.next
        self._bump(self.size)

    def remove(self, item: _Item) -> None:
        self._bump()
        assert item.olist is self
        if item.prev is None:
            self.first = item.next
        else:
            item.prev.next = item.next
        if item.next is None:
            self.last = item.prev
        else:
            item.next.prev = item.prev
        item.prev = item.next = None
        item.olist = None
        self.size -= 1

    @staticmethod
    def order(a: _Item, b: _Item) -> bool:
        """True iff a comes strictly before b (same list)."""
        assert a.olist is b.olist and a.olist is not None
        return a.label < b.label


class WorkCounter:
    """Structural work: every pointer-scale maintenance step is one unit."""

    __slots__ = ("ring_moves", "list_ops", "reinit_nodes", "index_scans", "relabels")

    def __init__(self):
        self.ring_moves = 0
        self.list_ops = 0
        self.reinit_nodes = 0
        self.index_scans = 0
        self.relabels = 0

    def total(self) -> int:
        return (
            self.ring_moves
            + self.list_ops
            + self.reinit_nodes
            + self.index_scans
            + self.relabels
        )

    def as_dict(self) -> dict:
        return {
            "ring_moves": self.ring_moves,
            "list_ops": self.list_ops,
            "reinit_nodes": self.reinit_nodes,
            "index_scans": self.index_scans,
            "relabels": self.relabels,
        }


# ---------------------------------------------------------------------------
# Child rings


class _Sent:
    """Sentinel of a child ring; the only element knowing the parent."""

    __slots__ = ("node", "next", "prev", "count", "heads", "tails")

    def __init__(self, node, indexed: bool = False):
        self.node = node
        self.next = self
        self.prev = self
        self.count = 0
        # rank -> leftmost / rightmost ring member of that rank, maintained
        # only for rank-sorted rings
        self.heads = {} if indexed else None
        self.tails = {} if indexed else None


def _ring_nodes(sent):
    x = sent.next
    while x is not sent:
        yield x
        x = x.next


class _RingNode:
    """Mixin fields shared by all tree-node classes."""

    __slots__ = ()

    def parent(self):
        r = self.in_ring
        return None if r is None else r.node

    def first_child(self):
        s = self.sent
        return None if s.next is s else s.next

    def next_sibling(self):
        nxt = self.next
        return None if isinstance(nxt, _Sent) else nxt

    def children(self):
        return list(_ring_nodes(self.sent))

    def degree(self) -> int:
        return self.sent.count + (0 if self.in_ring is None else 1)


def _detach(c, work: WorkCounter) -> None:
    h = c.in_ring.heads
    if h is not None:
        t = c.in_ring.tails
        r = _rank(c.s)
        if h.get(r) is c and t.get(r) is c:
            del h[r]
            del t[r]
        elif h.get(r) is c:
            h[r] = c.next
        elif t.get(r) is c:
            t[r] = c.prev
    c.prev.next = c.next
    c.next.prev = c.prev
    c.in_ring.count -= 1
    c.in_ring = None
    c.prev = c.next = None
    work.ring_moves += 1


def _attach_before(at, c, sent, work: WorkCounter) -> None:
    c.in_ring = sent
    c.prev = at.prev
    c.next = at
    at.prev.next = c
    at.prev = c
    sent.count += 1
    work.ring_moves += 1


# ---------------------------------------------------------------------------
# SCTree: heavy paths over the full tree


class SCNode(_RingNode):
    __slots__ = (
        "nid",
        "black",
        "b",
        "s",
        "sent",
        "in_ring",
        "prev",
        "next",
        "hp",
        "hp_item",
    )

    def __init__(self, nid, weight):
        self.nid = nid
        self.black = bool(weight)
        self.b = int(weight)
        self.s = 0
        self.sent = _Sent(self, indexed=True)
        self.in_ring = None
        self.prev = None
        self.next = None
        self.hp = None
        self.hp_item = None

    def __repr__(self):
        return f"<SCNode {self.nid}{'B' if self.black else 'W'} s={self.s}>"


class HeavyPath:
    __slots__ = ("apex", "olist", "lt_parent", "lt_depth")

    def __init__(self, work):
        self.apex = None
        self.olist = OrderList(work)
        self.lt_parent = None
        self.lt_depth = 0


def _heavy(c, p) -> bool:
    return 2 * c.s > p.s


def _rank(s: int) -> int:
    return s.bit_length() - 1  # -1 for s == 0


class SCTree:
    """Rooted black/white forest with split/contract and constant-ish-time
    parent / first_child / next_sibling / ca / first_on_path queries."""

    def __init__(self):
        self.work = WorkCounter()
        self.nodes: list[SCNode] = []
        self.ld_changes: dict[int, int] = {}
        self.last_ascent = 0

    # -- construction ---------------------------------------------------------

    @classmethod
    def init_star(cls, B: int) -> "SCTree":
        if B < 1:
            raise ValueError("a star needs at least one black leaf")
        parents = [None] + [0] * B
        blacks = [False] + [True] * B
        return cls.from_forest(parents, blacks)

    @classmethod
    def from_forest(cls, parents, blacks) -> "SCTree":
        t = cls()
        n = len(parents)
        t.nodes = [SCNode(i, blacks[i]) for i in range(n)]
        kids: list[list[int]] = [[] for _ in range(n)]
        roots = []
        for i, p in enumerate(parents):
            if p is None or p < 0:
                roots.append(i)
            else:
                kids[p].append(i)
        order = []
        stack = list(roots)
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(kids[x])
        for x in reversed(order):
            nd = t.nodes[x]
            nd.s = nd.b + sum(t.nodes[c].s for c in kids[x])
        for x in order:
            p = t.nodes[x]
            for c in sorted(kids[x], key=lambda c: (-_rank(t.nodes[c].s), c)):
                t._ring_insert(p, t.nodes[c])
            t._fix_heavy_front(p)
        for r in roots:
            t._init_subtree(t.nodes[r])
        return t

    # -- ring maintenance ------------------------------------------------------

    def _ring_insert(self, p: SCNode, c: SCNode) -> None:
        """Insert c into p's children keeping decreasing-rank order.

        The ring keeps a rank index (leftmost child per rank) so the insertion
        point is found by stepping down ranks, never by walking siblings.
        """
        r = _rank(c.s)
        h, t = p.sent.heads, p.sent.tails
        last = t.get(r)
        if last is not None:
            # extend the existing rank-r block on the right
            _attach_before(last.next, c, p.sent, self.work)
            t[r] = c
            return
        rr = r - 1
        at = None
        while rr >= -1:
            self.work.index_scans += 1
            at = h.get(rr)
            if at is not None:
                break
            rr -= 1
        _attach_before(at if at is not None else p.sent, c, p.sent, self.work)
        h[r] = c
        t[r] = c

    def _fix_heavy_front(self, p: SCNode) -> None:
        f = p.first_child()
        if f is None:
            return
        g = f.next_sibling()
        if g is not None and _heavy(g, p) and not _heavy(f, p):
            _detach(g, self.work)
            _attach_before(p.sent.next, g, p.sent, self.work)
            r = _rank(g.s)
            p.sent.heads[r] = g
            p.sent.tails.setdefault(r, g)

    def heavy_child(self, p: SCNode):
        f = p.first_child()
        if f is not None and _heavy(f, p):
            return f
        return None

    # -- heavy path init / teardown --------------------------------------------

    def _uninit_subtree(self, root: SCNode) -> None:
        stack = [(root, False)]
        while stack:
            w, done = stack.pop()
            if not done:
                stack.append((w, True))
                for c in _ring_nodes(w.sent):
                    stack.append((c, False))
                continue
            hp = w.hp
            hp.olist.remove(w.hp_item)
            if hp.apex is w:
                assert hp.olist.size == 0, "apex removed from a non-empty path"
            w.hp = None
            w.hp_item = None
            self.ld_changes[w.nid] = self.ld_changes.get(w.nid, 0) + 1
            self.work.reinit_nodes += 1

    def _init_node(self, w: SCNode) -> None:
        assert w.hp is None
        p = w.parent()
        item = _Item(w)
        if p is None or not _heavy(w, p):
            hp = HeavyPath(self.work)
            hp.apex = w
            hp.olist.insert_first(item)
            if p is not None:
                hp.lt_parent = p.hp
                hp.lt_depth = p.hp.lt_depth + 1
            w.hp = hp
        else:
            w.hp = p.hp
            w.hp.olist.insert_after(p.hp_item, item)
        w.hp_item = item
        self.work.reinit_nodes += 1

    def _init_subtree(self, root: SCNode) -> None:
        stack = [root]
        while stack:
            w = stack.pop()
            self._init_node(w)
            for c in _ring_nodes(w.sent):
                stack.append(c)

    # -- mutation ----------------------------------------------------------------

    def _new_node(self) -> SCNode:
        v = SCNode(len(self.nodes), False)
        self.nodes.append(v)
        return v

    def split(self, u: SCNode, M, _allow_black: bool = False) -> SCNode:
        M = list(M)
        p = u.parent()
        if u.black and not _allow_black:
            raise ValueError("split requires a white node")
        d = u.degree()
        if d < 2:
            raise ValueError("split requires degree >= 2")
        # internal (compressed-tree) calls are validated by their caller at
        # the uncompressed level, where the degree can be one higher
        if not _allow_black and not 1 <= len(M) <= d // 2:
            raise ValueError("split requires 1 <= |M| <= d(u)/2")
        if not M:
            raise ValueError("split requires a nonempty M")
        for c in M:
            if c is not p and c.in_ring is not u.sent:
                raise ValueError("M must be a subset of N(u)")
        v = self._new_node()
        if p is not None and p in M:
            keep = [c for c in M if c is not p]
            v.s = u.s - u.b - sum(c.s for c in keep)
            # v adopts u's whole ring, the kept children move back to u
            v.sent, u.sent = u.sent, _Sent(u, indexed=True)
            v.sent.node = v
            for c in keep:
                _detach(c, self.work)
                self._ring_insert(u, c)
        else:
            v.s = sum(c.s for c in M)
            for c in M:
                _detach(c, self.work)
                self._ring_insert(v, c)
        self._ring_insert(u, v)
        self._fix_heavy_front(u)
        self._fix_heavy_front(v)
        # heavy path bookkeeping
        c_h = self.heavy_child(v)
        if not _heavy(v, u):
            changed = [c for c in _ring_nodes(v.sent) if c is not c_h]
            for c in changed:
                self._uninit_subtree(c)
            if c_h is None:
                self._init_subtree(v)
            else:
                hp = c_h.hp
                item = _Item(v)
                hp.olist.insert_first(item)
                hp.apex = v
                v.hp, v.hp_item = hp, item
                self.work.reinit_nodes += 1
                for c in changed:
                    self._init_subtree(c)
        else:
            changed = [c_h] if (c_h is not None and not _heavy(c_h, u)) else []
            for c in changed:
                self._uninit_subtree(c)
            hp = u.hp
            item = _Item(v)
            hp.olist.insert_after(u.hp_item, item)
            v.hp, v.hp_item = hp, item
            self.work.reinit_nodes += 1
            for c in changed:
                self._init_subtree(c)
        return v

    def contract(self, c: SCNode) -> None:
        u = c.parent()
        if u is None:
            raise ValueError("cannot contract at a root")
        c_h = self.heavy_child(c)
        if not _heavy(c, u):
            changed = [w for w in _ring_nodes(c.sent) if w is not c_h]
        elif c_h is not None and not _heavy(c_h, u):
            changed = [c_h]
        else:
            changed = []
        for w in changed:
            self._uninit_subtree(w)
        # remove c from its heavy path
        hp = c.hp
        hp.olist.remove(c.hp_item)
        if hp.apex is c:
            if hp.olist.size:
                hp.apex = hp.olist.first.payload
        c.hp = None
        c.hp_item = None
        # ring surgery: merge the smaller child list into the larger
        _detach(c, self.work)
        if c.sent.count > u.sent.count:
            movers = u.children()
            u.sent, c.sent = c.sent, u.sent
            u.sent.node = u
        else:
            movers = c.children()
        for w in movers:
            _detach(w, self.work)
            self._ring_insert(u, w)
        u.black = True
        u.b += c.b
        self._fix_heavy_front(u)
        for w in changed:
            self._init_subtree(w)

    # -- queries --------------------------------------------------------------

    def _lt_ca(self, hu: HeavyPath, hv: HeavyPath):
        """(apex path, child path toward u or None, child path toward v or None)."""
        steps = 0
        cu = cv = None
        while hu.lt_depth > hv.lt_depth:
            cu, hu = hu, hu.lt_parent
            steps += 1
        while hv.lt_depth > hu.lt_depth:
            cv, hv = hv, hv.lt_parent
            steps += 1
        while hu is not hv:
            cu, hu = hu, hu.lt_parent
            cv, hv = hv, hv.lt_parent
            steps += 2
            if hu is None or hv is None:
                raise ValueError("nodes are in different trees")
        self.last_ascent = steps
        return hu, cu, cv

    def ca(self, u: SCNode, v: SCNode):
        if u is v:
            return (u, u, u)
        ha, hu1, hv1 = self._lt_ca(u.hp, v.hp)
        if hu1 is None:
            u2 = u3 = u
        else:
            u2 = hu1.apex
            u3 = u2.parent()
        if hv1 is None:
            v2 = v3 = v
        else:
            v2 = hv1.apex
            v3 = v2.parent()
        if u3 is v3:
            return (u3, u2, v2)
        if OrderList.order(u3.hp_item, v3.hp_item):
            return (u3, u2, u3.hp_item.next.payload)
        return (v3, v3.hp_item.next.payload, v2)

    def first_on_path(self, u: SCNode, v: SCNode) -> SCNode:
        if u is v:
            raise ValueError("first_on_path requires distinct nodes")
        a, _, v1 = self.ca(u, v)
        if u is a:
            return v1
        return u.parent()

    # -- invariant helpers (for tests) ------------------------------------------

    def check_invariants(self, B: int) -> None:
        for nd in self.nodes:
            if nd.hp is None:
                continue
            kids = nd.children()
            ranks = [_rank(c.s) for c in kids]
            body = ranks[1:] if kids and _heavy(kids[0], nd) else ranks
            assert all(body[i] >= body[i + 1] for i in range(len(body) - 1)), (
                f"child list of {nd} not rank-sorted"
            )
            hs = [c for c in kids if _heavy(c, nd)]
            assert len(hs) <= 1
            if hs:
                assert kids[0] is hs[0], f"heavy child of {nd} not first"
            # light depth vs maintained structures
            ell = 0
            x = nd
            while x.parent() is not None:
                if not _heavy(x, x.parent()):
                    ell += 1
                x = x.parent()
            assert ell == nd.hp.lt_depth, f"light depth mismatch at {nd}"
            if nd.s > 0:
                assert ell <= max(0, _rank(B) - _rank(nd.s) + 1), (
                    f"light depth of {nd} exceeds its size bound"
                )


# ---------------------------------------------------------------------------
# CATree: heavy machinery on the compressed tree only


class TNode(_RingNode):
    __slots__ = ("nid", "black", "b", "s", "sent", "in_ring", "prev", "next", "bar_item")

    def __init__(self, nid, black):
        self.nid = nid
        self.black = black
        self.b = 1 if black else 0
        self.s = 0
        self.sent = _Sent(self)
        self.in_ring = None
        self.prev = None
        self.next = None
        self.bar_item = None

    def bar(self):
        return self.bar_item.olist.bar

    def __repr__(self):
        return f"<TNode {self.nid}{'B' if self.black else 'W'}>"


# OrderList gains a back-reference slot for bars
class _BarList(OrderList):
    __slots__ = ("bar",)


class _Bar:
    """A maximal single-child chain of the full tree: one compressed node."""

    __slots__ = ("olist", "apex", "scnode")

    def __init__(self, work):
        self.olist = _BarList(work)
        self.olist.bar = self
        self.apex = None
        self.scnode = None


class CATree:
    """Split/contract tree where ca machinery runs on the compressed tree."""

    def __init__(self):
        self.work = WorkCounter()
        self.nodes: list[TNode] = []
        self.sc = SCTree()
        self._sc2bar: dict[int, _Bar] = {}

    @classmethod
    def init_star(cls, B: int) -> "CATree":
        if B < 1:
            raise ValueError("a star needs at least one black leaf")
        parents = [None] + [0] * B
        blacks = [False] + [True] * B
        return cls.from_forest(parents, blacks)

    @classmethod
    def from_forest(cls, parents, blacks) -> "CATree":
        t = cls()
        n = len(parents)
        t.nodes = [TNode(i, blacks[i]) for i in range(n)]
        kids: list[list[int]] = [[] for _ in range(n)]
        roots = []
        for i, p in enumerate(parents):
            if p is None or p < 0:
                roots.append(i)
            else:
                kids[p].append(i)
        order = []
        stack = list(roots)
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(kids[x])
        for x in reversed(order):
            nd = t.nodes[x]
            nd.s = nd.b + sum(t.nodes[c].s for c in kids[x])
        for x in order:
            for c in kids[x]:
                _attach_before(t.nodes[x].sent, t.nodes[c], t.nodes[x].sent, t.work)
        # build bars: walk each tree, cutting at multi-child nodes
        sc_parents: list = []
        sc_blacks: list = []
        bars: list[_Bar] = []

        def new_bar():
            bar = _Bar(t.work)
            bars.append(bar)
            return bar

        bar_of_t: dict[int, _Bar] = {}
        for x in order:
            nd = t.nodes[x]
            p = nd.parent()
            if p is not None and p.sent.count == 1:
                bar = bar_of_t[p.nid]
                item = _Item(nd)
                bar.olist.insert_after(p.bar_item, item)
                nd.bar_item = item
            else:
                bar = new_bar()
                item = _Item(nd)
                bar.olist.insert_first(item)
                bar.apex = nd
                nd.bar_item = item
            bar_of_t[x] = bar
        # compressed forest topology + black weights
        bar_index = {id(bar): i for i, bar in enumerate(bars)}
        sc_parents = [None] * len(bars)
        sc_weights = [0] * len(bars)
        for bar in bars:
            apex = bar.apex
            p = apex.parent()
            i = bar_index[id(bar)]
            if p is not None:
                sc_parents[i] = bar_index[id(bar_of_t[p.nid])]
            total = 0
            it = bar.olist.first
            while it is not None:
                total += it.payload.b
                it = it.next
            sc_weights[i] = total
        t.sc = SCTree.from_forest(sc_parents, sc_weights)
        for bar in bars:
            scn = t.sc.nodes[bar_index[id(bar)]]
            bar.scnode = scn
            t._sc2bar[scn.nid] = bar
        return t

    def _new_bar(self) -> _Bar:
        return _Bar(self.work)

    # -- mutation ---------------------------------------------------------------

    def _new_node(self) -> TNode:
        v = TNode(len(self.nodes), False)
        self.nodes.append(v)
        return v

    def split(self, u: TNode, M) -> TNode:
        M = list(M)
        p = u.parent()
        if u.black:
            raise ValueError("split requires a white node")
        d = u.degree()
        if d < 2:
            raise ValueError("split requires degree >= 2")
        if not 1 <= len(M) <= d // 2:
            raise ValueError("split requires 1 <= |M| <= d(u)/2")
        for c in M:
            if c is not p and c.in_ring is not u.sent:
                raise ValueError("M must be a subset of N(u)")
        v = self._new_node()
        if len(M) == 1:
            c = M[0]
            if c is p:
                v.s = u.s
                v.sent, u.sent = u.sent, _Sent(u)
                v.sent.node = v
                _attach_before(u.sent, v, u.sent, self.work)
                bar = u.bar()
                item = _Item(v)
                bar.olist.insert_after(u.bar_item, item)
                v.bar_item = item
            else:
                v.s = c.s
                _detach(c, self.work)
                _attach_before(v.sent, c, v.sent, self.work)
                _attach_before(u.sent, v, u.sent, self.work)
                if c.bar() is u.bar():
                    bar = u.bar()
                    item = _Item(v)
                    bar.olist.insert_after(u.bar_item, item)
                    v.bar_item = item
                else:
                    bar = c.bar()
                    item = _Item(v)
                    bar.olist.insert_first(item)
                    bar.apex = v
                    v.bar_item = item
            return v
        # |M| > 1: mirrored split in the compressed tree
        u_bar = u.bar()
        sc_M = []
        for c in M:
            if c is p:
                sc_M.append(u_bar.scnode.parent())
            else:
                sc_M.append(c.bar().scnode)
        if p is not None and p in M:
            keep = [c for c in M if c is not p]
            v.s = u.s - sum(c.s for c in keep)
            v.sent, u.sent = u.sent, _Sent(u)
            v.sent.node = v
            for c in keep:
                _detach(c, self.work)
                _attach_before(u.sent, c, u.sent, self.work)
        else:
            v.s = sum(c.s for c in M)
            for c in M:
                _detach(c, self.work)
                _attach_before(v.sent, c, v.sent, self.work)
        _attach_before(u.sent, v, u.sent, self.work)
        sc_v = self.sc.split(u_bar.scnode, sc_M, _allow_black=True)
        bar = self._new_bar()
        bar.scnode = sc_v
        self._sc2bar[sc_v.nid] = bar
        item = _Item(v)
        bar.olist.insert_first(item)
        bar.apex = v
        v.bar_item = item
        return v

    def contract(self, c: TNode) -> None:
        u = c.parent()
        if u is None:
            raise ValueError("cannot contract at a root")
        if c.sent.count == 1:
            bar = c.bar()
            bar.olist.remove(c.bar_item)
            if bar.apex is c:
                bar.apex = bar.olist.first.payload
        elif u.sent.count == 1:
            bar = c.bar()
            bar.olist.remove(c.bar_item)
            assert bar.apex is not c
        else:
            bar = c.bar()
            assert bar.olist.size == 1 and bar.apex is c
            self.sc.contract(bar.scnode)
            del self._sc2bar[bar.scnode.nid]
        c.bar_item = None
        _detach(c, self.work)
        if c.sent.count > u.sent.count:
            movers = u.children()
            u.sent, c.sent = c.sent, u.sent
            u.sent.node = u
        else:
            movers = c.children()
        for w in movers:
            _detach(w, self.work)
            _attach_before(u.sent, w, u.sent, self.work)
        u.black = True
        u.b += c.b
        # a contract can leave u with a single child in a different bar:
        # the compressed-tree invariant then requires merging the two bars
        if u.sent.count == 1:
            w = u.first_child()
            if w.bar() is not u.bar():
                self._merge_bars(u.bar(), w.bar())

    def _merge_bars(self, top: _Bar, bot: _Bar) -> None:
        """Concatenate the chain of bar `bot` below the chain of bar `top`,
        contracting the corresponding edge of the compressed tree."""
        self.sc.contract(bot.scnode)
        del self._sc2bar[bot.scnode.nid]
        if top.olist.size >= bot.olist.size:
            at = top.olist.last
            it = bot.olist.first
            while it is not None:
                nxt = it.next
                bot.olist.remove(it)
                top.olist.insert_after(at, it)
                at = it
                it = nxt
        else:
            # move the shorter top chain in front of the longer bottom one,
            # then let the surviving bar adopt the bottom list wholesale
            it = top.olist.last
            while it is not None:
                prv = it.prev
                top.olist.remove(it)
                bot.olist.insert_first(it)
                it = prv
            top.olist, bot.olist = bot.olist, top.olist
            top.olist.bar = top
            # top.apex is unchanged: its item now heads the adopted list

    # -- queries -----------------------------------------------------------------

    def ca(self, u: TNode, v: TNode):
        if u is v:
            return (u, u, u)
        sc_a, sc_u1, sc_v1 = self.sc.ca(u.bar().scnode, v.bar().scnode)
        bar_a = self._sc2bar[sc_a.nid]
        if sc_u1 is sc_a:
            u2 = u3 = u
        else:
            u2 = self._sc2bar[sc_u1.nid].apex
            u3 = u2.parent()
        if sc_v1 is sc_a:
            v2 = v3 = v
        else:
            v2 = self._sc2bar[sc_v1.nid].apex
            v3 = v2.parent()
        if u3 is v3:
            return (u3, u2, v2)
        if OrderList.order(u3.bar_item, v3.bar_item):
            return (u3, u2, u3.bar_item.next.payload)
        return (v3, v3.bar_item.next.payload, v2)

    def first_on_path(self, u: TNode, v: TNode) -> TNode:
        if u is v:
            raise ValueError("first_on_path requires distinct nodes")
        a, _, v1 = self.ca(u, v)
        if u is a:
            return v1
        return u.parent()

    def total_work(self) -> int:
        return self.work.total() + self.sc.work.total()


# ---------------------------------------------------------------------------
# ConnTree: the connectivity variant


class ConnNode(_RingNode):
    __slots__ = ("nid", "black", "b", "cid", "sent", "in_ring", "prev", "next")

    def __init__(self, nid, black):
        self.nid = nid
        self.black = black
        self.b = 1 if black else 0
        self.cid = 0
        self.sent = _Sent(self)
        self.in_ring = None
        self.prev = None
        self.next = None

    def __repr__(self):
        return f"<ConnNode {self.nid}{'B' if self.black else 'W'}>"


class ConnTree:
    """Split/contract/delete with O(1) connected queries; the side of each
    deletion with smaller black weight gets a fresh component id."""

    def __init__(self):
        self.work = WorkCounter()
        self.nodes: list[ConnNode] = []
        self.comp_b: dict[int, int] = {}
        self._next_cid = 0
        self.relabel_counts: dict[int, int] = {}

    @classmethod
    def init_star(cls, B: int) -> "ConnTree":
        if B < 1:
            raise ValueError("a star needs at least one black leaf")
        parents = [None] + [0] * B
        blacks = [False] + [True] * B
        return cls.from_forest(parents, blacks)

    @classmethod
    def from_forest(cls, parents, blacks) -> "ConnTree":
        t = cls()
        n = len(parents)
        t.nodes = [ConnNode(i, blacks[i]) for i in range(n)]
        roots = []
        for i, p in enumerate(parents):
            if p is None or p < 0:
                roots.append(i)
            else:
                _attach_before(t.nodes[p].sent, t.nodes[i], t.nodes[p].sent, t.work)
        for r in roots:
            cid = t._fresh_cid()
            total = 0
            stack = [t.nodes[r]]
            while stack:
                x = stack.pop()
                x.cid = cid
                total += x.b
                stack.extend(_ring_nodes(x.sent))
            t.comp_b[cid] = total
        return t

    def _fresh_cid(self) -> int:
        self._next_cid += 1
        return self._next_cid

    def _new_node(self) -> ConnNode:
        v = ConnNode(len(self.nodes), False)
        self.nodes.append(v)
        return v

    def split(self, u: ConnNode, M) -> ConnNode:
        M = list(M)
        p = u.parent()
        if u.black:
            raise ValueError("split requires a white node")
        d = u.degree()
        if d < 2:
            raise ValueError("split requires degree >= 2")
        if not 1 <= len(M) <= d // 2:
            raise ValueError("split requires 1 <= |M| <= d(u)/2")
        if len(M) == 1 and not M[0].black and M[0].degree() <= 2:
            raise ValueError("split would create adjacent white degree-2 nodes")
        for c in M:
            if c is not p and c.in_ring is not u.sent:
                raise ValueError("M must be a subset of N(u)")
        v = self._new_node()
        v.cid = u.cid
        if p is not None and p in M:
            keep = [c for c in M if c is not p]
            v.sent, u.sent = u.sent, _Sent(u)
            v.sent.node = v
            for c in keep:
                _detach(c, self.work)
                _attach_before(u.sent, c, u.sent, self.work)
        else:
            for c in M:
                _detach(c, self.work)
                _attach_before(v.sent, c, v.sent, self.work)
        _attach_before(u.sent, v, u.sent, self.work)
        return v

    def contract(self, c: ConnNode) -> None:
        u = c.parent()
        if u is None:
            raise ValueError("cannot contract at a root")
        if not (c.black or u.black):
            raise ValueError("contract requires a black endpoint")
        _detach(c, self.work)
        if c.sent.count > u.sent.count:
            movers = u.children()
            u.sent, c.sent = c.sent, u.sent
            u.sent.node = u
        else:
            movers = c.children()
        for w in movers:
            _detach(w, self.work)
            _attach_before(u.sent, w, u.sent, self.work)
        u.black = True
        u.b += c.b

    def delete(self, c: ConnNode) -> None:
        u = c.parent()
        if u is None:
            raise ValueError("cannot delete at a root")
        if not (c.black and u.black):
            raise ValueError("delete requires both endpoints black")
        old = u.cid
        _detach(c, self.work)
        # enumerate both sides in parallel; the exhausted one is node-smaller
        g1, got1 = self._walker(c), []
        g2, got2 = self._walker(u), []
        done1 = done2 = False
        while not (done1 or done2):
            done1 = self._step(g1, got1)
            if done1:
                break
            done2 = self._step(g2, got2)
        if done1:
            side, b_side = got1, sum(x.b for x in got1)
        else:
            side, b_side = got2, sum(x.b for x in got2)
        b_other = self.comp_b[old] - b_side
        if b_side > b_other:
            # relabel the black-lighter other side instead
            side = list(self._walker(u if done1 else c))
            b_side, b_other = b_other, b_side
        fresh = self._fresh_cid()
        for x in side:
            x.cid = fresh
            self.relabel_counts[x.nid] = self.relabel_counts.get(x.nid, 0) + 1
            self.work.relabels += 1
        self.comp_b[fresh] = b_side
        self.comp_b[old] = b_other

    @staticmethod
    def _walker(start: ConnNode):
        stack = [start]
        seen = {id(start)}
        while stack:
            x = stack.pop()
            yield x
            nbrs = list(_ring_nodes(x.sent))
            p = x.parent()
            if p is not None:
                nbrs.append(p)
            for y in nbrs:
                if id(y) not in seen:
                    seen.add(id(y))
                    stack.append(y)

    def _step(self, gen, acc) -> bool:
        try:
            acc.append(next(gen))
            self.work.ring_moves += 1
            return False
        except StopIteration:
            return True

    def connected(self, u: ConnNode, v: ConnNode) -> bool:
        return u.cid == v.cid


# ---------------------------------------------------------------------------
# BCAdapter: drive the combined pair with block-cut-forest operations


class BCAdapter:
    """Combined pair over one colored forest: a CATree that ignores
    deletions (its first-on-path answers are valid exactly for connected
    pairs) and a ConnTree that applies them.

    External node ids are stable: operations that merge structure nodes
    re-point the surviving id.  Vertices are black, blocks white.
    """

    def __init__(self, parents, blacks):
        self.ca_tree = CATree.from_forest(parents, blacks)
        self.conn_tree = ConnTree.from_forest(parents, blacks)
        self.ca_map = {i: self.ca_tree.nodes[i] for i in range(len(parents))}
        self.conn_map = {i: self.conn_tree.nodes[i] for i in range(len(parents))}
        self._next_id = len(parents)

    def _fresh_id(self) -> int:
        self._next_id += 1
        return self._next_id - 1

    # -- the three BC operations ---------------------------------------------

    def path_delete(self, chain: list[int]) -> None:
        """Delete a chain x, m1, ..., mk, y whose internal nodes all have
        degree 2: the internals are contracted away and the surviving x-y
        edge is deleted in the connectivity structure (the ca structure
        ignores the deletion; its answers stay valid for connected pairs)."""
        assert len(chain) >= 2
        x, y = chain[0], chain[-1]
        self._collapse_chain(self.ca_tree, self.ca_map, chain)
        self._collapse_chain(self.conn_tree, self.conn_map, chain)
        cx, cy = self.conn_map[x], self.conn_map[y]
        child = cx if cx.parent() is cy else cy
        assert child.parent() is (cy if child is cx else cx)
        self.conn_tree.delete(child)
        for nid in chain[1:-1]:
            self.ca_map.pop(nid, None)
            self.conn_map.pop(nid, None)

    def _collapse_chain(self, tree, nmap, chain) -> None:
        alive = [nmap[i] for i in chain]
        while len(alive) > 2:
            done = False
            for i in range(1, len(alive) - 1):
                nd = alive[i]
                if nd.parent() is alive[i - 1] or nd.parent() is alive[i + 1]:
                    tree.contract(nd)
                    alive.pop(i)
                    done = True
                    break
            if done:
                continue
            # only the top of the path is internal: alive == [x, apex, y]
            # with both endpoints children of the apex; the apex absorbs x
            assert len(alive) == 3
            apex = alive[1]
            assert alive[0].parent() is apex and alive[2].parent() is apex
            tree.contract(alive[0])
            nmap[chain[0]] = apex  # the merged node now answers as x
            alive = [apex, alive[2]]

    def block_split(self, u: int, v: int, side_a: list[int], new_block: int) -> None:
        """Split white block u at black neighbor vertex v into two blocks
        joined through v, with the neighbors in side_a on one side and the
        rest on the other.  Afterwards new_block names the side_a block and
        u names the other; exactly two splits and one contract per tree."""
        for tree, nmap in ((self.ca_tree, self.ca_map), (self.conn_tree, self.conn_map)):
            bu = nmap[u]
            bv = nmap[v]
            a_nodes = [nmap[x] for x in side_a]
            p = bu.parent()
            d = bu.degree()
            move = {id(x) for x in a_nodes} | {id(bv)}
            m_direct = [x for x in a_nodes if x is not p] + [bv]
            if p is not None and id(p) in move:
                m_direct.append(p)
            if 2 * len(m_direct) <= d:
                w1 = tree.split(bu, m_direct)
            else:
                comp = [c for c in bu.children() if id(c) not in move]
                if p is not None and id(p) not in move:
                    comp.append(p)
                w1 = tree.split(bu, comp)
            if bv.parent() is w1:
                # w1 hosts side_a and v; pull side_a out below a fresh block
                kids_a = [x for x in a_nodes if x.parent() is w1]
                if 2 * len(kids_a) <= w1.degree():
                    w2 = tree.split(w1, kids_a)
                else:
                    w2 = tree.split(w1, [w1.parent(), bv])
                tree.contract(bv)  # v dissolves into w1, which turns black
                nmap[v] = w1
                nmap[new_block] = w2
                # u keeps its id for the other side
            else:
                # side_a (with any parent) stayed on u; w1 hosts the rest
                kids_a = [x for x in a_nodes if x.parent() is bu]
                if not kids_a:
                    x1 = tree.split(bu, [p])  # moves all children: just v, w1
                elif 4 <= bu.degree():
                    x1 = tree.split(bu, [bv, w1])
                else:
                    # rootish block too small to pull {v, w1} out: move the
                    # side_a children instead and dissolve v into u itself
                    x2 = tree.split(bu, kids_a)
                    tree.contract(bv)  # u turns black and becomes v
                    nmap[v] = bu
                    nmap[new_block] = x2
                    nmap[u] = w1
                    continue
                tree.contract(bv)  # v dissolves into x1
                nmap[v] = x1
                nmap[new_block] = bu
                nmap[u] = w1

    def pseudo_contract(self, a: int, m: int, b: int, merged: int) -> None:
        """Contract the degree-2 chain a-m-b (m black) into one black node."""
        for tree, nmap in ((self.ca_tree, self.ca_map), (self.conn_tree, self.conn_map)):
            na, nm, nb = nmap[a], nmap[m], nmap[b]
            ordered = self._chain_orient(na, nm, nb)
            top = ordered[0]
            for nd in ordered[1:]:
                tree.contract(nd)
            for key in (a, m, b, merged):
                nmap[key] = top

    @staticmethod
    def _chain_orient(na, nm, nb):
        """Return the chain nodes ordered root-most first."""
        if nm.parent() is na and nb.parent() is nm:
            return [na, nm, nb]
        if nm.parent() is nb and na.parent() is nm:
            return [nb, nm, na]
        if na.parent() is nm and nb.parent() is nm:
            return [nm, na, nb]
        raise ValueError("nodes do not form a chain")

    # -- queries ------------------------------------------------------------

    def connected(self, u: int, v: int) -> bool:
        return self.conn_tree.connected(self.conn_map[u], self.conn_map[v])

    def first_on_path(self, u: int, v: int):
        w = self.ca_tree.first_on_path(self.ca_map[u], self.ca_map[v])
        return w

    def nearest_cutvertex(self, u: int, v: int):
        """Second node on the u-v path: the node object separating u from v,
        or None when u,v share a block (Corollary-style double hop)."""
        w1 = self.ca_tree.first_on_path(self.ca_map[u], self.ca_map[v])
        if w1 is self.ca_map[v]:
            return None
        w2 = self.ca_tree.first_on_path(w1, self.ca_map[v])
        if w2 is self.ca_map[v]:
            return None
        return w2
