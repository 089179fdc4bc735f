"""Split/contract trees against an explicit brute-force tree model."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decbicon.catree import (
    BCAdapter,
    CATree,
    ConnTree,
    OrderList,
    SCTree,
    WorkCounter,
    _Item,
    _rank,
)


class Model:
    """Explicit parent/children tree with split, contract, and delete."""

    def __init__(self, B):
        self.parent = {0: None}
        self.kids = {0: list(range(1, B + 1))}
        self.black = {0: False}
        self.b = {0: 0}
        for i in range(1, B + 1):
            self.parent[i] = 0
            self.kids[i] = []
            self.black[i] = True
            self.b[i] = 1
        self.next = B + 1

    def neighbors(self, u):
        out = list(self.kids[u])
        if self.parent[u] is not None:
            out.append(self.parent[u])
        return out

    def degree(self, u):
        return len(self.neighbors(u))

    def split(self, u, M):
        p = self.parent[u]
        v = self.next
        self.next += 1
        movers = (
            [c for c in self.kids[u] if c not in M]
            if (p is not None and p in M)
            else list(M)
        )
        self.parent[v] = u
        self.kids[v] = []
        self.black[v] = False
        self.b[v] = 0
        for c in movers:
            self.kids[u].remove(c)
            self.kids[v].append(c)
            self.parent[c] = v
        self.kids[u].append(v)
        return v

    def contract(self, c):
        u = self.parent[c]
        for w in self.kids[c]:
            self.parent[w] = u
            self.kids[u].append(w)
        self.kids[u].remove(c)
        self.black[u] = True
        self.b[u] += self.b[c]
        del self.parent[c], self.kids[c], self.black[c], self.b[c]

    def delete(self, c):
        self.kids[self.parent[c]].remove(c)
        self.parent[c] = None

    def root_path(self, u):
        path = [u]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path

    def ca(self, u, v):
        if u == v:
            return (u, u, u)
        pu, pv = self.root_path(u), self.root_path(v)
        if pu[-1] != pv[-1]:
            return None
        su = set(pu)
        a = next(x for x in pv if x in su)
        iu, iv = pu.index(a), pv.index(a)
        return (a, pu[iu - 1] if iu else a, pv[iv - 1] if iv else a)

    def connected(self, u, v):
        return self.root_path(u)[-1] == self.root_path(v)[-1]


def random_op(model, rng, with_delete=False):
    """One legal (kind, args) op, biased to keep white nodes available."""
    nodes = list(model.parent.keys())
    whites = [u for u in nodes if not model.black[u] and model.degree(u) >= 2]
    non_roots = [c for c in nodes if model.parent[c] is not None]
    contractable = [
        c
        for c in non_roots
        if not with_delete or model.black[c] or model.black[model.parent[c]]
    ]
    deletable = [
        c
        for c in non_roots
        if model.black[c] and model.parent[c] is not None and model.black[model.parent[c]]
    ]
    r = rng.random()
    if whites and (len(whites) <= 2 or r < 0.55 or not contractable):
        for _ in range(20):
            u = rng.choice(whites)
            k = rng.randint(1, model.degree(u) // 2)
            M = rng.sample(model.neighbors(u), k)
            if with_delete and k == 1 and not model.black[M[0]] and model.degree(M[0]) <= 2:
                continue  # the connectivity variant forbids this shape
            return ("split", u, M)
        return None
    if with_delete and deletable and r > 0.9:
        return ("delete", rng.choice(deletable))
    if contractable and len(nodes) > 2:
        return ("contract", rng.choice(contractable))
    return None


def check_shape(model, tree, ids):
    for x in model.parent:
        tp = ids[x].parent()
        mp = model.parent[x]
        assert (tp is None) == (mp is None)
        if mp is not None:
            assert tp is ids[mp]
        got = []
        c = ids[x].first_child()
        while c is not None:
            got.append(id(c))
            c = c.next_sibling()
        assert sorted(got) == sorted(id(ids[k]) for k in model.kids[x])


def check_queries(model, tree, ids, rng, k=15):
    cur = list(model.parent.keys())
    for _ in range(k):
        x, y = rng.choice(cur), rng.choice(cur)
        want = model.ca(x, y)
        assert tree.ca(ids[x], ids[y]) == tuple(ids[w] for w in want)
        if x != y:
            a, _, vp = want
            expect = ids[vp] if ids[x] is ids[a] else ids[x].parent()
            assert tree.first_on_path(ids[x], ids[y]) is expect


@pytest.mark.parametrize("cls", [SCTree, CATree])
@pytest.mark.parametrize("B,seed", [(8, 0), (8, 3), (16, 1), (32, 2), (64, 0)])
def test_split_contract_matches_model(cls, B, seed):
    rng = random.Random(seed)
    model = Model(B)
    tree = cls.init_star(B)
    ids = {i: tree.nodes[i] for i in range(B + 1)}
    done = 0
    while done < 250:
        op = random_op(model, rng)
        if op is None:
            break
        if op[0] == "split":
            _, u, M = op
            v = model.split(u, M)
            ids[v] = tree.split(ids[u], [ids[x] for x in M])
        else:
            _, c = op
            model.contract(c)
            tree.contract(ids[c])
            del ids[c]
        done += 1
        check_shape(model, tree, ids)
        check_queries(model, tree, ids, rng)
        if isinstance(tree, SCTree) and done % 25 == 0:
            tree.check_invariants(B)
    assert done >= 100


@pytest.mark.parametrize("B,seed", [(8, 0), (16, 1), (32, 0), (64, 2)])
def test_connectivity_variant_matches_model(B, seed):
    rng = random.Random(seed)
    model = Model(B)
    tree = ConnTree.init_star(B)
    ids = {i: tree.nodes[i] for i in range(B + 1)}
    done = 0
    while done < 300:
        op = random_op(model, rng, with_delete=True)
        if op is None:
            # ops ran dry (everything black or disconnected): fresh instance
            for nid, cnt in tree.relabel_counts.items():
                assert cnt <= B.bit_length()
            model = Model(B)
            tree = ConnTree.init_star(B)
            ids = {i: tree.nodes[i] for i in range(B + 1)}
            continue
        if op[0] == "split":
            _, u, M = op
            v = model.split(u, M)
            ids[v] = tree.split(ids[u], [ids[x] for x in M])
        elif op[0] == "delete":
            _, c = op
            model.delete(c)
            tree.delete(ids[c])
        else:
            _, c = op
            model.contract(c)
            tree.contract(ids[c])
            del ids[c]
        done += 1
        cur = list(model.parent.keys())
        for _ in range(12):
            x, y = rng.choice(cur), rng.choice(cur)
            assert tree.connected(ids[x], ids[y]) == model.connected(x, y)
    # every node is relocated to a new component label at most log2(B) times
    for nid, cnt in tree.relabel_counts.items():
        assert cnt <= B.bit_length()


def test_split_preconditions():
    tree = SCTree.init_star(4)
    root = tree.nodes[0]
    leaf = tree.nodes[1]
    with pytest.raises(ValueError):
        tree.split(leaf, [root])  # black node
    with pytest.raises(ValueError):
        tree.split(root, [])  # empty M
    with pytest.raises(ValueError):
        tree.split(root, tree.nodes[1:4])  # |M| > d/2
    tree2 = SCTree.init_star(4)
    with pytest.raises(ValueError):
        tree2.contract(tree2.nodes[0])  # root has no parent


def test_connectivity_variant_preconditions():
    t = ConnTree.init_star(4)
    with pytest.raises(ValueError):
        t.delete(t.nodes[0])  # root
    # white/white contraction is not allowed in the connectivity variant
    v = t.split(t.nodes[0], [t.nodes[1], t.nodes[2]])
    with pytest.raises(ValueError):
        t.delete(v)


def test_different_trees_raise():
    t = ConnTree.init_star(4)
    t.contract(t.nodes[1])  # root turns black
    t.delete(t.nodes[2])
    assert not t.connected(t.nodes[2], t.nodes[0])
    assert t.connected(t.nodes[3], t.nodes[0])
    s = SCTree.init_star(4)
    s2 = SCTree.init_star(2)
    with pytest.raises(ValueError):
        s.ca(s.nodes[0], s2.nodes[0])


def test_work_counter_totals():
    w = WorkCounter()
    w.ring_moves = 2
    w.list_ops = 3
    w.relabels = 1
    assert w.total() == 6
    assert w.as_dict()["ring_moves"] == 2


# -- order maintenance list ----------------------------------------------------


@given(st.lists(st.integers(0, 1), min_size=1, max_size=200), st.integers(0, 2**30))
@settings(max_examples=40, deadline=None)
def test_order_list_matches_reference(ops, seed):
    rng = random.Random(seed)
    ol = OrderList(WorkCounter())
    ref = []
    items = []
    for op in ops:
        if op == 0 or not items:
            it = _Item(len(items))
            if not ref or rng.random() < 0.3:
                ol.insert_first(it)
                ref.insert(0, it)
            else:
                at = rng.choice(ref)
                ol.insert_after(at, it)
                ref.insert(ref.index(at) + 1, it)
            items.append(it)
        else:
            it = rng.choice(ref)
            ol.remove(it)
            ref.remove(it)
            items.remove(it)
        assert ol.size == len(ref)
        for i in range(len(ref)):
            for j in range(i + 1, len(ref)):
                assert OrderList.order(ref[i], ref[j])
                assert not OrderList.order(ref[j], ref[i])


def test_rank_values():
    assert _rank(0) == -1
    assert _rank(1) == 0
    assert _rank(2) == 1
    assert _rank(3) == 1
    assert _rank(8) == 3


# -- the block-cut adapter -------------------------------------------------------


def chain_forest():
    """v0 - b1 - v2 - b3 - v4 (vertices black, bridge blocks white)."""
    parents = [None, 0, 1, 2, 3]
    blacks = [True, False, True, False, True]
    return BCAdapter(parents, blacks)


def test_adapter_pseudo_contract():
    ad = chain_forest()
    ad.pseudo_contract(1, 2, 3, merged=5)
    assert ad.connected(0, 4)
    # the chain collapsed: nothing separates the end vertices any more
    assert ad.nearest_cutvertex(0, 4) is None
    assert ad.ca_map[5] is ad.ca_map[1] is ad.ca_map[2] is ad.ca_map[3]


def test_adapter_path_delete():
    ad = chain_forest()
    ad.path_delete([0, 1, 2])
    assert not ad.connected(0, 2)
    assert not ad.connected(0, 4)
    assert ad.connected(2, 4)


def test_adapter_block_split():
    # star block: block 1 (white) joins vertices 0, 2, 3, 4
    ad = BCAdapter([None, 0, 1, 1, 1], [True, False, True, True, True])
    assert ad.nearest_cutvertex(3, 4) is None  # same block
    ad.block_split(1, 2, side_a=[3], new_block=5)
    # now 3 and 4 sit in different blocks joined at vertex 2
    assert ad.connected(3, 4)
    assert ad.nearest_cutvertex(3, 4) is ad.ca_map[2]
    assert ad.nearest_cutvertex(0, 3) is ad.ca_map[2]
    assert ad.nearest_cutvertex(0, 2) is None
