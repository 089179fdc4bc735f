"""Compression of block-cut forests relative to a terminal set.

Given a BC forest and terminals S, every node is classified as

  critical     -- a meet of some triple of terminals (terminals included),
  contractible -- on a terminal-terminal path but not critical,
  disposable   -- on no terminal-terminal path.

The compressed forest keeps the critical nodes, replaces each maximal
contractible run whose extreme nodes are two distinct blocks with a
capacity-1 pseudoblock, and keeps other runs verbatim.  Disposable nodes
are dropped.  Representative maps record, for every vertex, its surrogate
in the compressed forest and the nearest represented vertex toward the
terminals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bcforest import BCForest, BicapBC
from .graphs import Graph

CRITICAL = 2
CONTRACTIBLE = 1
DISPOSABLE = 0


def classify(f: BCForest, terminals: list[int]) -> list[int]:
    """Status per forest node relative to terminal vertex nodes."""
    total = len(f.node_adj)
    status = [DISPOSABLE] * total
    bycomp: dict[int, list[int]] = {}
    for t in terminals:
        if f.comp[t] < 0:
            raise ValueError(f"terminal {t} not alive")
        bycomp.setdefault(f.comp[t], []).append(t)
    comp_nodes: dict[int, list[int]] = {cid: [] for cid in bycomp}
    for x in range(total):
        lst = comp_nodes.get(f.comp[x])
        if lst is not None:
            lst.append(x)
    for cid, terms in bycomp.items():
        nodes = comp_nodes[cid]
        tset = set(terms)
        k = len(tset)
        # terminal counts per subtree, children before parents
        nodes.sort(key=lambda x: -f.depth[x])
        cnt = {x: (1 if x in tset else 0) for x in nodes}
        for x in nodes:
            p = f.parent[x]
            if p != -1:
                cnt[p] += cnt[x]
        top = max(
            (x for x in nodes if cnt[x] == k),
            key=lambda x: f.depth[x],
        )
        steiner = {x for x in nodes if cnt[x] >= 1 and (x == top or cnt[x] < k)}
        for x in steiner:
            deg = sum(1 for y in f.node_adj[x] if y in steiner)
            if x in tset or deg >= 3:
                status[x] = CRITICAL
            else:
                status[x] = CONTRACTIBLE
    return status


@dataclass
class Pseudoblock:
    members: list[int]  # replaced forest nodes, in path order
    flanks: tuple[int, int]  # the two adjacent retained vertex nodes


@dataclass
class CompressedBC:
    """Compressed forest over node ids of the underlying BC forest.

    Pseudoblocks get ids -1, -2, ... to stay disjoint from forest nodes.
    """

    retained: set[int] = field(default_factory=set)
    pseudo: dict[int, Pseudoblock] = field(default_factory=dict)
    edges: set[tuple[int, int]] = field(default_factory=set)
    status: list[int] = field(default_factory=list)

    def neighbors(self, x: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == x:
                out.append(b)
            elif b == x:
                out.append(a)
        return out

    def node_count(self) -> int:
        return len(self.retained) + len(self.pseudo)


def compress(f: BCForest, terminals: list[int]) -> CompressedBC:
    status = classify(f, terminals)
    total = len(f.node_adj)
    c = CompressedBC(status=status)
    c.retained = {x for x in range(total) if status[x] == CRITICAL}
    # maximal contractible runs: components after removing critical nodes
    seen = set()
    next_pid = -1
    runs = []
    for x in range(total):
        if status[x] != CONTRACTIBLE or x in seen:
            continue
        run = _trace_run(f, status, x)
        seen.update(run)
        runs.append(run)
    for run in run_sorted(runs):
        # contract the segment between the first and last block of the run;
        # at most one vertex survives verbatim on each side
        bpos = [i for i, x in enumerate(run) if f.is_block(x)]
        if len(bpos) >= 2:
            i, j = bpos[0], bpos[-1]
            c.retained.update(run[:i])
            c.retained.update(run[j + 1 :])
            flank_a = run[i - 1] if i > 0 else _flank(f, status, run[0], run)
            if j + 1 < len(run):
                flank_b = run[j + 1]
            elif len(run) > 1:
                flank_b = _flank(f, status, run[-1], run)
            else:
                flank_b = _other_flank(f, status, run[0], flank_a)
            c.pseudo[next_pid] = Pseudoblock(
                members=run[i : j + 1], flanks=(flank_a, flank_b)
            )
            c.edges.add(_ekey(next_pid, flank_a))
            c.edges.add(_ekey(next_pid, flank_b))
            next_pid -= 1
        else:
            c.retained.update(run)
    for a, b in _forest_edges(f):
        if a in c.retained and b in c.retained:
            c.edges.add(_ekey(a, b))
    return c


def run_sorted(runs):
    return sorted(runs, key=lambda r: min(r))


def _forest_edges(f: BCForest):
    for x in range(len(f.node_adj)):
        for y in f.node_adj[x]:
            if x < y:
                yield (x, y)


def _ekey(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _trace_run(f: BCForest, status: list[int], x: int) -> list[int]:
    """The maximal contractible path through x, in path order."""

    def extend(start: int, first: int) -> list[int]:
        out = [first]
        cur, pre = first, start
        while True:
            nxt = [y for y in f.node_adj[cur] if y != pre and status[y] == CONTRACTIBLE]
            if not nxt:
                return out
            assert len(nxt) == 1, "contractible node with branching"
            out.append(nxt[0])
            cur, pre = nxt[0], cur

    dirs = [y for y in f.node_adj[x] if status[y] == CONTRACTIBLE]
    assert len(dirs) <= 2, "contractible node with branching"
    left = extend(x, dirs[0])[::-1] if dirs else []
    right = extend(x, dirs[1]) if len(dirs) > 1 else []
    return left + [x] + right


def _flank(f: BCForest, status: list[int], end: int, run: list[int]) -> int:
    cands = [y for y in f.node_adj[end] if status[y] == CRITICAL]
    assert cands, "contractible run without critical flank"
    if len(cands) == 1:
        return cands[0]
    # single-node run between two criticals: caller picks each side once
    return cands[0]


def _other_flank(f: BCForest, status: list[int], end: int, first_flank: int) -> int:
    cands = [y for y in f.node_adj[end] if status[y] == CRITICAL and y != first_flank]
    assert cands, "single-node run needs two critical flanks"
    return cands[0]


@dataclass
class RepMaps:
    rep: dict[int, int | None]  # vertex node -> compressed node id or None
    nr: dict[int, int | None]  # vertex node -> vertex node or None


def rep_maps(f: BCForest, c: CompressedBC) -> RepMaps:
    status = c.status
    in_pseudo: dict[int, int] = {}
    for pid, pb in c.pseudo.items():
        for x in pb.members:
            in_pseudo[x] = pid
    rep: dict[int, int | None] = {}
    for v in range(f.n):
        if f.comp[v] < 0:
            continue
        if v in c.retained:
            rep[v] = v
        elif v in in_pseudo:
            rep[v] = in_pseudo[v]
        else:
            hits = [
                b
                for b in f.node_adj[v]
                if status[b] != DISPOSABLE
            ]
            assert len(hits) <= 1, "disposable vertex on two non-disposable blocks"
            if hits:
                b = hits[0]
                rep[v] = in_pseudo.get(b, b)
            else:
                rep[v] = None
    # nearest represented vertex: walk outward from the terminal subtree
    nr: dict[int, int | None] = {v: None for v in rep}
    anc: dict[int, int | None] = {}
    frontier = []
    for x in range(len(f.node_adj)):
        if status[x] != DISPOSABLE:
            anc[x] = x if (x < f.n and rep.get(x) is not None) else None
            frontier.append(x)
    i = 0
    while i < len(frontier):
        x = frontier[i]
        i += 1
        for y in f.node_adj[x]:
            if y in anc:
                continue
            if y < f.n and rep.get(y) is not None:
                anc[y] = y
            else:
                anc[y] = anc[x]
            frontier.append(y)
    for v in rep:
        if rep[v] is None:
            nr[v] = anc.get(v)
    return RepMaps(rep=rep, nr=nr)
