"""Decremental bookkeeping: operation counters, diff classification of
compressed-forest updates, and weighted quick-find for representative sets.

Updates to a compressed forest after one host edge deletion decompose into
three primitive shapes:

  path_delete    -- a pendant or separated path of nodes disappears,
  block_split    -- a block splits into a chain of smaller blocks joined
                    at new cutvertices,
  pseudo_contract-- neighboring nodes merge into (or extend) a pseudoblock.

The classifier derives counts of these from the old and new contributions
of a region (label-keyed, so identities are stable across recomputes).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Counters:
    edge_deletes: int = 0
    induced_block_splits: int = 0
    induced_path_deletes: int = 0
    induced_contracts: int = 0
    oracle_ops: int = 0
    quickfind_relabels: int = 0

    def as_dict(self) -> dict:
        return {
            "edge_deletes": self.edge_deletes,
            "induced_block_splits": self.induced_block_splits,
            "induced_path_deletes": self.induced_path_deletes,
            "induced_contracts": self.induced_contracts,
            "oracle_ops": self.oracle_ops,
            "quickfind_relabels": self.quickfind_relabels,
        }

    def add(self, other: "Counters") -> None:
        self.edge_deletes += other.edge_deletes
        self.induced_block_splits += other.induced_block_splits
        self.induced_path_deletes += other.induced_path_deletes
        self.induced_contracts += other.induced_contracts
        self.oracle_ops += other.oracle_ops
        self.quickfind_relabels += other.quickfind_relabels

    def total(self) -> int:
        return sum(self.as_dict().values())


class WeightedQuickFind:
    """Constant-time find; union relabels the smaller class.

    Over n items every item is relabeled at most ceil(log2 n) times, so the
    relabel total is bounded by n*ceil(log2 n).
    """

    def __init__(self):
        self.label: dict = {}
        self.members: dict = {}
        self.relabels = 0

    def add(self, item) -> None:
        if item in self.label:
            return
        self.label[item] = item
        self.members[item] = {item}

    def find(self, item):
        return self.label[item]

    def union(self, a, b) -> None:
        ra, rb = self.label[a], self.label[b]
        if ra == rb:
            return
        if len(self.members[ra]) < len(self.members[rb]):
            ra, rb = rb, ra
        small = self.members.pop(rb)
        for x in small:
            self.label[x] = ra
            self.relabels += 1
        self.members[ra].update(small)


def _block_members(label) -> frozenset:
    if isinstance(label, tuple) and label[0] == "b":
        return frozenset(label[2])
    return frozenset((label,))


def classify_update(old, new, qf: WeightedQuickFind | None = None) -> Counters:
    """Induced-operation counts for one region recompute.

    old/new are contributions: (label -> cap, edge label pairs, pseudo
    label -> member labels).  When a quick-find structure is supplied,
    absorbed nodes are unioned into their absorbing class.
    """
    c = Counters()
    ocaps, oedges, omem = old
    ncaps, nedges, nmem = new
    removed = set(ocaps) - set(ncaps)
    added = set(ncaps) - set(ocaps)

    # block splits: a removed block whose members land in k >= 2 new blocks
    consumed_new = set()
    split_old = set()
    for lab in sorted(removed, key=repr):
        if not (isinstance(lab, tuple) and lab[0] == "b"):
            continue
        mem = _block_members(lab)
        parts = [
            nl
            for nl in added
            if isinstance(nl, tuple) and nl[0] == "b" and _block_members(nl) & mem
        ]
        if len(parts) >= 2:
            c.induced_block_splits += len(parts) - 1
            consumed_new.update(parts)
            split_old.add(lab)

    # contractions: an added or grown pseudoblock absorbing old nodes
    absorbed = set()
    for lab in sorted(set(nmem) - set(omem), key=repr):
        members = nmem[lab]
        eaten = []
        for rl in removed:
            if rl in omem:
                if omem[rl] <= members:
                    eaten.append(rl)
            elif _block_members(rl) <= members:
                eaten.append(rl)
        if eaten:
            # each contraction merges a node pair into the pseudoblock
            c.induced_contracts += (len(eaten) + 1) // 2
            absorbed.update(eaten)
            if qf is not None:
                qf.add(lab)
                for rl in eaten:
                    qf.add(rl)
                    qf.union(lab, rl)

    # path deletions: remaining removed nodes grouped by old adjacency
    rest = removed - absorbed - split_old
    adj: dict = {}
    for a, b in oedges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = set()
    for lab in sorted(rest, key=repr):
        if lab in seen:
            continue
        stack = [lab]
        seen.add(lab)
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):  # walk only through removed nodes
                if y in rest and y not in seen:
                    seen.add(y)
                    stack.append(y)
        c.induced_path_deletes += 1
    return c


# ---------------------------------------------------------------------------
# Memoized recompute for small regions

_MEMO: dict = {}
_MEMO_LIMIT = 50000


def region_memo_key(local, terminals) -> tuple | None:
    """Canonical key of a small region's recompute inputs, or None."""
    if local.n > 64:
        return None
    edges = tuple(
        sorted(
            (min(local.edge_u[e], local.edge_v[e]), max(local.edge_u[e], local.edge_v[e]))
            for e in range(local.m)
            if local.edge_alive[e]
        )
    )
    return (
        local.n,
        tuple(local.cap),
        tuple(local.vertex_alive),
        edges,
        tuple(terminals),
    )


def memo_get(key):
    return _MEMO.get(key)


def memo_put(key, value) -> None:
    if len(_MEMO) < _MEMO_LIMIT:
        _MEMO[key] = value


def memo_stats() -> int:
    return len(_MEMO)
