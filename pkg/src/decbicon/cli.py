"""Command-line driver: run deletion/query traces against the engine,
verify against the brute-force oracle, benchmark counter growth, and
generate seeded instances.

Subcommands: run, verify, bench, gen, selftest.  All output is
deterministic given the inputs and --seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import oracle
from .bcforest import BICONNECTED, BRIDGE_NIL
from .engine import Engine
from .graphs import (
    DELETE_EDGE,
    DELETE_VERTEX,
    QUERY,
    QUERY_KINDS,
    DivisionPair,
    Graph,
    ParseError,
    Region,
    Trace,
    gen_grid,
    gen_nested_grid_pair,
    load_division,
    load_graph,
    load_trace,
    serialize_division,
    serialize_graph,
    serialize_trace,
    single_region_division,
)


def _parse_grid(spec: str):
    """WxH:t1:t2 -> (w, h, t1, t2)."""
    try:
        dims, t1, t2 = spec.split(":")
        w, h = dims.lower().split("x")
        return int(w), int(h), int(t1), int(t2)
    except ValueError:
        raise SystemExit(f"bad --grid spec {spec!r}; expected WxH:t1:t2")


def _load_instance(args):
    """(graph, DivisionPair) from --grid or from --graph/--division files."""
    if args.grid:
        w, h, t1, t2 = _parse_grid(args.grid)
        return gen_grid(w, h), gen_nested_grid_pair(w, h, t1, t2)
    if not args.graph or not args.division:
        raise SystemExit("need either --grid or both --graph and --division")
    try:
        with open(args.graph) as fh:
            g = load_graph(fh.read())
        with open(args.division) as fh:
            fine = load_division(fh.read())
        if args.division2:
            with open(args.division2) as fh:
                coarse = load_division(fh.read())
        else:
            coarse = None
    except ParseError as exc:
        raise SystemExit(str(exc))
    if coarse is None:
        coarse = single_region_division(g)
        nesting = {coarse[0].rid: [r.rid for r in fine]}
    else:
        nesting = _infer_nesting(coarse, fine)
    r1 = max((len(r.vertices) for r in coarse), default=1)
    s1 = max((len(r.boundary) for r in coarse), default=0)
    r2 = max((len(r.vertices) for r in fine), default=1)
    s2 = max((len(r.boundary) for r in fine), default=0)
    return g, DivisionPair(coarse, fine, r1, s1, r2, s2, nesting)


def _infer_nesting(coarse, fine):
    """Assign each fine region to the coarse region containing its edges."""
    owner = {}
    for a in coarse:
        for e in a.edges:
            owner[e] = a.rid
    nesting = {a.rid: [] for a in coarse}
    for r in fine:
        if not r.edges:
            nesting[coarse[0].rid].append(r.rid)
            continue
        aid = owner.get(r.edges[0])
        if aid is None or any(owner.get(e) != aid for e in r.edges):
            raise SystemExit(
                f"fine region {r.rid} does not nest inside one coarse region"
            )
        nesting[aid].append(r.rid)
    return nesting


def gen_trace(g: Graph, seed: int, query_rate: int = 2) -> Trace:
    """Seeded full-deletion trace with queries after every deletion."""
    rng = random.Random(seed)
    events = []
    edges = [e for e in range(g.m) if g.edge_alive[e]]
    rng.shuffle(edges)
    alive = [v for v in range(g.n) if g.vertex_alive[v]]
    for e in edges:
        events.append((DELETE_EDGE, g.edge_u[e], g.edge_v[e]))
        for _ in range(query_rate):
            kind = rng.choice(QUERY_KINDS)
            u, v = rng.choice(alive), rng.choice(alive)
            events.append((QUERY, kind, u, v))
    return Trace(events)


def run_trace(eng: Engine, trace: Trace, emit) -> int:
    """Feed a trace to the engine; emit one line per query; return #events."""
    for ev in trace.events:
        if ev[0] == DELETE_EDGE:
            try:
                eng.delete_edge(ev[1], ev[2])
            except ValueError:
                pass  # already gone (parallel edge or repeated delete)
        elif ev[0] == DELETE_VERTEX:
            eng.delete_vertex(ev[1])
        else:
            emit(answer_query(eng, ev[1], ev[2], ev[3]))
    return len(trace.events)


def answer_query(eng: Engine, kind: str, u: int, v: int) -> str:
    if kind == "conn":
        return "1" if eng.connected(u, v) else "0"
    if kind == "bicon":
        return "1" if eng.biconnected(u, v) else "0"
    if kind == "2ec":
        return "1" if eng.two_edge_connected(u, v) else "0"
    if kind == "cut":
        if u == v:
            return "bicon"
        if not eng.connected(u, v):
            return "nil"
        w = eng.nearest_cutvertex(u, v)
        if w == BICONNECTED:
            return "bicon"
        if w == BRIDGE_NIL:
            return "nil"
        return f"cut {w}"
    if kind == "bridge":
        if u == v or not eng.connected(u, v):
            return "none"
        e = eng.nearest_bridge(u, v)
        if e is None:
            return "none"
        g = eng.g
        return f"bridge {g.edge_u[e]} {g.edge_v[e]}"
    raise SystemExit(f"unknown query kind {kind!r}")


def oracle_answer(g: Graph, kind: str, u: int, v: int) -> str:
    if kind == "conn":
        return "1" if oracle.o_connected(g, u, v) else "0"
    if kind == "bicon":
        return "1" if oracle.o_biconnected(g, u, v) else "0"
    if kind == "2ec":
        return "1" if oracle.o_2ec(g, u, v) else "0"
    if kind == "cut":
        if u == v:
            return "bicon"
        if not oracle.o_connected(g, u, v):
            return "nil"
        w = oracle.o_nearest_cut(g, u, v)
        if w == BICONNECTED:
            return "bicon"
        if w == BRIDGE_NIL:
            return "nil"
        return f"cut {w}"
    if kind == "bridge":
        if u == v or not oracle.o_connected(g, u, v):
            return "none"
        e = oracle.o_nearest_bridge(g, u, v)
        if e is None:
            return "none"
        return f"bridge {g.edge_u[e]} {g.edge_v[e]}"
    raise SystemExit(f"unknown query kind {kind!r}")


def _get_trace(args, g: Graph) -> Trace:
    if args.trace:
        try:
            with open(args.trace) as fh:
                return load_trace(fh.read())
        except ParseError as exc:
            raise SystemExit(str(exc))
    return gen_trace(g, args.seed)


def _open_out(args):
    if args.out:
        return open(args.out, "w")
    return sys.stdout


def cmd_run(args) -> int:
    g, pair = _load_instance(args)
    trace = _get_trace(args, g)
    eng = Engine(g.copy(), pair, levels=args.levels)
    out = _open_out(args)
    try:
        run_trace(eng, trace, lambda s: print(s, file=out))
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_verify(args) -> int:
    g, pair = _load_instance(args)
    trace = _get_trace(args, g)
    engines = {
        "levels=3": Engine(g.copy(), pair, levels=3),
        "levels=1": Engine(g.copy(), pair, levels=1),
    }
    go = g.copy()
    queries = 0
    for idx, ev in enumerate(trace.events):
        if ev[0] == DELETE_EDGE:
            e = go.find_edge(ev[1], ev[2])
            if e is not None:
                go.delete_edge(e)
            for eng in engines.values():
                try:
                    eng.delete_edge(ev[1], ev[2])
                except ValueError:
                    pass
        elif ev[0] == DELETE_VERTEX:
            go.delete_vertex(ev[1])
            for eng in engines.values():
                eng.delete_vertex(ev[1])
        else:
            _, kind, u, v = ev
            queries += 1
            want = oracle_answer(go, kind, u, v)
            for name, eng in engines.items():
                got = answer_query(eng, kind, u, v)
                if got != want:
                    print(
                        f"divergence at event {idx}: Q {kind} {u} {v}: "
                        f"{name} answered {got!r}, oracle says {want!r}"
                    )
                    return 1
    print(f"ok: {len(trace.events)} events, {queries} queries agree")
    return 0


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    records = []
    size = 8
    for step in range(args.steps):
        w = h = size
        g = gen_grid(w, h)
        pair = gen_nested_grid_pair(w, h, 4, 2)
        eng = Engine(g.copy(), pair, levels=3, aux=False)
        edges = [e for e in range(g.m) if g.edge_alive[e]]
        rng.shuffle(edges)
        for e in edges:
            eng.delete_edge_id(e)
            u, v = rng.randrange(g.n), rng.randrange(g.n)
            eng.connected(u, v)
            if u != v and eng.connected(u, v):
                eng.nearest_cutvertex(u, v)
        rec = {"m": g.m, "n": g.n, "counters": dict(eng.counters())}
        records.append(rec)
        size *= 2
    report = {"records": records, "growth": []}
    for a, b in zip(records, records[1:]):
        ratios = {}
        for key, val in b["counters"].items():
            base = a["counters"].get(key, 0)
            ratios[key] = round(val / base, 3) if base else None
        report["growth"].append({"m_ratio": b["m"] / a["m"], "ratios": ratios})
    out = _open_out(args)
    try:
        json.dump(report, out, indent=2, sort_keys=True)
        out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_gen(args) -> int:
    if not args.grid:
        raise SystemExit("gen requires --grid WxH:t1:t2")
    w, h, t1, t2 = _parse_grid(args.grid)
    g = gen_grid(w, h)
    pair = gen_nested_grid_pair(w, h, t1, t2)
    trace = gen_trace(g, args.seed)
    prefix = args.out or f"grid{w}x{h}"
    with open(prefix + ".graph", "w") as fh:
        fh.write(serialize_graph(g))
    with open(prefix + ".div1", "w") as fh:
        fh.write(serialize_division(pair.fine))
    with open(prefix + ".div2", "w") as fh:
        fh.write(serialize_division(pair.coarse))
    with open(prefix + ".trace", "w") as fh:
        fh.write(serialize_trace(trace))
    print(f"wrote {prefix}.graph/.div1/.div2/.trace")
    return 0


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    w = h = 6
    g = gen_grid(w, h)
    pair = gen_nested_grid_pair(w, h, 2, 2)
    trace = gen_trace(g, rng.randrange(1 << 30))
    eng = Engine(g.copy(), pair, levels=2)
    go = g.copy()
    for ev in trace.events:
        if ev[0] == DELETE_EDGE:
            e = go.find_edge(ev[1], ev[2])
            if e is not None:
                go.delete_edge(e)
            try:
                eng.delete_edge(ev[1], ev[2])
            except ValueError:
                pass
        elif ev[0] == QUERY:
            _, kind, u, v = ev
            if answer_query(eng, kind, u, v) != oracle_answer(go, kind, u, v):
                print(f"selftest FAILED at Q {kind} {u} {v}")
                return 1
    print("selftest ok")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="decbicon",
        description="decremental biconnectivity over nested graph divisions",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file: 'n m' header + edge lines")
    common.add_argument("--division", help="fine division file")
    common.add_argument("--division2", help="coarse division file")
    common.add_argument("--trace", help="trace file of D/DV/Q events")
    common.add_argument("--levels", type=int, choices=(1, 2, 3), default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--grid", help="generate a grid instance: WxH:t1:t2")
    common.add_argument("--out", help="output file (default: stdout)")
    p = sub.add_parser("run", parents=[common], help="execute a trace")
    p.set_defaults(fn=cmd_run)
    p = sub.add_parser("verify", parents=[common], help="cross-check vs oracle")
    p.set_defaults(fn=cmd_verify)
    p = sub.add_parser("bench", parents=[common], help="counter growth ladder")
    p.add_argument("--steps", type=int, default=3)
    p.set_defaults(fn=cmd_bench)
    p = sub.add_parser("gen", parents=[common], help="write a seeded instance")
    p.set_defaults(fn=cmd_gen)
    p = sub.add_parser("selftest", parents=[common], help="quick self-check")
    p.set_defaults(fn=cmd_selftest)
    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
