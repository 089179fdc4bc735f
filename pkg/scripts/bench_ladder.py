#!/usr/bin/env python3
"""Full-deletion ladder benchmark on a doubling sequence of grids.

For each rung, builds a three-level engine over a nested grid division,
deletes every edge in a seeded random order (issuing a sampled biconnected
query every `--stride` deletions), and reports the structural-work counter
totals.  Near-linear total work shows as a per-doubling growth ratio close
to 2.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from decbicon import Engine, gen_grid, gen_nested_grid_pair

RUNGS = [
    (32, 32, 8, 4),
    (64, 32, 8, 4),
    (64, 64, 8, 4),
    (128, 64, 8, 4),
    (128, 128, 8, 4),
]


def run_rung(w: int, h: int, t1: int, t2: int, seed: int, stride: int) -> dict:
    g = gen_grid(w, h)
    pair = gen_nested_grid_pair(w, h, t1, t2)
    m = len(g.alive_edges())
    t0 = time.time()
    eng = Engine(g, pair, levels=3, aux=False)
    built = time.time() - t0
    rng = random.Random(seed)
    order = list(g.alive_edges())
    rng.shuffle(order)
    alive = [v for v in range(g.n) if g.vertex_alive[v]]
    step = max(stride, len(order) // 128)
    t0 = time.time()
    for i, e in enumerate(order):
        eng.delete_edge_id(e)
        if i % step == 0:
            u, v = rng.sample(alive, 2)
            eng.biconnected(u, v)
    dele = time.time() - t0
    c = eng.counters()
    return {
        "grid": f"{w}x{h}",
        "tiles": (t1, t2),
        "m": m,
        "build_s": round(built, 1),
        "delete_s": round(dele, 1),
        "work_total": sum(c.values()),
        "counters": c,
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--stride", type=int, default=64)
    ap.add_argument("--json", action="store_true", help="emit one JSON object")
    args = ap.parse_args(argv)
    rows = []
    for w, h, t1, t2 in RUNGS:
        r = run_rung(w, h, t1, t2, args.seed, args.stride)
        rows.append(r)
        print(
            f"{r['grid']} m={r['m']} build={r['build_s']}s "
            f"del={r['delete_s']}s work={r['work_total']}",
            flush=True,
        )
    ratios = [
        round(rows[i + 1]["work_total"] / rows[i]["work_total"], 3)
        for i in range(len(rows) - 1)
    ]
    print("work growth per rung:", ratios, flush=True)
    if args.json:
        print(json.dumps({"rungs": rows, "ratios": ratios}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
