#!/usr/bin/env python3
"""
Timing run on synthetic pages at app-store scale (default 50,000 apps).

    python demos/scale_run.py [N]
"""

import sys
import time

from appkg.kschema import build_graph
from appkg.kschema import vocab as V
from appkg.normalize import US, normalize_record
from appkg.store import DESC, build
from appkg.synth import store_scale_raw
from appkg.turtle import serialize


def timed(label, fn):
    t0 = time.perf_counter()
    out = fn()
    print(f"{label:<12} {time.perf_counter() - t0:6.2f}s")
    return out


def main(n):
    raws = timed("generate", lambda: list(store_scale_raw(n)))
    records = timed("normalize", lambda: [normalize_record(r, US) for r in raws])
    graph = timed("graph", lambda: build_graph(records))
    text = timed("serialize", lambda: serialize(graph))
    store = timed("index", lambda: build(graph))
    top = timed("top 10", lambda: store.top_k_by_numeric(V.DOWNLOAD_COUNT, 10, DESC))

    print(f"\n{len(store):,} triples, {len(text) / 2**20:.1f} MiB Turtle")
    for app, downloads in top[:3]:
        print(f"  {downloads:>14,}  {app.value}")
    game = next(s for v, _, s in store.group_shares(V.APPLICATION_CATEGORY) if v.lexical == "Game")
    print(f"game share {game}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 50_000)
