"""Index build time and query latency as the graph grows.

Vertices are sampled at 20%, 40%, ..., 100% of a generated graph and the
same measurements are repeated on each induced subgraph.
"""
import time

import numpy as np

from temporal_truss import GenSpec, Planted, build_index, downsample_vertices, generate
from temporal_truss.harness import bench

full = generate(GenSpec(n=3000, m_static=15000, t_max=200, seed=3, max_timestamps=4,
                        planted=Planted(8, 3, count=15)))
print(full)
print(f"{'frac':>5} {'temporal':>9} {'build_s':>8} {'gs_ms':>8} {'ls_ms':>8} {'tts_ms':>8}")
for frac in (0.2, 0.4, 0.6, 0.8, 1.0):
    g = downsample_vertices(full, frac, seed=1)
    t0 = time.perf_counter()
    idx = build_index(g)
    build = time.perf_counter() - t0
    rep = bench(g, 8, n_queries=40, index=idx, seed=1)
    ms = {e: np.median(rep.samples[e]) * 1e3 for e in ("gs", "ls", "tts")}
    print(f"{frac:>5.1f} {g.m_temporal:>9} {build:>8.2f} {ms['gs']:>8.2f} {ms['ls']:>8.3f} {ms['tts']:>8.3f}")
