"""q-MDT queries answered from the temporal-trussness index, without counting."""
from __future__ import annotations

from collections import deque

from .graph import TemporalGraph
from .truss import PAPER, CommunityResult, check_mode, components_result, grow_components
from .ttindex import FingerprintMismatchError, TTIndex


def select_seeds(g: TemporalGraph, idx: TTIndex, q: int, delta: int):
    """Scan the query's edges; return ``(k_star, seeds)``.

    A deque holds the candidate seeds. An edge whose trussness is below the
    running maximum is dropped; a larger one first evicts everything smaller
    from the front. What is left are exactly the edges at the maximum.
    """
    k_star = 0
    seeds: deque[int] = deque()
    tau_of: dict[int, int] = {}
    for e in g.incident_edges(q):
        k = idx.tau(e, delta)
        tau_of[e] = k
        if k < k_star:
            continue
        while seeds and tau_of[seeds[0]] < k:
            seeds.popleft()
        seeds.appendleft(e)
        k_star = max(k_star, k)
    return k_star, list(seeds)


def tts_query(g: TemporalGraph, idx: TTIndex, q: int, delta: int,
              mode: str = PAPER) -> CommunityResult:
    check_mode(mode)
    if idx.fingerprint != g.fingerprint():
        raise FingerprintMismatchError("index does not belong to this graph")
    g.check_vertex(q)
    idx.check_delta(delta)
    if g.degree(q) == 0:
        return CommunityResult.empty(q, delta, mode)
    k_star, seeds = select_seeds(g, idx, q, delta)
    if k_star == 0:
        return CommunityResult.empty(q, delta, mode)

    taus: dict[int, int] = {}

    def edge_ok(e):
        t = taus.get(e)
        if t is None:
            t = taus[e] = idx.tau(e, delta)
        return t >= k_star

    def tri_ok(a, b, c):
        act = idx.activation(a, b, c)
        return act is not None and act <= delta

    comps = grow_components(g, seeds, edge_ok, tri_ok, mode)
    return components_result(g, comps, k_star, q, delta, mode)
