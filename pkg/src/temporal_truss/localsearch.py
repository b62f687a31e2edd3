"""Local search: threshold-driven expansion around the query plus anchored peeling.

The threshold ``k`` follows a binary search between the smallest and largest
temporal support of the query's edges. Every round grows a candidate
subgraph ``H`` from the query, keeping only edges whose support in the whole
graph reaches ``k``, then peels ``H``. Supports are computed only for edges
the expansion touches, and each computation stops once it reaches ``k``.
"""
from __future__ import annotations

from collections import deque
from typing import Optional

from .graph import TemporalGraph
from .tricount import Triangle, count_triangle_sliding
from .truss import (PAPER, STRICT, CommunityResult, check_mode, components_result,
                    grow_components, peel)

UNVISITED, ADMITTED, DEFERRED = 0, 1, -1


class ExpandState:
    """Bookkeeping shared by successive expansion rounds of one query."""

    def __init__(self, g: TemporalGraph, delta: int, q: int, mode: str = PAPER,
                 early_stop: bool = True):
        self.g = g
        self.delta = delta
        self.q = q
        self.mode = check_mode(mode)
        self.early_stop = early_stop
        self.mark: dict[int, int] = {}
        self.deferred: list[int] = []
        self.first_round = True
        self.expanded_vertices: set[int] = set()
        self._tri_n: dict[Triangle, int] = {}
        # eid -> (value, exact)
        self._sup: dict[int, tuple[int, bool]] = {}
        self.support_evaluations = 0

    # -- counting with caches ---------------------------------------------
    def tri_count(self, a: int, b: int, c: int) -> int:
        key = tuple(sorted((a, b, c)))
        n = self._tri_n.get(key)
        if n is None:
            g = self.g
            x, y, z = key
            n = count_triangle_sliding(g.timestamps(x, y), g.timestamps(x, z),
                                       g.timestamps(y, z), self.delta)
            self._tri_n[key] = n
        return n

    def support(self, eid: int, k: Optional[int] = None) -> int:
        """Support of ``eid`` in the full graph; exact whenever it is below ``k``."""
        hit = self._sup.get(eid)
        if hit is not None:
            value, exact = hit
            if exact or (k is not None and value >= k):
                return value
        self.support_evaluations += 1
        stop = k if (self.early_stop and k is not None) else None
        u, v = self.g.edges[eid]
        total = 0
        exact = True
        for w in sorted(self.g.common_neighbors(u, v)):
            total += self.tri_count(u, v, w)
            if stop is not None and total >= stop:
                exact = False
                break
        self._sup[eid] = (total, exact)
        return total


def expanding(state: ExpandState, k: int) -> tuple[list[int], list[int]]:
    """One expansion round at threshold ``k``.

    The first round starts from the query's edges; later rounds resume from
    the deferred edges of earlier rounds. An edge is admitted when its
    support is at least ``k``; from admitted edges (and, in paper mode, their
    endpoints) every triangle with a non-zero temporal count is inspected. If
    all three edges clear ``k`` the triangle's edges are admitted, otherwise
    the failing edge with the smallest support is deferred.

    Returns the batch of newly admitted edge ids and the deferred edge ids.
    """
    g = state.g
    mark = state.mark
    eid_of = g.eid_or_none
    batch: list[int] = []
    queue: deque[int] = deque()
    if state.first_round:
        starts = g.incident_edges(state.q)
        state.first_round = False
    else:
        starts = state.deferred
    deferred: list[int] = []
    in_deferred: set[int] = set()

    def defer(e):
        mark[e] = DEFERRED
        if e not in in_deferred:
            in_deferred.add(e)
            deferred.append(e)

    def admit(e):
        mark[e] = ADMITTED
        batch.append(e)
        queue.append(e)

    for e in starts:
        if mark.get(e) == ADMITTED:
            continue
        if state.support(e, k) >= k:
            admit(e)
        else:
            defer(e)

    def inspect(a, b, c, eab, eac, ebc):
        if state.tri_count(a, b, c) == 0:
            return
        failing = None
        for f in (eab, eac, ebc):
            if mark.get(f) == ADMITTED:
                continue
            s = state.support(f, k)
            if s < k and (failing is None or (s, f) < failing):
                failing = (s, f)
        if failing is None:
            for f in (eab, eac, ebc):
                if mark.get(f) != ADMITTED:
                    admit(f)
        else:
            defer(failing[1])

    while queue:
        e = queue.popleft()
        u, v = g.edges[e]
        for w in sorted(g.common_neighbors(u, v)):
            inspect(u, v, w, e, eid_of(u, w), eid_of(v, w))
        if state.mode == PAPER:
            for x in (u, v):
                if x in state.expanded_vertices:
                    continue
                state.expanded_vertices.add(x)
                for y in g.neighbors(x):
                    exy = eid_of(x, y)
                    for w in sorted(g.common_neighbors(x, y)):
                        if w > y:
                            inspect(x, y, w, exy, eid_of(x, w), eid_of(y, w))
    state.deferred = deferred
    return batch, deferred


class _Candidate:
    """The growing candidate subgraph with supports counted inside it."""

    def __init__(self, state: ExpandState):
        self.state = state
        self.edges: set[int] = set()
        self.triangles: list[tuple[int, int, int, int]] = []
        self.support: dict[int, int] = {}

    def add(self, batch):
        g = self.state.g
        eid_of = g.eid_or_none
        for e in batch:
            if e in self.edges:
                continue
            self.edges.add(e)
            self.support.setdefault(e, 0)
            u, v = g.edges[e]
            for w in g.common_neighbors(u, v):
                e1, e2 = eid_of(u, w), eid_of(v, w)
                if e1 in self.edges and e2 in self.edges:
                    n = self.state.tri_count(u, v, w)
                    if n:
                        self.triangles.append((e, e1, e2, n))
                        self.support[e] += n
                        self.support[e1] += n
                        self.support[e2] += n


def ls_search(g: TemporalGraph, q: int, delta: int, mode: str = PAPER,
              early_stop: bool = True, trace: Optional[list] = None) -> CommunityResult:
    """Local search for the q-MDT; agrees exactly with :func:`gs_search`.

    ``trace``, when a list, receives one ``(k_m, k_H, |H|)`` tuple per round.
    """
    check_mode(mode)
    g.check_vertex(q)
    q_edges = g.incident_edges(q)
    if not q_edges:
        return CommunityResult.empty(q, delta, mode)
    state = ExpandState(g, delta, q, mode, early_stop)
    sups = [state.support(e) for e in q_edges]
    k_lo, k_hi = min(sups), max(sups)
    if k_hi == 0:
        return CommunityResult.empty(q, delta, mode)

    cand = _Candidate(state)
    known = 0      # largest k for which a truss around q has been found
    prev = None
    while True:
        k_m = (k_lo + k_hi) // 2
        if prev is not None and k_m >= prev:
            # the initial lower bound (smallest incident support) is not a
            # valid bound on the answer; restart from the best truss found
            k_lo = known
            k_m = (k_lo + k_hi) // 2
        prev = k_m
        batch, _ = expanding(state, k_m)
        cand.add(batch)
        anchor = [e for e in q_edges if e in cand.edges]
        res = peel(cand.triangles, cand.support, anchor=anchor, extra_edges=cand.edges)
        k_h = res.k_max
        if trace is not None:
            trace.append((k_m, k_h, len(cand.edges)))
        if k_h > 0 and k_h >= k_m:
            keep = res.at_least(k_h)
            seeds = [e for e in q_edges if e in keep]

            def tri_ok(a, b, c):
                return state.tri_count(a, b, c) > 0

            comps = grow_components(g, seeds, keep.__contains__, tri_ok, mode)
            return components_result(g, comps, k_h, q, delta, mode)
        if k_m == 0:
            # threshold 0 admits the full reachable region, so k_h is exact
            return CommunityResult.empty(q, delta, mode)
        if k_h == 0:
            k_hi = k_m
        else:
            known = k_h
            k_lo, k_hi = k_h, k_m


__all__ = ["ExpandState", "expanding", "ls_search", "ADMITTED", "DEFERRED", "UNVISITED", "STRICT"]
