"""(k, delta)-truss machinery: support peeling, higher-order components, global search."""
from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Optional

from .graph import Edge, TemporalGraph
from .tricount import Triangle, temporal_support_all

PAPER = "paper"
STRICT = "strict-edge"
MODES = (PAPER, STRICT)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown connectivity mode {mode!r}; expected one of {MODES}")
    return mode


@dataclass(frozen=True)
class CommunityResult:
    """A q-MDT answer: the achieved ``k_star`` and its components as edge sets."""

    k_star: int
    components: tuple[frozenset, ...]
    query: int
    delta: int
    mode: str = PAPER

    @classmethod
    def empty(cls, query, delta, mode=PAPER):
        return cls(0, (), query, delta, mode)

    @classmethod
    def build(cls, k_star, components, query, delta, mode):
        comps = [frozenset(c) for c in components if c]
        comps.sort(key=lambda c: min(c))
        return cls(k_star, tuple(comps), query, delta, mode)

    def key(self):
        """What engines must agree on."""
        return (self.k_star, self.components)

    def edges(self) -> set[Edge]:
        return set().union(*self.components) if self.components else set()

    def vertices(self) -> set[int]:
        return {x for e in self.edges() for x in e}

    def temporal_edges(self, g: TemporalGraph) -> list[tuple[int, int, int]]:
        return [(u, v, t) for (u, v) in sorted(self.edges()) for t in g.timestamps(u, v)]


# -- peeling --------------------------------------------------------------

@dataclass
class PeelResult:
    k_max: int
    trussness: dict[int, int]
    remaining: set[int] = field(default_factory=set)

    def at_least(self, k: int) -> set[int]:
        """Edges whose trussness is at least ``k`` (exact for ``k <= k_max``)."""
        out = {e for e, t in self.trussness.items() if t >= k}
        out |= self.remaining
        return out


def peel(triangles: Iterable[tuple[int, int, int, int]], supports: Optional[dict[int, int]] = None,
         anchor: Optional[Iterable[int]] = None, tie_key: Optional[Callable[[int], int]] = None,
         extra_edges: Iterable[int] = ()) -> PeelResult:
    """Repeatedly delete a minimum-support edge and record its trussness.

    ``triangles`` holds ``(e1, e2, e3, n)`` with edge ids and a positive
    temporal count ``n``. Supports default to the sum of ``n`` over an edge's
    triangles. With ``anchor`` the loop ends right after the last anchor edge
    is deleted; surviving edges are returned in ``remaining``.
    """
    tris = [t for t in triangles if t[3] > 0]
    incident: dict[int, list[int]] = {}
    for i, (a, b, c, _) in enumerate(tris):
        incident.setdefault(a, []).append(i)
        incident.setdefault(b, []).append(i)
        incident.setdefault(c, []).append(i)
    for e in extra_edges:
        incident.setdefault(e, [])
    if supports is None:
        sup = dict.fromkeys(incident, 0)
        for a, b, c, n in tris:
            sup[a] += n
            sup[b] += n
            sup[c] += n
    else:
        sup = {e: supports.get(e, 0) for e in incident}

    pending = None
    if anchor is not None:
        anchor_set = set(anchor)
        for e in anchor_set:
            if e not in sup:
                sup[e] = 0
                incident[e] = []
        pending = len(anchor_set)
        if pending == 0:
            return PeelResult(0, {}, set(sup))
    else:
        anchor_set = set()

    key = tie_key or (lambda e: e)
    heap = [(s, key(e), e) for e, s in sup.items()]
    heapq.heapify(heap)
    alive_tri = [True] * len(tris)
    removed: dict[int, int] = {}
    k = 0
    while heap:
        s, _, e = heapq.heappop(heap)
        if e in removed or s != sup[e]:
            continue
        if s > k:
            k = s
        removed[e] = k
        for ti in incident[e]:
            if not alive_tri[ti]:
                continue
            alive_tri[ti] = False
            a, b, c, n = tris[ti]
            for f in (a, b, c):
                if f != e:
                    sup[f] -= n
                    heapq.heappush(heap, (sup[f], key(f), f))
        if pending is not None and e in anchor_set:
            pending -= 1
            if pending == 0:
                break
    remaining = set(sup) - set(removed)
    if anchor is not None:
        k_max = max((removed[e] for e in anchor_set), default=0)
    else:
        k_max = max(removed.values(), default=0)
    return PeelResult(k_max, removed, remaining)


def triangle_system(g: TemporalGraph, counts: dict[Triangle, int]) -> list[tuple[int, int, int, int]]:
    out = []
    for (a, b, c), n in counts.items():
        if n > 0:
            out.append((g.edge_id(a, b), g.edge_id(a, c), g.edge_id(b, c), n))
    return out


def decompose(g: TemporalGraph, delta: int, anchor: Optional[int] = None,
              counts: Optional[dict[Triangle, int]] = None, tie_key=None):
    """Temporal trussness of the edges of ``g`` at ``delta``.

    Returns ``(k_max, trussness)`` with trussness keyed by ``(u, v)``. Without
    an anchor every static edge is present (0 for edges in no counted
    triangle). With an anchor vertex peeling stops once its last incident edge
    is gone, so only edges deleted up to then appear, and ``k_max`` is the
    largest trussness among the anchor's edges.
    """
    if counts is None:
        _, counts = temporal_support_all(g, delta)
    system = triangle_system(g, counts)
    if anchor is None:
        res = peel(system, tie_key=tie_key)
        tr = {e: 0 for e in g.edges}
        for eid, t in res.trussness.items():
            tr[g.edges[eid]] = t
        return res.k_max, tr
    g.check_vertex(anchor)
    res = peel(system, anchor=g.incident_edges(anchor), tie_key=tie_key)
    return res.k_max, {g.edges[eid]: t for eid, t in res.trussness.items()}


# -- higher-order connectivity ---------------------------------------------

def grow_components(g: TemporalGraph, seeds: Iterable[int], edge_ok: Callable[[int], bool],
                    tri_ok: Callable[[int, int, int], bool], mode: str = PAPER) -> list[set[int]]:
    """Group edges reachable from ``seeds`` through qualifying triangles.

    A triangle qualifies when its three edges pass ``edge_ok`` and
    ``tri_ok(a, b, c)`` holds (its temporal count is non-zero). In strict
    mode triangles are adjacent when they share an edge, in paper mode when
    they share a vertex. Each unvisited seed opens a new component; edges in
    no qualifying triangle are left out. Returns sets of edge ids.
    """
    check_mode(mode)
    eid_of = g.eid_or_none
    visited: set[int] = set()
    comps: list[set[int]] = []

    def triangles_on_edge(u, v):
        for w in g.common_neighbors(u, v):
            e1, e2 = eid_of(u, w), eid_of(v, w)
            if edge_ok(e1) and edge_ok(e2) and tri_ok(u, v, w):
                yield w, e1, e2

    for s in seeds:
        if s in visited or not edge_ok(s):
            continue
        u0, v0 = g.edges[s]
        if next(triangles_on_edge(u0, v0), None) is None:
            continue
        comp = {s}
        visited.add(s)
        if mode == STRICT:
            queue = deque([s])
            while queue:
                u, v = g.edges[queue.popleft()]
                for _, e1, e2 in triangles_on_edge(u, v):
                    for f in (e1, e2):
                        if f not in visited:
                            visited.add(f)
                            comp.add(f)
                            queue.append(f)
        else:
            seen_v = {u0, v0}
            vqueue = deque([u0, v0])
            while vqueue:
                x = vqueue.popleft()
                for y in g.neighbors(x):
                    exy = eid_of(x, y)
                    if not edge_ok(exy):
                        continue
                    for w, e1, e2 in triangles_on_edge(x, y):
                        if w < y:
                            continue
                        for f in (exy, e1, e2):
                            if f not in visited:
                                visited.add(f)
                                comp.add(f)
                        for z in (y, w):
                            if z not in seen_v:
                                seen_v.add(z)
                                vqueue.append(z)
        comps.append(comp)
    return comps


def higher_order_components(g: TemporalGraph, edge_set: Iterable[Edge], delta: int,
                            seed_edges: Iterable[Edge], mode: str = PAPER,
                            counts: Optional[dict[Triangle, int]] = None) -> list[set[Edge]]:
    """Higher-order components of ``edge_set`` reachable from ``seed_edges``.

    Triangles count as connectors only when they have at least one
    timestamp triple with span ``<= delta``.
    """
    from .tricount import triangle_count

    allowed = {g.edge_id(*e) for e in edge_set}
    cache: dict[Triangle, int] = {} if counts is None else counts

    def tri_ok(a, b, c):
        key = tuple(sorted((a, b, c)))
        n = cache.get(key)
        if n is None:
            if counts is not None:
                return False
            n = cache[key] = triangle_count(g, key, delta)
        return n > 0

    seeds = sorted(g.edge_id(*e) for e in seed_edges)
    comps = grow_components(g, seeds, allowed.__contains__, tri_ok, mode)
    return [{g.edges[i] for i in c} for c in comps]


def components_result(g, comps, k_star, q, delta, mode) -> CommunityResult:
    return CommunityResult.build(k_star, [{g.edges[i] for i in c} for c in comps], q, delta, mode)


def gs_search(g: TemporalGraph, q: int, delta: int, mode: str = PAPER) -> CommunityResult:
    """Global search: count everything, peel anchored at ``q``, then extract components."""
    check_mode(mode)
    g.check_vertex(q)
    if g.degree(q) == 0:
        return CommunityResult.empty(q, delta, mode)
    _, counts = temporal_support_all(g, delta)
    system = triangle_system(g, counts)
    q_edges = g.incident_edges(q)
    res = peel(system, anchor=q_edges)
    k = res.k_max
    if k == 0:
        return CommunityResult.empty(q, delta, mode)
    keep = res.at_least(k)
    seeds = [e for e in q_edges if e in keep]

    def tri_ok(a, b, c):
        return tuple(sorted((a, b, c))) in counts

    comps = grow_components(g, seeds, keep.__contains__, tri_ok, mode)
    return components_result(g, comps, k, q, delta, mode)
