"""Temporal-trussness index: bottom-up construction, lookup and binary persistence.

Construction sweeps ``delta`` upward. For every ``delta`` the per-triangle
counts are updated from the previous ``delta`` using time windows
``[t, t + delta]`` (only windows that gained the snapshot at ``t + delta``
are touched), then the graph is peeled and each edge's trussness is
appended to its skyline whenever it grows.

File layout (little endian)::

    header   magic "TTIX" | version u32 | fingerprint 16B | t_max u32
             | covered i32 | saturated_at i32 | n_vertices u32
             | n_edges u64 | n_pairs u64 | n_triangles u64
    edges    n_edges     x (u u32, v u32, n_pairs u32)
    pairs    n_pairs     x (delta u32, tau u64)
    triangles n_triangles x (a u32, b u32, c u32, activation u32)

``covered`` is the largest delta built; ``saturated_at`` is the delta from
which nothing changes any more (-1 when construction stopped earlier).
"""
from __future__ import annotations

import os
import struct
import tempfile
from bisect import bisect_left, bisect_right, bisect
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .graph import Edge, TemporalGraph, UnknownEdgeError, canon
from .tricount import Triangle, calls, enumerate_triangles
from .truss import peel

MAGIC = b"TTIX"
VERSION = 1
_HEADER = struct.Struct("<4sI16sIiiIQQQ")
_EDGE = np.dtype([("u", "<u4"), ("v", "<u4"), ("n", "<u4")])
_PAIR = np.dtype([("delta", "<u4"), ("tau", "<u8")])
_TRI = np.dtype([("a", "<u4"), ("b", "<u4"), ("c", "<u4"), ("act", "<u4")])


class TTIndexError(Exception):
    """Base class for index problems."""


class IndexFormatError(TTIndexError):
    pass


class IndexVersionError(TTIndexError):
    pass


class IndexTruncatedError(TTIndexError):
    pass


class FingerprintMismatchError(TTIndexError):
    pass


class IndexCoverageError(TTIndexError):
    pass


class BuildCancelled(Exception):
    pass


# -- incremental counting -----------------------------------------------

class SliceCounters:
    """Carry-over between consecutive deltas of the incremental count.

    ``carry[tri]`` holds the summed window increments of the previous delta
    for windows 2..end, i.e. what the current delta's increments must be
    reduced by. ``counts`` and ``support`` are the running whole-graph
    values, ``activation`` the first delta with a non-zero count.
    """

    def __init__(self, g: TemporalGraph):
        self.delta = -1
        self.carry: dict[Triangle, int] = {}
        self.counts: dict[Triangle, int] = {}
        self.support = [0] * g.m_static
        self.activation: dict[Triangle, int] = {}
        self.changed: set[Triangle] = set()
        self._prepare(g)

    def _prepare(self, g):
        tri_of_edge: dict[int, list[tuple[Triangle, int, int, int]]] = defaultdict(list)
        full: dict[Triangle, int] = {}
        self.tri_ids: dict[Triangle, tuple[int, int, int]] = {}
        for tri in enumerate_triangles(g):
            a, b, c = tri
            ids = (g.edge_id(a, b), g.edge_id(a, c), g.edge_id(b, c))
            self.tri_ids[tri] = ids
            for e in ids:
                tri_of_edge[e].append((tri, *ids))
            full[tri] = len(g.times[ids[0]]) * len(g.times[ids[1]]) * len(g.times[ids[2]])
        self.tri_of_edge = dict(tri_of_edge)
        self.full = full
        self.unsaturated = len(full)
        snapshots: dict[int, list[int]] = defaultdict(list)
        for eid in self.tri_of_edge:
            for t in g.times[eid]:
                snapshots[t].append(eid)
        self.snapshots = dict(snapshots)

    @property
    def saturated(self) -> bool:
        return self.unsaturated == 0


def _window_product(times, ids, lo, hi) -> int:
    p = 1
    for e in ids:
        ts = times[e]
        c = bisect_right(ts, hi) - bisect_left(ts, lo)
        if c == 0:
            return 0
        p *= c
    return p


def count_all_tsup_step(g: TemporalGraph, delta: int, state: SliceCounters):
    """Advance ``state`` from ``delta - 1`` to ``delta``.

    For each window start ``t`` the window ``[t, t+delta]`` differs from
    ``[t, t+delta-1]`` only by the snapshot at ``t + delta``, so only
    triangles with an edge stamped at that time change. Their window
    increment is accumulated per triangle; the whole-graph change is that sum
    minus the carry of the previous delta.

    Returns ``(counts, support, state)`` where ``counts`` maps triangles to
    their count at ``delta`` (non-zero only) and ``support`` is a list
    indexed by edge id.
    """
    if state.delta != delta - 1:
        raise ValueError(f"counter state is at delta={state.delta}, cannot step to {delta}")
    times = g.times
    t_max = g.t_max
    last_start = max(1, t_max - delta)
    step_sum: dict[Triangle, int] = defaultdict(int)
    first_window: dict[Triangle, int] = {}
    for t in range(1, last_start + 1):
        hi = t + delta
        new_edges = state.snapshots.get(hi)
        if not new_edges:
            continue
        seen = set()
        for eid in new_edges:
            for tri, e1, e2, e3 in state.tri_of_edge[eid]:
                if tri in seen:
                    continue
                seen.add(tri)
                ids = (e1, e2, e3)
                calls.window_products += 1
                inc = _window_product(times, ids, t, hi)
                if inc and delta > 0:
                    inc -= _window_product(times, ids, t, hi - 1)
                if inc:
                    step_sum[tri] += inc
                    if t == 1:
                        first_window[tri] = inc
    new_carry = {}
    changed = set()
    for tri in set(step_sum) | set(state.carry):
        s = step_sum.get(tri, 0)
        phi = s - state.carry.get(tri, 0)
        if phi:
            changed.add(tri)
            before = state.counts.get(tri, 0)
            now = before + phi
            state.counts[tri] = now
            if before == 0:
                state.activation.setdefault(tri, delta)
            if now == state.full[tri] and before != now:
                state.unsaturated -= 1
            for e in state.tri_ids[tri]:
                state.support[e] += phi
        rest = s - first_window.get(tri, 0)
        if rest:
            new_carry[tri] = rest
    state.carry = new_carry
    state.changed = changed
    state.delta = delta
    return state.counts, state.support, state


# -- index ----------------------------------------------------------------

@dataclass
class TTIndex:
    """Per-edge skylines of ``(delta, tau)`` plus per-triangle activation delta."""

    edges: list[Edge]
    deltas: list[tuple[int, ...]]
    taus: list[tuple[int, ...]]
    triangle_activation: dict[Triangle, int]
    fingerprint: bytes
    t_max: int
    n_vertices: int
    covered: int
    saturated_at: Optional[int] = None
    _eid: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._eid = {e: i for i, e in enumerate(self.edges)}

    def __eq__(self, other):
        if not isinstance(other, TTIndex):
            return NotImplemented
        return (self.edges == other.edges and self.deltas == other.deltas
                and self.taus == other.taus
                and self.triangle_activation == other.triangle_activation
                and self.fingerprint == other.fingerprint and self.t_max == other.t_max
                and self.n_vertices == other.n_vertices and self.covered == other.covered
                and self.saturated_at == other.saturated_at)

    def edge_index(self, e) -> int:
        if isinstance(e, (int, np.integer)):
            if not 0 <= e < len(self.edges):
                raise UnknownEdgeError(e)
            return int(e)
        try:
            return self._eid[canon(*e)]
        except KeyError:
            raise UnknownEdgeError(e) from None

    def skyline(self, e) -> list[tuple[int, int]]:
        i = self.edge_index(e)
        return list(zip(self.deltas[i], self.taus[i]))

    def covers(self, delta: int) -> bool:
        return delta <= self.covered or (self.saturated_at is not None and delta >= self.saturated_at)

    def check_delta(self, delta: int) -> None:
        if delta < 0:
            raise ValueError("delta must be non-negative")
        if not self.covers(delta):
            raise IndexCoverageError(f"index covers delta <= {self.covered}, asked for {delta}")

    def tau(self, eid: int, delta: int) -> int:
        ds = self.deltas[eid]
        i = bisect(ds, delta)
        return self.taus[eid][i - 1] if i else 0

    def activation(self, a: int, b: int, c: int) -> Optional[int]:
        return self.triangle_activation.get(tuple(sorted((a, b, c))))

    def stats(self) -> dict:
        pairs = sum(len(d) for d in self.deltas)
        return {
            "edges": len(self.edges),
            "skyline_pairs": pairs,
            "triangles": len(self.triangle_activation),
            "edge_bytes": len(self.edges) * _EDGE.itemsize + pairs * _PAIR.itemsize,
            "triangle_bytes": len(self.triangle_activation) * _TRI.itemsize,
            "covered": self.covered,
            "saturated_at": self.saturated_at,
        }


def find_index(idx: TTIndex, e, delta: int) -> tuple[int, int]:
    """Skyline pair ``(d, tau)`` with the largest stored ``d <= delta``; ``(0, 0)`` if none."""
    i = idx.edge_index(e)
    idx.check_delta(delta)
    ds = idx.deltas[i]
    j = bisect(ds, delta)
    if j == 0:
        return (0, 0)
    return (ds[j - 1], idx.taus[i][j - 1])


def build_index(g: TemporalGraph, delta_max: Optional[int] = None,
                progress: Optional[Callable[[int, dict], object]] = None) -> TTIndex:
    """Build the index for ``delta = 0, 1, ...`` up to ``delta_max`` or saturation.

    ``progress(delta, info)`` is called after each delta; returning ``False``
    cancels the build with :class:`BuildCancelled`.
    """
    state = SliceCounters(g)
    m = g.m_static
    deltas: list[list[int]] = [[] for _ in range(m)]
    taus: list[list[int]] = [[] for _ in range(m)]
    last_tau = [0] * m
    top = max(g.t_max - 1, 0)
    if delta_max is not None:
        if delta_max < 0:
            raise ValueError("delta_max must be non-negative")
        top = min(top, delta_max)
    saturated_at = None
    covered = -1
    delta = 0
    while delta <= top:
        counts, support, _ = count_all_tsup_step(g, delta, state)
        if state.changed:
            system = [(*state.tri_ids[tri], n) for tri, n in counts.items()]
            res = peel(system, supports={e: support[e] for e in range(m) if support[e]})
            for e, t in res.trussness.items():
                if t > last_tau[e]:
                    last_tau[e] = t
                    deltas[e].append(delta)
                    taus[e].append(t)
        covered = delta
        info = {"changed_triangles": len(state.changed), "saturated": state.saturated}
        if state.saturated:
            saturated_at = delta
        if progress is not None and progress(delta, info) is False:
            raise BuildCancelled(f"cancelled at delta={delta}")
        if saturated_at is not None:
            break
        delta += 1
    if saturated_at is None and covered == max(g.t_max - 1, 0):
        # every window spans the whole time axis from here on
        saturated_at = covered
    return TTIndex(
        edges=list(g.edges),
        deltas=[tuple(d) for d in deltas],
        taus=[tuple(t) for t in taus],
        triangle_activation=dict(sorted(state.activation.items())),
        fingerprint=g.fingerprint(),
        t_max=g.t_max,
        n_vertices=g.n,
        covered=covered,
        saturated_at=saturated_at,
    )


# -- persistence ------------------------------------------------------------

def index_to_bytes(idx: TTIndex) -> bytes:
    n_pairs = sum(len(d) for d in idx.deltas)
    head = _HEADER.pack(MAGIC, VERSION, idx.fingerprint, idx.t_max, idx.covered,
                        -1 if idx.saturated_at is None else idx.saturated_at,
                        idx.n_vertices, len(idx.edges), n_pairs, len(idx.triangle_activation))
    edges = np.zeros(len(idx.edges), dtype=_EDGE)
    if idx.edges:
        arr = np.asarray(idx.edges, dtype=np.int64)
        edges["u"], edges["v"] = arr[:, 0], arr[:, 1]
        edges["n"] = [len(d) for d in idx.deltas]
    pairs = np.zeros(n_pairs, dtype=_PAIR)
    if n_pairs:
        pairs["delta"] = [d for ds in idx.deltas for d in ds]
        pairs["tau"] = [t for ts in idx.taus for t in ts]
    tris = np.zeros(len(idx.triangle_activation), dtype=_TRI)
    if idx.triangle_activation:
        items = sorted(idx.triangle_activation.items())
        tris["a"] = [k[0] for k, _ in items]
        tris["b"] = [k[1] for k, _ in items]
        tris["c"] = [k[2] for k, _ in items]
        tris["act"] = [v for _, v in items]
    return head + edges.tobytes() + pairs.tobytes() + tris.tobytes()


def index_from_bytes(data: bytes, graph: Optional[TemporalGraph] = None) -> TTIndex:
    if len(data) < 4 or data[:4] != MAGIC:
        raise IndexFormatError("not a temporal-trussness index (bad magic)")
    if len(data) < _HEADER.size:
        raise IndexTruncatedError("file ends inside the header")
    (_, version, fp, t_max, covered, sat, n_vertices,
     n_edges, n_pairs, n_tris) = _HEADER.unpack_from(data, 0)
    if version != VERSION:
        raise IndexVersionError(f"index version {version}, this library reads {VERSION}")
    expected = (_HEADER.size + n_edges * _EDGE.itemsize + n_pairs * _PAIR.itemsize
                + n_tris * _TRI.itemsize)
    if len(data) < expected:
        raise IndexTruncatedError(f"index needs {expected} bytes, file has {len(data)}")
    if len(data) > expected:
        raise IndexFormatError("trailing bytes after index payload")
    if graph is not None and graph.fingerprint() != fp:
        raise FingerprintMismatchError("index was built from a different graph")
    off = _HEADER.size
    edges = np.frombuffer(data, dtype=_EDGE, count=n_edges, offset=off)
    off += n_edges * _EDGE.itemsize
    pairs = np.frombuffer(data, dtype=_PAIR, count=n_pairs, offset=off)
    off += n_pairs * _PAIR.itemsize
    tris = np.frombuffer(data, dtype=_TRI, count=n_tris, offset=off)
    if int(edges["n"].sum()) != n_pairs:
        raise IndexFormatError("edge records disagree with pair count")
    pd, pt = pairs["delta"].tolist(), pairs["tau"].tolist()
    deltas, taus = [], []
    pos = 0
    for k in edges["n"].tolist():
        deltas.append(tuple(pd[pos:pos + k]))
        taus.append(tuple(pt[pos:pos + k]))
        pos += k
    act = {(a, b, c): x for a, b, c, x in zip(tris["a"].tolist(), tris["b"].tolist(),
                                              tris["c"].tolist(), tris["act"].tolist())}
    return TTIndex(
        edges=list(zip(edges["u"].tolist(), edges["v"].tolist())),
        deltas=deltas, taus=taus, triangle_activation=act, fingerprint=fp,
        t_max=t_max, n_vertices=n_vertices, covered=covered,
        saturated_at=None if sat < 0 else sat,
    )


def save_index(idx: TTIndex, path) -> int:
    """Write atomically; returns the number of bytes written."""
    data = index_to_bytes(idx)
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ttix-", dir=d)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return len(data)


def load_index(path, graph: Optional[TemporalGraph] = None) -> TTIndex:
    with open(path, "rb") as fh:
        return index_from_bytes(fh.read(), graph)
