"""Temporal graph model: ingestion, induced subgraphs and time-window slices.

A temporal graph is stored as its static projection (one record per vertex
pair, ``u < v``) where every static edge carries the sorted, de-duplicated
list of timestamps at which the pair interacted.
"""
from __future__ import annotations

import hashlib
import os
from bisect import bisect_left, bisect_right
from collections.abc import Iterable, Iterator
from typing import Optional

import numpy as np

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Raised for unreadable edge-list input."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)


class UnknownVertexError(KeyError):
    pass


class UnknownEdgeError(KeyError):
    pass


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class TemporalGraph:
    """Immutable temporal graph over vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Size of the vertex id space.
    edge_times : mapping (u, v) -> iterable of timestamps
        Keys may be given in either orientation; they are canonicalised and
        merged. Self loops are rejected.
    labels : sequence of int, optional
        Original vertex identifiers (``labels[i]`` is the raw id of vertex i).
    """

    __slots__ = ("n", "edges", "times", "labels", "t_max", "t_min", "m_temporal",
                 "_eid", "_adj", "_nbr", "_fingerprint")

    def __init__(self, n: int, edge_times, labels=None):
        merged: dict[Edge, set[int]] = {}
        for (a, b), ts in dict(edge_times).items():
            if a == b:
                raise ValueError(f"self loop on vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise UnknownVertexError((a, b))
            merged.setdefault(canon(a, b), set()).update(int(t) for t in ts)
        self.n = int(n)
        self.edges: list[Edge] = sorted(e for e, ts in merged.items() if ts)
        self.times: list[tuple[int, ...]] = [tuple(sorted(merged[e])) for e in self.edges]
        self.labels = list(labels) if labels is not None else list(range(self.n))
        self._eid = {e: i for i, e in enumerate(self.edges)}
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        self._adj = adj
        self._nbr = [frozenset(row) for row in adj]
        self.m_temporal = sum(len(ts) for ts in self.times)
        self.t_max = max((ts[-1] for ts in self.times), default=0)
        self.t_min = min((ts[0] for ts in self.times), default=0)
        self._fingerprint = None

    # -- basic accessors -------------------------------------------------
    @property
    def m_static(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return (f"TemporalGraph(n={self.n}, static_edges={self.m_static}, "
                f"temporal_edges={self.m_temporal}, t_max={self.t_max})")

    def __eq__(self, other):
        if not isinstance(other, TemporalGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and self.times == other.times

    def __hash__(self):
        return hash(self.fingerprint())

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
            raise UnknownVertexError(v)

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset:
        return self._nbr[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def temporal_degree(self, v: int) -> int:
        return sum(len(self.times[self._eid[canon(v, w)]]) for w in self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return canon(u, v) in self._eid

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._eid[canon(u, v)]
        except KeyError:
            raise UnknownEdgeError((u, v)) from None

    def eid_or_none(self, u: int, v: int):
        return self._eid.get((u, v) if u < v else (v, u))

    def timestamps(self, u: int, v: int) -> tuple[int, ...]:
        return self.times[self.edge_id(u, v)]

    def common_neighbors(self, u: int, v: int) -> set[int]:
        a, b = self._nbr[u], self._nbr[v]
        if len(a) > len(b):
            a, b = b, a
        return a & b

    def incident_edges(self, v: int) -> list[int]:
        """Static edge ids incident to ``v`` in neighbour order."""
        return [self._eid[canon(v, w)] for w in self._adj[v]]

    def temporal_edges(self) -> Iterator[tuple[int, int, int]]:
        for (u, v), ts in zip(self.edges, self.times):
            for t in ts:
                yield (u, v, t)

    def fingerprint(self) -> bytes:
        """16-byte digest of the vertex count, static edges and timestamps."""
        if self._fingerprint is None:
            h = hashlib.blake2b(digest_size=16)
            h.update(np.int64(self.n).tobytes())
            if self.edges:
                h.update(np.asarray(self.edges, dtype=np.int64).tobytes())
                lens = np.fromiter((len(ts) for ts in self.times), dtype=np.int64)
                h.update(lens.tobytes())
                flat = np.fromiter((t for ts in self.times for t in ts), dtype=np.int64)
                h.update(flat.tobytes())
            self._fingerprint = h.digest()
        return self._fingerprint

    def vertex_of_label(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownVertexError(label) from None


# -- ingestion -----------------------------------------------------------

def parse_edge_lines(lines: Iterable[str], path: Optional[str] = None):
    """Yield ``(u, v, t)`` integer triples; '#' and '%' lines are comments."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) < 3:
            raise GraphFormatError(f"expected 'u v t', got {line!r}", path, lineno)
        try:
            u, v, t = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", path, lineno) from None
        yield u, v, t


def from_temporal_edges(triples: Iterable[tuple[int, int, int]], time_scale: int = 1,
                        rebase: bool = True, path: Optional[str] = None) -> TemporalGraph:
    """Build a graph from raw ``(u, v, t)`` triples.

    Self loops are dropped before vertex remapping, timestamps are divided by
    ``time_scale`` (floor) and, with ``rebase``, shifted so the earliest one
    becomes 1. Vertex labels are densely remapped in ascending order.
    """
    if time_scale < 1:
        raise ValueError("time_scale must be a positive integer")
    kept = []
    for u, v, t in triples:
        if u != v:
            kept.append((u, v, t // time_scale))
    if not kept:
        raise GraphFormatError("no temporal edges (empty input or only self loops)", path)
    labels = sorted({x for u, v, _ in kept for x in (u, v)})
    index = {lab: i for i, lab in enumerate(labels)}
    shift = 0
    t_lo = min(t for _, _, t in kept)
    if rebase:
        shift = 1 - t_lo
    elif t_lo < 1:
        raise GraphFormatError(f"timestamp {t_lo} < 1 after scaling; use rebase", path)
    edge_times: dict[Edge, set[int]] = {}
    for u, v, t in kept:
        edge_times.setdefault(canon(index[u], index[v]), set()).add(t + shift)
    return TemporalGraph(len(labels), edge_times, labels=labels)


def load_graph(path, time_scale: int = 1, rebase: bool = True) -> TemporalGraph:
    path = os.fspath(path)
    with open(path, "r", encoding="utf-8") as fh:
        return from_temporal_edges(parse_edge_lines(fh, path), time_scale, rebase, path)


def write_edge_list(g: TemporalGraph, path, use_labels: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, t in g.temporal_edges():
            if use_labels:
                u, v = g.labels[u], g.labels[v]
            fh.write(f"{u} {v} {t}\n")


# -- subgraphs and slices ----------------------------------------------

def induced_subgraph(g: TemporalGraph, s: Iterable[int]) -> TemporalGraph:
    """Temporal subgraph induced by vertex set ``s``; vertex ids are kept."""
    keep = set(s)
    for v in keep:
        g.check_vertex(v)
    edge_times = {e: ts for e, ts in zip(g.edges, g.times) if e[0] in keep and e[1] in keep}
    return TemporalGraph(g.n, edge_times, labels=g.labels)


def edge_subgraph(g: TemporalGraph, edge_ids: Iterable[int]) -> TemporalGraph:
    return TemporalGraph(g.n, {g.edges[i]: g.times[i] for i in edge_ids}, labels=g.labels)


class SliceView:
    """Read-only view of ``g`` restricted to timestamps in ``[start, start+delta]``."""

    __slots__ = ("base", "start", "delta")

    def __init__(self, base: TemporalGraph, start: int, delta: int):
        self.base = base
        self.start = start
        self.delta = delta

    @property
    def end(self) -> int:
        return self.start + self.delta

    def contains(self, t: int) -> bool:
        return self.start <= t <= self.end

    def timestamps(self, u: int, v: int) -> tuple[int, ...]:
        ts = self.base.timestamps(u, v)
        return ts[bisect_left(ts, self.start):bisect_right(ts, self.end)]

    def count(self, eid: int) -> int:
        ts = self.base.times[eid]
        return bisect_right(ts, self.end) - bisect_left(ts, self.start)

    def edges(self) -> Iterator[tuple[Edge, tuple[int, ...]]]:
        for e, ts in zip(self.base.edges, self.base.times):
            win = ts[bisect_left(ts, self.start):bisect_right(ts, self.end)]
            if win:
                yield e, win

    def temporal_edges(self) -> Iterator[tuple[int, int, int]]:
        for (u, v), ts in self.edges():
            for t in ts:
                yield (u, v, t)

    def to_graph(self) -> TemporalGraph:
        return TemporalGraph(self.base.n, dict(self.edges()), labels=self.base.labels)


def slice_graph(g: TemporalGraph, start: int, delta: int) -> SliceView:
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if start < 1 or start + delta > g.t_max:
        raise ValueError(f"window [{start}, {start + delta}] exceeds [1, {g.t_max}]")
    return SliceView(g, start, delta)
