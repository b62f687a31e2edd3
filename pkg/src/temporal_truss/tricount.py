"""delta-temporal triangle counting and per-edge temporal support."""
from __future__ import annotations

from collections.abc import Iterator, Sequence
from typing import Optional

from .graph import TemporalGraph, UnknownEdgeError

Triangle = tuple[int, int, int]


class CallCounter:
    """Tally of counting routines invoked, used to prove index queries never count."""

    def __init__(self):
        self.sliding = 0
        self.window_products = 0

    @property
    def total(self) -> int:
        return self.sliding + self.window_products

    def reset(self) -> None:
        self.sliding = 0
        self.window_products = 0


calls = CallCounter()


def count_triangle_sliding(t1: Sequence[int], t2: Sequence[int], t3: Sequence[int],
                           delta: int) -> int:
    """Number of triples ``(x, y, z)`` from the three lists with span ``<= delta``.

    Lists must be sorted ascending. They are reordered by length so the
    outer loop runs over the shortest. For every ``x`` a window over the
    second list holds ``|x - y| <= delta`` and, for every ``y`` in it, a
    window over the third list holds ``|x - z| <= delta`` and
    ``|y - z| <= delta``. All cursors only move forward.
    """
    calls.sliding += 1
    a, b, c = sorted((t1, t2, t3), key=len)
    if not a or not b or not c:
        return 0
    nb, nc = len(b), len(c)
    b_lo = b_hi = 0
    c_start_lo = c_start_hi = 0
    total = 0
    for x in a:
        while b_lo < nb and b[b_lo] < x - delta:
            b_lo += 1
        if b_hi < b_lo:
            b_hi = b_lo
        while b_hi < nb and b[b_hi] <= x + delta:
            b_hi += 1
        if b_lo == b_hi:
            continue
        # lower bound max(x, y) - delta and upper bound min(x, y) + delta are
        # both non-decreasing in y, and their start values non-decreasing in x.
        c_lo, c_hi = c_start_lo, c_start_hi
        first = True
        for j in range(b_lo, b_hi):
            y = b[j]
            lo = (x if x > y else y) - delta
            hi = (x if x < y else y) + delta
            while c_lo < nc and c[c_lo] < lo:
                c_lo += 1
            if c_hi < c_lo:
                c_hi = c_lo
            while c_hi < nc and c[c_hi] <= hi:
                c_hi += 1
            if first:
                c_start_lo, c_start_hi = c_lo, c_hi
                first = False
            total += c_hi - c_lo
    return total


def count_triangle_brute(t1, t2, t3, delta: int) -> int:
    """Triple loop; kept alongside the fast path as its reference."""
    n = 0
    for x in t1:
        for y in t2:
            for z in t3:
                if max(x, y, z) - min(x, y, z) <= delta:
                    n += 1
    return n


def enumerate_triangles(g: TemporalGraph) -> Iterator[Triangle]:
    """Every static triangle once, as ``(a, b, c)`` with ``a < b < c``."""
    for u, v in g.edges:
        a, b = g.neighbor_set(u), g.neighbor_set(v)
        if len(a) > len(b):
            a, b = b, a
        for w in a:
            if w > v and w in b:
                yield (u, v, w)


def triangles_sorted(g: TemporalGraph) -> list[Triangle]:
    return sorted(enumerate_triangles(g))


def triangle_edges(g: TemporalGraph, tri: Triangle) -> tuple[int, int, int]:
    a, b, c = tri
    return g.edge_id(a, b), g.edge_id(a, c), g.edge_id(b, c)


def triangle_count(g: TemporalGraph, tri: Triangle, delta: int) -> int:
    a, b, c = tri
    return count_triangle_sliding(g.timestamps(a, b), g.timestamps(a, c), g.timestamps(b, c), delta)


def temporal_support_all(g: TemporalGraph, delta: int):
    """Temporal support of every static edge plus per-triangle counts.

    Returns
    -------
    support : dict[(u, v), int]
        Entry for every static edge, zero when it closes no counted triangle.
    counts : dict[(a, b, c), int]
        Triangles with at least one qualifying timestamp triple.
    """
    support = dict.fromkeys(g.edges, 0)
    counts: dict[Triangle, int] = {}
    for a, b, c in enumerate_triangles(g):
        n = count_triangle_sliding(g.timestamps(a, b), g.timestamps(a, c), g.timestamps(b, c), delta)
        if n:
            counts[(a, b, c)] = n
            support[(a, b)] += n
            support[(a, c)] += n
            support[(b, c)] += n
    return support, counts


def temporal_support_edge(g: TemporalGraph, e, delta: int,
                          early_stop_at: Optional[int] = None, cache: Optional[dict] = None) -> int:
    """Temporal support of one static edge.

    With ``early_stop_at`` the scan over the edge's triangles ends as soon as
    the running sum reaches that value, so the result is exact only when it is
    below the bound. ``cache`` maps triangle keys to counts and is filled in.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise UnknownEdgeError(e)
    tuv = g.timestamps(u, v)
    total = 0
    for w in sorted(g.common_neighbors(u, v)):
        key = tuple(sorted((u, v, w)))
        n = None if cache is None else cache.get(key)
        if n is None:
            n = count_triangle_sliding(tuv, g.timestamps(u, w), g.timestamps(v, w), delta)
            if cache is not None:
                cache[key] = n
        total += n
        if early_stop_at is not None and total >= early_stop_at:
            break
    return total
