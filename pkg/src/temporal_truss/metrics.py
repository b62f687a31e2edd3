"""Higher-order temporal density (HTD) and conductance (HTC) of a vertex set."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

from .graph import TemporalGraph
from .tricount import count_triangle_sliding, enumerate_triangles

DISTINCT = "distinct"
WINDOW = "window"


@dataclass(frozen=True)
class MetricReport:
    htd: float
    htc: float
    delta_star: int
    inside: int
    cut: int
    vol_s: int
    vol_rest: int

    @property
    def triangle_counts(self):
        return (self.inside, self.cut, self.vol_s, self.vol_rest)

    def as_dict(self) -> dict:
        return {"htd": self.htd, "htc": self.htc, "delta_star": self.delta_star,
                "inside": self.inside, "cut": self.cut,
                "vol_s": self.vol_s, "vol_rest": self.vol_rest}


def estimate_delta_star(g: TemporalGraph) -> int:
    """Rounded mean over static edges (with >= 2 timestamps) of their mean gap.

    Falls back to 1 when no edge repeats.
    """
    if g.m_temporal == 0:
        raise ValueError("cannot estimate delta* on a graph without temporal edges")
    gaps = [(ts[-1] - ts[0]) / (len(ts) - 1) for ts in g.times if len(ts) >= 2]
    if not gaps:
        return 1
    mean = sum(gaps) / len(gaps)
    return max(1, int(mean + 0.5))


def _counts(g: TemporalGraph, delta_star: int):
    for a, b, c in enumerate_triangles(g):
        n = count_triangle_sliding(g.timestamps(a, b), g.timestamps(a, c),
                                   g.timestamps(b, c), delta_star)
        if n:
            yield (a, b, c), n


def _time_extent(g: TemporalGraph, s: set[int], ts_mode: str) -> int:
    stamps = set()
    for (u, v), ts in zip(g.edges, g.times):
        if u in s and v in s:
            stamps.update(ts)
    if not stamps:
        return 0
    if ts_mode == DISTINCT:
        return len(stamps)
    if ts_mode == WINDOW:
        return max(stamps) - min(stamps) + 1
    raise ValueError(f"unknown time-extent mode {ts_mode!r}")


def htd(g: TemporalGraph, s: Iterable[int], delta_star: int, ts_mode: str = DISTINCT,
        _inside: Optional[int] = None) -> float:
    """Cube root of (inside temporal triangles) / (|S|(|S|-1)(|S|-2) |T_S|^3).

    ``|T_S|`` is the number of distinct timestamps inside the induced
    subgraph, or its time span with ``ts_mode="window"``.
    """
    s = set(s)
    k = len(s)
    if k < 3:
        return 0.0
    if _inside is None:
        _inside = sum(n for (a, b, c), n in _counts(g, delta_star) if a in s and b in s and c in s)
    if _inside == 0:
        return 0.0
    ts = _time_extent(g, s, ts_mode)
    denom = k * (k - 1) * (k - 2) * ts ** 3
    return (_inside / denom) ** (1.0 / 3.0) if denom else 0.0


def triangle_classes(g: TemporalGraph, s: Iterable[int], delta_star: int):
    """``(inside, cut, vol_s, vol_rest)`` over temporal triangles of span <= delta*."""
    s = set(s)
    inside = cut = vol_s = vol_rest = 0
    for (a, b, c), n in _counts(g, delta_star):
        k = (a in s) + (b in s) + (c in s)
        if k == 3:
            inside += n
        if k > 0:
            vol_s += n
        if k < 3:
            vol_rest += n
        if 0 < k < 3:
            cut += n
    return inside, cut, vol_s, vol_rest


def htc(g: TemporalGraph, s: Iterable[int], delta_star: int) -> float:
    _, cut, vs, vr = triangle_classes(g, s, delta_star)
    den = min(vs, vr)
    return cut / den if den else 0.0


def evaluate(g: TemporalGraph, s: Iterable[int], delta_star: Optional[int] = None,
             ts_mode: str = DISTINCT) -> MetricReport:
    s = set(s)
    if delta_star is None:
        delta_star = estimate_delta_star(g)
    inside, cut, vs, vr = triangle_classes(g, s, delta_star)
    den = min(vs, vr)
    return MetricReport(
        htd=htd(g, s, delta_star, ts_mode, _inside=inside),
        htc=cut / den if den else 0.0,
        delta_star=delta_star, inside=inside, cut=cut, vol_s=vs, vol_rest=vr,
    )
