"""Synthetic temporal graphs with optional planted dense communities.

Sampling uses only integer draws from :class:`random.Random`, so a given
spec yields the same graph on every platform.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt
from typing import Optional

from .graph import Edge, TemporalGraph, induced_subgraph


@dataclass(frozen=True)
class Planted:
    """``count`` disjoint cliques of ``size`` vertices.

    Every clique edge gets ``timestamps`` distinct stamps (capped at
    ``spread + 1``) inside one window of width
    ``spread`` (placed at random per community). ``external_spread``, when
    set, narrows the window used for background edges touching a planted
    vertex; by default they are spread over the whole time axis like any
    other background edge.
    """

    size: int
    spread: int
    external_spread: Optional[int] = None
    timestamps: int = 3
    count: int = 1


@dataclass(frozen=True)
class GenSpec:
    n: int
    m_static: int
    t_max: int
    seed: int = 0
    max_timestamps: int = 3
    planted: Optional[Planted] = None


@dataclass(frozen=True)
class Generated:
    graph: TemporalGraph
    communities: tuple[frozenset, ...]


def pair_of(k: int) -> Edge:
    """Decode the ``k``-th vertex pair in the order (0,1), (0,2), (1,2), (0,3), ..."""
    v = (1 + isqrt(1 + 8 * k)) // 2
    u = k - v * (v - 1) // 2
    return u, v


def _check(spec: GenSpec):
    if spec.n < 0 or spec.m_static < 0:
        raise ValueError("n and m_static must be non-negative")
    if spec.m_static > spec.n * (spec.n - 1) // 2:
        raise ValueError(f"m_static={spec.m_static} exceeds {spec.n * (spec.n - 1) // 2} vertex pairs")
    if spec.t_max < 1:
        raise ValueError("t_max must be >= 1")
    if spec.max_timestamps < 1:
        raise ValueError("max_timestamps must be >= 1")
    p = spec.planted
    if p is not None:
        if p.size < 3 or p.count < 1 or p.timestamps < 1:
            raise ValueError("planted communities need size >= 3, count >= 1, timestamps >= 1")
        if p.size * p.count > spec.n:
            raise ValueError(f"{p.count} planted communities of size {p.size} do not fit in n={spec.n}")
        if not 0 <= p.spread < spec.t_max:
            raise ValueError("planted spread must lie in [0, t_max)")


def generate_with_truth(spec: GenSpec) -> Generated:
    """Like :func:`generate` but also returns the planted vertex sets."""
    _check(spec)
    rng = random.Random(spec.seed)
    edge_times: dict[Edge, set[int]] = {}

    def stamps(lo, hi, k):
        return {rng.randint(lo, hi) for _ in range(k)}

    planted_of: dict[int, int] = {}
    comms: list[frozenset] = []
    p = spec.planted
    if p is not None:
        members = rng.sample(range(spec.n), p.size * p.count)
        for c in range(p.count):
            comm = sorted(members[c * p.size:(c + 1) * p.size])
            comms.append(frozenset(comm))
            start = rng.randint(1, spec.t_max - p.spread)
            for i, u in enumerate(comm):
                planted_of[u] = c
                for v in comm[i + 1:]:
                    k = min(p.timestamps, p.spread + 1)
                    edge_times[(u, v)] = set(rng.sample(range(start, start + p.spread + 1), k))

    total = spec.n * (spec.n - 1) // 2
    for k in rng.sample(range(total), spec.m_static):
        u, v = pair_of(k)
        if (u, v) in edge_times:
            continue
        lo, hi = 1, spec.t_max
        if p is not None and p.external_spread is not None and (u in planted_of or v in planted_of):
            hi = min(spec.t_max, p.external_spread)
        edge_times[(u, v)] = stamps(lo, hi, rng.randint(1, spec.max_timestamps))
    return Generated(TemporalGraph(spec.n, edge_times), tuple(comms))


def generate(spec: GenSpec) -> TemporalGraph:
    """Random static skeleton with 1..``max_timestamps`` uniform stamps per edge.

    Background pairs are drawn without replacement; planted clique edges
    take precedence when a background pair lands inside a community.
    """
    return generate_with_truth(spec).graph


def downsample_vertices(g: TemporalGraph, fraction: float, seed: int = 0) -> TemporalGraph:
    """Subgraph induced by a uniform random ``fraction`` of the vertices (ids kept)."""
    if not 0 < fraction <= 1:
        raise ValueError("fraction must lie in (0, 1]")
    if fraction == 1:
        return g
    k = int(fraction * g.n + 0.5)
    keep = random.Random(seed).sample(range(g.n), k)
    return induced_subgraph(g, keep)
