"""Cross-engine verification and latency benchmarks."""
from __future__ import annotations

import os
import random
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .gen import GenSpec, Planted, generate
from .graph import TemporalGraph
from .localsearch import ls_search
from .truss import MODES, CommunityResult, gs_search
from .ttindex import TTIndex, build_index
from .ttsquery import tts_query

ENGINES = ("gs", "ls", "tts")
THREADS_ENV = "TEMPORAL_TRUSS_THREADS"


def thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return os.cpu_count() or 1


def run_engine(name: str, g: TemporalGraph, q: int, delta: int, mode: str,
               index: Optional[TTIndex] = None) -> CommunityResult:
    if name == "gs":
        return gs_search(g, q, delta, mode)
    if name == "ls":
        return ls_search(g, q, delta, mode)
    if name == "tts":
        if index is None:
            raise ValueError("the tts engine needs an index")
        return tts_query(g, index, q, delta, mode)
    raise ValueError(f"unknown engine {name!r}; expected one of {ENGINES}")


# -- verification ------------------------------------------------------------

@dataclass
class Instance:
    seed: int
    g: TemporalGraph
    q: int
    delta: int
    _index: Optional[TTIndex] = field(default=None, repr=False)

    @property
    def index(self) -> TTIndex:
        if self._index is None:
            self._index = build_index(self.g)
        return self._index


def random_instance(seed: int) -> Instance:
    """A small random graph, query vertex and delta, fully determined by ``seed``."""
    rng = random.Random(seed)
    n = rng.randint(5, 24)
    t_max = rng.randint(1, 10)
    pairs = n * (n - 1) // 2
    planted = None
    if rng.randrange(2):
        size = rng.randint(3, min(6, n))
        planted = Planted(size=size, spread=rng.randint(0, t_max - 1),
                          timestamps=rng.randint(1, 3))
    spec = GenSpec(n=n, m_static=rng.randint(n, max(n, pairs * 2 // 3)), t_max=t_max,
                   seed=rng.getrandbits(32), max_timestamps=rng.randint(1, 4), planted=planted)
    g = generate(spec)
    live = [v for v in range(g.n) if g.degree(v)]
    q = rng.choice(live) if live and rng.randrange(10) else rng.randrange(g.n)
    return Instance(seed, g, q, rng.randint(0, g.t_max))


EngineFn = Callable[[Instance, str], CommunityResult]


def default_engines() -> dict[str, EngineFn]:
    return {name: (lambda inst, mode, _n=name: run_engine(_n, inst.g, inst.q, inst.delta, mode, inst.index))
            for name in ENGINES}


@dataclass
class VerifyReport:
    instances: int
    checks: int
    divergence: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.divergence is None


def verify(n_instances: int = 200, seed: int = 0, modes: Sequence[str] = MODES,
           engines: Optional[dict[str, EngineFn]] = None) -> VerifyReport:
    """Run every engine on seeded instances; stop at the first disagreement."""
    engines = engines or default_engines()
    checks = 0
    for i in range(n_instances):
        inst = random_instance(seed + i)
        for mode in modes:
            results = {name: fn(inst, mode) for name, fn in engines.items()}
            checks += 1
            keys = {name: r.key() for name, r in results.items()}
            if len(set(keys.values())) > 1:
                div = {"seed": inst.seed, "mode": mode, "q": inst.q, "delta": inst.delta,
                       "k_star": {name: r.k_star for name, r in results.items()}}
                return VerifyReport(i + 1, checks, div)
    return VerifyReport(n_instances, checks)


# -- benchmarks ----------------------------------------------------------------

def degree_buckets(g: TemporalGraph, n_buckets: int = 5) -> list[list[int]]:
    """Non-isolated vertices sorted by temporal degree, split into near-equal buckets."""
    live = sorted((v for v in range(g.n) if g.degree(v)), key=lambda v: (g.temporal_degree(v), v))
    return [list(map(int, b)) for b in np.array_split(np.asarray(live, dtype=np.int64), n_buckets)]


def sample_queries(g: TemporalGraph, n_queries: int, seed: int = 0,
                   n_buckets: int = 5) -> list[tuple[int, int]]:
    """``(bucket, vertex)`` pairs spread evenly over the degree buckets."""
    rng = random.Random(seed)
    buckets = degree_buckets(g, n_buckets)
    out = []
    for b, members in enumerate(buckets):
        want = n_queries // n_buckets + (b < n_queries % n_buckets)
        if not members:
            continue
        if want <= len(members):
            picks = rng.sample(members, want)
        else:
            picks = [rng.choice(members) for _ in range(want)]
        out.extend((b, v) for v in picks)
    return out


_worker: dict = {}


def _init_worker(g, index):
    _worker["g"] = g
    _worker["index"] = index


def _time_one(args):
    engine, q, delta, mode, reps = args
    g, index = _worker["g"], _worker["index"]
    runs = []
    k = 0
    for _ in range(reps):
        t0 = time.perf_counter()
        res = run_engine(engine, g, q, delta, mode, index)
        runs.append(time.perf_counter() - t0)
        k = res.k_star
    return float(np.median(runs)), k


@dataclass
class BenchRow:
    engine: str
    bucket: str
    queries: int
    median_ms: float
    p10_ms: float
    p90_ms: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class BenchReport:
    rows: list[BenchRow]
    samples: dict[str, list[float]]

    def median(self, engine: str) -> float:
        return float(np.median(self.samples[engine]))


def bench(g: TemporalGraph, delta: int, engines: Sequence[str] = ENGINES, n_queries: int = 100,
          reps: int = 1, seed: int = 0, mode: str = "paper", index: Optional[TTIndex] = None,
          queries: Optional[list[tuple[int, int]]] = None, workers: int = 1) -> BenchReport:
    """Per-query latency of each engine, summarised overall and per degree bucket.

    Each query's time is the median of ``reps`` runs. ``workers`` > 1 spreads
    queries over processes (capped by ``TEMPORAL_TRUSS_THREADS``).
    """
    if "tts" in engines and index is None:
        index = build_index(g)
    if queries is None:
        queries = sample_queries(g, n_queries, seed)
    workers = max(1, min(workers, thread_cap()))
    samples: dict[str, list[float]] = {}
    rows: list[BenchRow] = []
    for engine in engines:
        jobs = [(engine, q, delta, mode, reps) for _, q in queries]
        if workers > 1:
            with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(g, index)) as ex:
                timed = list(ex.map(_time_one, jobs))
        else:
            _init_worker(g, index)
            timed = [_time_one(j) for j in jobs]
        secs = [t for t, _ in timed]
        samples[engine] = secs
        by_bucket: dict[str, list[float]] = {"all": secs}
        for (b, _), t in zip(queries, secs):
            by_bucket.setdefault(str(b), []).append(t)
        for name, ts in by_bucket.items():
            ms = np.asarray(ts) * 1e3
            rows.append(BenchRow(engine, name, len(ts), float(np.median(ms)),
                                 float(np.percentile(ms, 10)), float(np.percentile(ms, 90))))
    return BenchReport(rows, samples)
