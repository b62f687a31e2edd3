from temporal_truss.gen import GenSpec, generate
from temporal_truss.harness import bench, default_engines, degree_buckets, random_instance, sample_queries, verify
from temporal_truss.truss import CommunityResult


def test_instances_are_reproducible():
    a, b = random_instance(17), random_instance(17)
    assert a.g == b.g and (a.q, a.delta) == (b.q, b.delta)


def test_zero_instances_pass():
    rep = verify(0)
    assert rep.passed and rep.checks == 0


def test_default_suite_passes():
    rep = verify(200)
    assert rep.passed, rep.divergence
    assert rep.checks == 400


def test_doctored_engine_is_caught():
    engines = default_engines()
    real = engines["ls"]

    def off_by_one(inst, mode):
        res = real(inst, mode)
        return CommunityResult(res.k_star + 1, res.components, res.query, res.delta, res.mode)

    engines["ls"] = off_by_one
    rep = verify(10, seed=5, engines=engines)
    assert not rep.passed
    assert rep.divergence["seed"] == 5
    assert rep.divergence["k_star"]["ls"] == rep.divergence["k_star"]["gs"] + 1


def test_buckets_and_sampling():
    g = generate(GenSpec(n=103, m_static=300, t_max=10, seed=1))
    buckets = degree_buckets(g)
    sizes = [len(b) for b in buckets]
    assert max(sizes) - min(sizes) <= 1
    assert sum(sizes) == sum(1 for v in range(g.n) if g.degree(v))
    degs = [[g.temporal_degree(v) for v in b] for b in buckets]
    assert all(max(a) <= min(b) for a, b in zip(degs, degs[1:]))
    qs = sample_queries(g, 100, seed=3)
    assert len(qs) == 100
    assert [sum(1 for b, _ in qs if b == i) for i in range(5)] == [20] * 5
    assert qs == sample_queries(g, 100, seed=3)


def test_bench_smoke():
    g = generate(GenSpec(n=40, m_static=150, t_max=10, seed=2))
    rep = bench(g, 3, n_queries=10, reps=1)
    assert {r.engine for r in rep.rows} == {"gs", "ls", "tts"}
    assert all(r.median_ms >= 0 and r.p10_ms <= r.p90_ms for r in rep.rows)
    assert sum(r.queries for r in rep.rows if r.engine == "gs" and r.bucket != "all") == 10
