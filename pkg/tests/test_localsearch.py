import random

import pytest

from oracles import brute_support, qualifying_triangles, random_graph
from temporal_truss.graph import TemporalGraph
from temporal_truss.localsearch import ExpandState, expanding, ls_search
from temporal_truss.truss import PAPER, STRICT, gs_search


def expansion_oracle(g, q, delta, k, strict):
    """Fixpoint over triangles whose three edges all have global support >= k."""
    sup, _ = brute_support(g, delta)
    tris = qualifying_triangles(g, delta, lambda e: sup[e] >= k)
    admitted = {e for e in g.edges if q in e and sup[e] >= k}
    grew = True
    while grew:
        grew = False
        verts = {x for e in admitted for x in e}
        for t in tris:
            if set(t) <= admitted:
                continue
            touch = bool(set(t) & admitted) if strict else bool({x for e in t for x in e} & verts)
            if touch:
                admitted |= set(t)
                grew = True
    return admitted


def first_batch(g, q, delta, k, mode):
    state = ExpandState(g, delta, q, mode)
    batch, deferred = expanding(state, k)
    return {g.edges[e] for e in batch}, {g.edges[e] for e in deferred}


@pytest.mark.parametrize("mode", [PAPER, STRICT])
def test_expansion_matches_filtered_bfs(mode):
    rng = random.Random(21)
    for _ in range(80):
        g = random_graph(rng, n_max=11, p=0.5)
        q = rng.randrange(g.n)
        delta = rng.randint(0, g.t_max)
        sup, _ = brute_support(g, delta)
        k = rng.randint(0, max(sup.values()) + 1)
        batch, _ = first_batch(g, q, delta, k, mode)
        assert batch == expansion_oracle(g, q, delta, k, mode == STRICT)


def test_threshold_zero_and_unreachable():
    g = TemporalGraph(5, {(0, 1): [1], (0, 2): [1], (1, 2): [1], (2, 3): [1], (3, 4): [7]})
    batch, _ = first_batch(g, 0, 0, 0, STRICT)
    assert batch == {(0, 1), (0, 2), (1, 2)}
    batch, deferred = first_batch(g, 0, 0, 5, PAPER)
    assert batch == set() and deferred == {(0, 1), (0, 2)}


def test_expansion_shrinks_as_threshold_grows():
    rng = random.Random(22)
    for _ in range(100):
        g = random_graph(rng, n_max=10, p=0.55)
        q = rng.randrange(g.n)
        delta = rng.randint(0, g.t_max)
        k1 = rng.randint(0, 8)
        k2 = k1 + rng.randint(0, 8)
        for mode in (PAPER, STRICT):
            assert first_batch(g, q, delta, k2, mode)[0] <= first_batch(g, q, delta, k1, mode)[0]


def test_thresholds_strictly_decrease():
    rng = random.Random(23)
    for _ in range(100):
        g = random_graph(rng, n_max=12, p=0.5, ts_max=4)
        q = rng.randrange(g.n)
        delta = rng.randint(0, g.t_max)
        trace = []
        ls_search(g, q, delta, trace=trace)
        ks = [k for k, _, _ in trace]
        assert all(a > b for a, b in zip(ks, ks[1:]))


def test_equal_incident_supports_need_at_most_two_rounds():
    # a clique where every edge sees the same support
    g = TemporalGraph(5, {(u, v): [1, 2] for u in range(5) for v in range(u + 1, 5)})
    trace = []
    res = ls_search(g, 0, 1, trace=trace)
    assert len(trace) <= 2
    assert res.k_star == 24 and res.vertices() == set(range(5))


def test_early_stop_does_not_change_answers():
    rng = random.Random(24)
    for _ in range(60):
        g = random_graph(rng, n_max=12, p=0.5)
        q = rng.randrange(g.n)
        delta = rng.randint(0, g.t_max)
        assert ls_search(g, q, delta, early_stop=False).key() == ls_search(g, q, delta).key()


@pytest.mark.parametrize("mode", [PAPER, STRICT])
def test_agrees_with_global_search(mode):
    rng = random.Random(25)
    for _ in range(200):
        g = random_graph(rng, n_max=14, p=0.45, ts_max=4)
        q = rng.randrange(g.n)
        delta = rng.randint(0, g.t_max)
        assert ls_search(g, q, delta, mode).key() == gs_search(g, q, delta, mode).key()
