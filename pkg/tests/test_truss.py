import random

import pytest

from oracles import brute_qmdt, brute_support, brute_trussness, random_graph, triangle_graph_components
from temporal_truss.graph import TemporalGraph
from temporal_truss.truss import (PAPER, STRICT, CommunityResult, decompose, gs_search,
                                  higher_order_components, peel)


def small_graphs(seed, count, max_edges=12):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, n_max=8, n_min=4, p=0.55, t_max=6, ts_max=3)
        if g.m_static <= max_edges:
            out.append(g)
    return out


def test_triangle_free_graph():
    g = TemporalGraph(4, {(0, 1): [1], (1, 2): [2], (2, 3): [1]})
    k, tr = decompose(g, 5)
    assert k == 0 and set(tr.values()) == {0}
    assert gs_search(g, 1, 5).k_star == 0


def test_single_coincident_triangle():
    g = TemporalGraph(3, {(0, 1): [4], (0, 2): [4], (1, 2): [4]})
    k, tr = decompose(g, 0)
    assert k == 1 and set(tr.values()) == {1}


def test_trussness_matches_exhaustive_subgraphs():
    for g in small_graphs(1, 40):
        for delta in range(g.t_max + 1):
            _, tr = decompose(g, delta)
            assert tr == brute_trussness(g, delta)


def test_anchored_peel_agrees_on_anchor_edges():
    for g in small_graphs(2, 25):
        delta = g.t_max // 2
        full_k, full = decompose(g, delta)
        for q in range(g.n):
            if not g.degree(q):
                continue
            k, part = decompose(g, delta, anchor=q)
            assert k == max(full[e] for e in g.edges if q in e)
            for e, t in part.items():
                assert t == full[e]


def test_peel_orders_ties_by_edge_id():
    tris = [(0, 1, 2, 1), (2, 3, 4, 1)]
    res = peel(tris)
    assert res.k_max == 1
    assert res.trussness == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}
    assert res.at_least(1) == {0, 1, 2, 3, 4}


def test_subgraph_support_bounded_by_global():
    rng = random.Random(4)
    for _ in range(100):
        g = random_graph(rng, n_max=9)
        delta = rng.randint(0, g.t_max)
        gsup, _ = brute_support(g, delta)
        keep = {e: ts for e, ts in zip(g.edges, g.times) if rng.random() < 0.7}
        sub = TemporalGraph(g.n, keep)
        ssup, _ = brute_support(sub, delta)
        for e, s in ssup.items():
            assert s <= gsup[e]


def two_triangles(shared_vertex):
    third = 2 if shared_vertex else 5
    et = {(0, 1): [1], (0, 2): [1], (1, 2): [1], (third, 3): [1], (third, 4): [1], (3, 4): [1]}
    return TemporalGraph(6, et)


def test_components_disjoint_triangles():
    g = two_triangles(False)
    comps = higher_order_components(g, g.edges, 0, [(0, 1)])
    assert comps == [{(0, 1), (0, 2), (1, 2)}]


def test_components_vertex_sharing():
    g = two_triangles(True)
    assert higher_order_components(g, g.edges, 0, [(0, 1)], mode=PAPER) == [set(g.edges)]
    strict = higher_order_components(g, g.edges, 0, [(0, 1)], mode=STRICT)
    assert strict == [{(0, 1), (0, 2), (1, 2)}]


def test_components_ignore_inactive_triangles():
    g = TemporalGraph(3, {(0, 1): [1], (0, 2): [5], (1, 2): [9]})
    assert higher_order_components(g, g.edges, 3, [(0, 1)]) == []
    assert higher_order_components(g, g.edges, 8, [(0, 1)]) == [set(g.edges)]


@pytest.mark.parametrize("mode", [PAPER, STRICT])
def test_components_match_triangle_graph(mode):
    rng = random.Random(9)
    for _ in range(60):
        g = random_graph(rng, n_max=11, p=0.45)
        delta = rng.randint(0, g.t_max)
        edge_set = {e for e in g.edges if rng.random() < 0.8}
        seeds = [e for e in g.edges if e in edge_set and rng.random() < 0.3]
        got = higher_order_components(g, edge_set, delta, seeds, mode=mode)
        want = triangle_graph_components(g, delta, edge_set, sorted(seeds, key=g.edges.index), mode == STRICT)
        assert sorted(map(sorted, got)) == sorted(map(sorted, want))


@pytest.mark.parametrize("mode", [PAPER, STRICT])
def test_gs_matches_exhaustive_qmdt(mode):
    for g in small_graphs(3, 30):
        for q in range(g.n):
            delta = (q * 3) % (g.t_max + 1)
            res = gs_search(g, q, delta, mode)
            assert res.key() == brute_qmdt(g, q, delta, mode == STRICT)


def test_result_helpers():
    g = TemporalGraph(3, {(0, 1): [1, 2], (0, 2): [1], (1, 2): [2]})
    res = gs_search(g, 0, 1)
    assert res.k_star == 2
    assert res.vertices() == {0, 1, 2}
    assert res.temporal_edges(g) == [(0, 1, 1), (0, 1, 2), (0, 2, 1), (1, 2, 2)]
    assert CommunityResult.empty(0, 1).key() == (0, ())
