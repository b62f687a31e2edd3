import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_graph
from temporal_truss.graph import (GraphFormatError, TemporalGraph, UnknownEdgeError, UnknownVertexError,
                                  from_temporal_edges, induced_subgraph, load_graph, slice_graph,
                                  write_edge_list)


def write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_dedup_self_loop_and_rebase(tmp_path):
    g = load_graph(write(tmp_path, "1 2 5\n2 1 5\n3 3 9\n"))
    assert g.n == 2
    assert g.edges == [(0, 1)]
    assert g.times == [(1,)]
    assert g.labels == [1, 2]


def test_time_scale(tmp_path):
    g = load_graph(write(tmp_path, "0 1 10\n0 1 20\n1 2 20\n"), time_scale=10)
    assert dict(zip(g.edges, g.times)) == {(0, 1): (1, 2), (1, 2): (2,)}
    assert g.t_max == 2


def test_no_rebase_keeps_raw_times(tmp_path):
    g = load_graph(write(tmp_path, "0 1 3\n1 2 7\n"), rebase=False)
    assert g.times == [(3,), (7,)]
    with pytest.raises(GraphFormatError):
        load_graph(write(tmp_path, "0 1 0\n", "z.txt"), rebase=False)


def test_comments_and_blank_lines(tmp_path):
    g = load_graph(write(tmp_path, "# header\n% other\n\n0 1 1\n"))
    assert g.m_temporal == 1


@pytest.mark.parametrize("text, line", [("0 1 1\n0 x 2\n", 2), ("0 1\n", 1), ("\n\n1 2 3 4\n5\n", 4)])
def test_bad_lines_report_position(tmp_path, text, line):
    p = write(tmp_path, text)
    with pytest.raises(GraphFormatError) as ei:
        load_graph(p)
    assert ei.value.line == line
    assert f":{line}:" in str(ei.value)


def test_empty_input_is_an_error(tmp_path):
    with pytest.raises(GraphFormatError):
        load_graph(write(tmp_path, "# nothing\n"))
    with pytest.raises(GraphFormatError):
        load_graph(write(tmp_path, "4 4 1\n", "loops.txt"))


def test_random_file_counts_distinct_triples(tmp_path):
    rng = random.Random(3)
    lines = [(rng.randrange(30), rng.randrange(30), rng.randint(1, 50)) for _ in range(1000)]
    p = write(tmp_path, "".join(f"{u} {v} {t}\n" for u, v, t in lines))
    g = load_graph(p, rebase=False)
    expect = {(min(u, v), max(u, v), t) for u, v, t in lines if u != v}
    got = {(g.labels[u], g.labels[v], t) for u, v, t in g.temporal_edges()}
    assert got == expect
    assert g.m_temporal == len(expect)


def test_write_and_reload_round_trip(tmp_path):
    g = random_graph(random.Random(1), n_max=12)
    p = tmp_path / "out.txt"
    write_edge_list(g, p)
    h = load_graph(p, rebase=False)
    assert sorted(h.temporal_edges()) == sorted((h.labels.index(u), h.labels.index(v), t)
                                               for u, v, t in g.temporal_edges())


def test_accessors():
    g = TemporalGraph(4, {(1, 0): [3, 1, 3], (1, 2): [2], (0, 2): [5]})
    assert g.edges == [(0, 1), (0, 2), (1, 2)]
    assert g.timestamps(1, 0) == (1, 3)
    assert g.common_neighbors(0, 1) == {2}
    assert g.degree(3) == 0 and g.temporal_degree(0) == 3
    with pytest.raises(UnknownEdgeError):
        g.edge_id(0, 3)
    with pytest.raises(UnknownVertexError):
        g.check_vertex(4)
    with pytest.raises(ValueError):
        TemporalGraph(2, {(1, 1): [1]})


def test_fingerprint_tracks_content():
    a = TemporalGraph(3, {(0, 1): [1, 2]})
    b = TemporalGraph(3, {(1, 0): [2, 1]})
    c = TemporalGraph(3, {(0, 1): [1, 3]})
    assert a.fingerprint() == b.fingerprint() != c.fingerprint()
    assert len(a.fingerprint()) == 16


def test_induced_subgraph_edges():
    rng = random.Random(7)
    g = random_graph(rng, n_max=15)
    assert induced_subgraph(g, range(g.n)) == g
    assert induced_subgraph(g, []).m_static == 0
    for _ in range(20):
        s = {v for v in range(g.n) if rng.random() < 0.5}
        h = induced_subgraph(g, s)
        assert set(h.temporal_edges()) == {(u, v, t) for u, v, t in g.temporal_edges() if u in s and v in s}


def test_slice_examples():
    g = TemporalGraph(2, {(0, 1): [1, 5, 9]})
    assert slice_graph(g, 5, 0).timestamps(0, 1) == (5,)
    full = slice_graph(g, 1, g.t_max - 1)
    assert set(full.temporal_edges()) == set(g.temporal_edges())
    with pytest.raises(ValueError):
        slice_graph(g, 5, 10)
    with pytest.raises(ValueError):
        slice_graph(g, 1, -1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_slice_matches_range_filter(seed, data):
    g = random_graph(random.Random(seed), t_max=12)
    start = data.draw(st.integers(1, g.t_max))
    delta = data.draw(st.integers(0, g.t_max - start))
    view = slice_graph(g, start, delta)
    expect = {(u, v, t) for u, v, t in g.temporal_edges() if start <= t <= start + delta}
    assert set(view.temporal_edges()) == expect
    assert set(view.to_graph().temporal_edges()) == expect
    for i, (u, v) in enumerate(g.edges):
        assert view.count(i) == len(view.timestamps(u, v))


def test_from_triples_remaps_labels():
    g = from_temporal_edges([(10, 30, 4), (30, 20, 6)])
    assert g.labels == [10, 20, 30]
    assert g.vertex_of_label(30) == 2
    assert g.times == [(1,), (3,)]
