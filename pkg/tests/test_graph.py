import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packlib.graph import (
    Graph,
    GraphClass,
    GraphError,
    build,
    classify,
    components,
    cycle,
    cycle_vertices,
    disjoint_union,
    double_lasso,
    double_lasso_labeling,
    empty,
    girth,
    inserted_star,
    is_connected,
    is_forest,
    lasso,
    leaves,
    longest_path_in_tree,
    nodes,
    path,
    spider,
    spider_arm,
    star,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


def brute_girth(g):
    best = math.inf
    for u, v in g.edges:
        h = g.remove_edges([(u, v)])
        dist = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for x in frontier:
                for y in h.adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def test_rejects_loops_and_multi_edges():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 2)])


def test_girth_of_families():
    assert girth(cycle(9)) == 9
    assert girth(path(5)) == math.inf
    assert girth(lasso(12, 9)) == 9
    assert girth(double_lasso(20, 9, 10)) == 9
    assert girth(disjoint_union(cycle(3), cycle(11))) == 3


@given(graphs())
@settings(max_examples=150, deadline=None)
def test_girth_matches_edge_removal_definition(g):
    assert girth(g) == brute_girth(g)


def test_leaves_and_nodes():
    g = spider(1, 2, 3)
    assert leaves(g) == {1, 3, 6}
    assert nodes(g) == {0, 2, 5}
    assert nodes(path(2)) == frozenset()


def test_components_order_and_connectivity():
    g = disjoint_union(path(2), cycle(4), empty(1))
    comps = components(g)
    assert [len(c) for c in comps] == [4, 2, 1]
    assert not is_connected(g)
    assert is_forest(disjoint_union(path(3), star(4)))


def test_inserted_star_and_spider_shapes():
    g = inserted_star(5, 2)
    assert g.n == 7 and g.m == 6 and g.max_degree() == 4
    s = spider(2, 2, 3)
    assert s.n == 8 and s.degree(0) == 3
    assert s.has_edge(0, spider_arm((2, 2, 3), 3, 1))
    assert s.degree(spider_arm((2, 2, 3), 3, 3)) == 1


@pytest.mark.parametrize("cls", [
    GraphClass("Path", (7,)),
    GraphClass("Cycle", (9,)),
    GraphClass("Star", (6,)),
    GraphClass("InsertedStar", (5, 2)),
    GraphClass("Lasso", (14, 9)),
    GraphClass("DoubleLasso", (25, 10, 9)),
    GraphClass("Spider", (2, 2, 3)),
])
def test_classify_round_trip(cls):
    g = build(cls)
    assert classify(g) == [cls]


@given(st.integers(3, 30), st.integers(3, 30))
def test_lasso_classify_round_trip(l, s):
    if s > l:
        l, s = s, l
    if s == l:
        assert classify(lasso(l, s)) == [GraphClass("Cycle", (l,))]
    else:
        assert classify(lasso(l, s)) == [GraphClass("Lasso", (l, s))]


@given(st.integers(3, 12), st.integers(3, 12), st.integers(0, 6))
def test_double_lasso_labeling_recovers_structure(s, t, gap):
    l = s + t + gap
    g = double_lasso(l, s, t)
    order, s2, t2 = double_lasso_labeling(g, range(g.n))
    assert sorted(order) == list(range(l))
    # the recovered labeling describes the same graph
    h = double_lasso(len(order), s2, t2)
    assert {frozenset((order[u], order[v])) for u, v in h.edges} == {frozenset(e) for e in g.edges}


def test_cycle_vertices_in_cyclic_order():
    g = lasso(12, 9)
    cyc = cycle_vertices(g, range(g.n))
    assert sorted(cyc) == list(range(9))
    assert all(g.has_edge(cyc[i], cyc[(i + 1) % 9]) for i in range(9))


def test_longest_path_in_tree():
    g = spider(1, 3, 4)
    p = longest_path_in_tree(g, range(g.n))
    assert len(p) == 8
    assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_remove_vertices_keeps_induced_edges(g):
    removed = list(range(0, g.n, 3))
    h, kept = g.remove_vertices(removed)
    assert h.n == g.n - len(removed)
    expected = {(kept.index(u), kept.index(v)) for u, v in g.edges if u in kept and v in kept}
    assert set(h.edges) == expected
