import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packlib.generators import random_girth9_forest_plus, random_tree
from packlib.graph import (
    Graph,
    components,
    cycle,
    disjoint_union,
    empty,
    girth,
    nodes,
    path,
    spider,
    star,
)
from packlib.placement import Status, is_placed, vertex_status, verify
from packlib.search import embed
from packlib.theorem4 import (
    Refusal,
    claim_triple_placement,
    delete_leaves_priority,
    lemma31,
    pack4,
    parity_obstruction,
    refusal_reason,
    tree_pack4,
)


def tree_with_hub(n, hub_degree):
    """A hub with hub_degree - 1 pendant leaves and one long path."""
    edges = [(0, i) for i in range(1, hub_degree)]
    chain = [0] + list(range(hub_degree, n))
    edges += list(zip(chain, chain[1:]))
    return Graph(n, edges)


# -- refusals ------------------------------------------------------------------


def test_refusal_scope_and_size(catalog):
    assert refusal_reason(cycle(9), catalog)[0] is Refusal.OUTSIDE_SCOPE
    assert refusal_reason(path(7), catalog)[0] is Refusal.TOO_SMALL
    assert refusal_reason(disjoint_union(cycle(8), path(2)), catalog)[0] is Refusal.OUTSIDE_SCOPE


def test_parity_refusals(catalog):
    assert parity_obstruction(disjoint_union(cycle(7), empty(1)))
    assert pack4(disjoint_union(cycle(7), empty(1)), catalog=catalog).refusal is Refusal.PARITY
    # S_8 also breaks the degree bound; the parity check comes first
    assert pack4(star(8), catalog=catalog).refusal is Refusal.PARITY
    assert not parity_obstruction(path(8))


def test_max_degree_refusal(catalog):
    t = tree_with_hub(14, 11)  # max degree n - 3
    out = pack4(t, catalog=catalog)
    assert out.refusal is Refusal.MAX_DEGREE_TOO_HIGH and out.placement is None


def test_every_catalog_member_is_refused(catalog):
    assert len(catalog) > 0
    for t in catalog.members:
        assert pack4(t, catalog=catalog).refusal is Refusal.EXCEPTION_W


def test_disconnected_graphs_have_room_for_the_degree_bound():
    # a disconnected girth-9 graph with n - 1 edges has a cycle of order >= 9,
    # so no vertex can reach degree n - 3
    rng = random.Random(5)
    for _ in range(50):
        g = random_girth9_forest_plus(rng.randint(12, 40), rng)
        if g is not None and len(components(g)) > 1:
            assert g.max_degree() <= g.n - 4


# -- placements ------------------------------------------------------------------


def test_cycle_with_long_tree(catalog):
    t = spider(2, 3, 7)  # contains P_8
    g = disjoint_union(cycle(9), t)
    out = pack4(g, catalog=catalog)
    assert out.ok and verify(g, out.placement).ok


@pytest.mark.parametrize("g", [disjoint_union(cycle(9), path(2)), disjoint_union(cycle(9), empty(1))])
def test_lemma31_examples(g):
    p = lemma31(g)
    assert verify(g, p).ok


def test_path_and_random_trees(catalog):
    out = tree_pack4(path(8), catalog=catalog)
    assert out.ok and any("path_placement" in line for line in out.trace)
    rng = random.Random(30)
    done = 0
    while done < 5:
        t = random_tree(30, rng)
        if t.max_degree() > 26:
            continue
        out = tree_pack4(t, catalog=catalog)
        assert out.ok and verify(t, out.placement).ok
        done += 1


def test_trace_lines(catalog):
    out = pack4(disjoint_union(cycle(9), spider(2, 2, 2, 2, 2)), catalog=catalog)
    assert out.ok
    assert out.trace and all(line.strip().startswith("LEMMA ") for line in out.trace)


@given(st.integers(12, 45), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_random_qualifying_graphs_are_placed(n, seed):
    g = random_girth9_forest_plus(n, random.Random(seed))
    if g is None:
        return
    from packlib.wcatalog import default_catalog

    out = pack4(g, catalog=default_catalog())
    assert out.ok, (out.refusal, out.detail, g.edges)
    assert verify(g, out.placement).ok


def test_trivial_order_one():
    out = pack4(Graph(1))
    assert out.ok and out.placement.k == 4


# -- leaf deletion ----------------------------------------------------------------


def test_star_component_becomes_single_vertex():
    g = disjoint_union(cycle(12), star(5), empty(1))
    g = Graph(g.n, list(g.edges) + [])
    rec = delete_leaves_priority(g)
    star_vertices = set(range(12, 17))
    kept_star = [v for v in rec.kept if v in star_vertices]
    assert kept_star == [12]


def test_k2_component_loses_one_end():
    g = disjoint_union(cycle(10), path(2))
    rec = delete_leaves_priority(g)
    assert len([v for v in rec.kept if v >= 10]) == 1


def test_unicyclic_keeps_longest_lasso():
    # cycle 0..9 with a path 10-11-12 at 0 and a leaf 13 at 5
    g = Graph(14, [(i, (i + 1) % 10) for i in range(10)] + [(0, 10), (10, 11), (11, 12), (5, 13)])
    g = disjoint_union(g, empty(1))
    rec = delete_leaves_priority(g)
    assert rec.deleted == {13: 5}
    assert rec.reattach() == g


@given(st.integers(12, 40), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_leaf_deletion_round_trip_and_nodes(n, seed):
    g = random_girth9_forest_plus(n, random.Random(seed))
    if g is None:
        return
    rec = delete_leaves_priority(g)
    assert rec.reattach() == g
    g_nodes = nodes(g)
    for i in nodes(rec.reduced):
        assert rec.kept[i] in g_nodes
    assert rec.reduced.m == rec.reduced.n - 1 or len(components(g)) == 1
    for leaf, node in rec.deleted.items():
        assert g.degree(leaf) == 1 and g.adj[leaf][0] == node


# -- the degree-triple extension ----------------------------------------------------


def triple_graph(seq):
    """A long path H plus a path u v w attached by the given degrees and
    enough isolated vertices; returns (g, (u, v, w), isolated, h_order)."""
    h = 40
    u, v, w = h, h + 1, h + 2
    edges = [(i, i + 1) for i in range(h - 1)] + [(u, v), (v, w)]
    edges += [(u, 0), (u, 20)]
    x = {(3, 2, 2): 1, (3, 2, 3): 2, (3, 3, 3): 3}[seq]
    edges.append((w, 10))
    if seq[2] == 3:
        edges.append((w, 30))
    if seq[1] == 3:
        edges.append((v, 39))
    isolated = list(range(h + 3, h + 3 + x + 1))
    g = Graph(h + 3 + x + 1, edges)
    return g, (u, v, w), isolated


@pytest.mark.parametrize("seq", [(3, 2, 2), (3, 2, 3), (3, 3, 3)])
def test_claim_triple_with_dispersed_rest(seq):
    from packlib.constructions import path_placement

    g, triple, isolated = triple_graph(seq)
    assert girth(g) >= 9 and g.m == g.n - 1
    assert tuple(g.degree(x) for x in triple) == seq
    p = claim_triple_placement(g, triple, isolated, path_placement(40, 4))
    assert verify(g, p).ok


def test_claim_triple_table_with_mixed_neighbor():
    from packlib.constructions import path_placement
    from packlib.placement import Placement

    g, triple, isolated = triple_graph((3, 2, 2))
    base = path_placement(40, 4)
    # make w's outside neighbor share an image in copies 1 and 2 by swapping
    # host names in copy 2 only (a host relabeling keeps each copy valid)
    w1 = 10
    a, b = base.maps[0][w1], base.maps[1][w1]
    swap = {a: b, b: a}
    row = tuple(swap.get(x, x) for x in base.maps[1])
    candidate = Placement(40, (base.maps[0], row) + base.maps[2:])
    if verify(path(40), candidate).ok and vertex_status(candidate, w1) is Status.MIXED:
        p = claim_triple_placement(g, triple, isolated, candidate)
        assert verify(g, p).ok
    else:
        res = embed(path(40), 4, fixed=[w1])
        p = claim_triple_placement(g, triple, isolated, res.placement)
        assert verify(g, p).ok
