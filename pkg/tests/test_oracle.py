import pytest

from packlib.constructions import cycle_placement, lasso_placement, path_placement, small_union_graph
from packlib.formats import to_graph6
from packlib.graph import Graph, cycle, disjoint_union, empty, girth, inserted_star, is_connected, lasso, path, star
from packlib.iso import certificate, is_isomorphic
from packlib.oracle import FamilyFilter, brute_force_pack, census, enumerate_family, enumerate_trees
from packlib.placement import verify
from packlib.search import SearchBudget, Verdict


def brute_force_trees(n):
    """Trees by checking every (n-1)-subset of edges of K_n (small n only)."""
    import itertools

    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    found = {}
    for es in itertools.combinations(pairs, n - 1):
        g = Graph(n, es)
        if is_connected(g):
            found.setdefault(certificate(g), g)
    return len(found)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11), (8, 23), (9, 47), (10, 106)])
def test_tree_counts(n, count):
    assert len(enumerate_trees(n)) == count


@pytest.mark.parametrize("n", [4, 5, 6])
def test_tree_enumeration_matches_brute_force(n):
    assert len(enumerate_trees(n)) == brute_force_trees(n)


def test_small_family_by_hand():
    # n = 4, at most 3 edges: empty, K_2, P_3, 2K_2, C_3, P_4, K_{1,3}
    gs = list(enumerate_family(4, 3))
    assert len(gs) == 7
    assert len({certificate(g) for g in gs}) == 7


def test_filter_is_a_restriction():
    everything = {certificate(g) for g in enumerate_family(6, 5)}
    girth5 = {certificate(g) for g in enumerate_family(6, 5, FamilyFilter(min_girth=5))}
    assert girth5 < everything
    assert all(girth(g) >= 5 for g in enumerate_family(6, 5, FamilyFilter(min_girth=5)))


def test_external_source_is_deduplicated():
    src = [path(5), path(5).relabel([4, 3, 2, 1, 0]), star(5)]
    out = list(enumerate_family(5, 4, source=src))
    assert len(out) == 2


def test_built_in_enumeration_limit():
    with pytest.raises(ValueError):
        list(enumerate_family(12, 3))


@pytest.mark.parametrize("g,k", [
    (disjoint_union(cycle(7), empty(1)), 4),
    (disjoint_union(cycle(5), empty(1)), 3),
    (star(6), 2),
    (star(9), 2),
])
def test_known_impossible(g, k):
    assert brute_force_pack(g, k).verdict is Verdict.IMPOSSIBLE


def test_edge_bound_short_circuit():
    res = brute_force_pack(path(7), 4)
    assert res.verdict is Verdict.IMPOSSIBLE and res.note == "edge count bound"


def test_found_placements_verify():
    g = disjoint_union(cycle(9), empty(1))
    res = brute_force_pack(g, 4)
    assert res.found and verify(g, res.placement).ok


def test_constructions_agree_with_oracle_on_small_orders():
    for g, p in [(path(8), path_placement(8, 4)), (cycle(9), cycle_placement(9, 4)),
                 (lasso(9, 9), lasso_placement(9, 9, 4)), (path(9), path_placement(9, 4))]:
        assert verify(g, p).ok
        assert brute_force_pack(g, 4).found


def test_census_third_copy_at_order_six():
    res = census(6, 5, 3, filt=FamilyFilter(min_girth=5, min_edges=5))
    expected = [star(6), disjoint_union(cycle(5), empty(1)), inserted_star(4, 2), inserted_star(5, 1)]
    assert res.complete and len(res.exceptions) == 4
    for h in expected:
        assert any(is_isomorphic(h, g) for g in res.exceptions)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_census_monotone_in_k(n):
    prev = None
    for k in (1, 2, 3):
        res = census(n, n - 1, k)
        assert res.complete
        cur = {certificate(g) for g in res.exceptions}
        if prev is not None:
            assert prev <= cur
        prev = cur


def test_census_reports_unknown():
    from packlib.formats import from_graph6

    hard = from_graph6("J??????oH~?")  # settled only by a long complete search at k = 4
    res = census(11, 10, 4, SearchBudget(node_limit=10), source=[hard])
    assert not res.complete and len(res.unknown) == 1 and not res.exceptions
