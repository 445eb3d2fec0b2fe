import pytest

from packlib.graph import Graph, cycle, disjoint_union, empty, path, spider, star
from packlib.oracle import brute_force_pack, enumerate_family
from packlib.placement import is_placed, vertex_status, Status, verify
from packlib.search import SearchBudget, Verdict, embed, embed_with_restarts


def test_finds_and_verifies():
    res = embed(path(8), 4)
    assert res.found and verify(path(8), res.placement).ok


def test_impossible_by_complete_search():
    res = embed(disjoint_union(cycle(7), empty(1)), 4)
    assert res.verdict is Verdict.IMPOSSIBLE


def test_budget_gives_unknown_not_impossible():
    g = Graph(11, [(0, i) for i in range(1, 8)] + [(8, 9), (9, 10), (1, 8)])
    res = embed(g, 4, budget=SearchBudget(node_limit=5))
    assert res.verdict in (Verdict.UNKNOWN, Verdict.FOUND)
    if res.verdict is Verdict.UNKNOWN:
        assert res.placement is None


def test_status_constraints():
    g = spider(2, 2, 3)
    res = embed(g, 4, placed=range(g.n))
    assert res.found and all(is_placed(res.placement, v) for v in range(g.n))
    g2 = disjoint_union(path(4), empty(3))
    res = embed(g2, 4, fixed=[4])
    assert res.found and vertex_status(res.placement, 4) is Status.FIXED
    # a fixed isolated vertex wastes a host vertex: 12 edges do not fit in K_5
    g3 = disjoint_union(path(4), empty(2))
    assert embed(g3, 4).found
    assert embed(g3, 4, fixed=[4]).verdict is Verdict.IMPOSSIBLE


def test_larger_host():
    res = embed(star(4), 3, n_host=6)
    assert res.found and res.placement.n_host == 6


def test_restarts_agree_with_complete_search():
    g = path(9)
    res = embed_with_restarts(g, 4, restarts=3, nodes_per_restart=2000)
    assert res.found and verify(g, res.placement).ok


@pytest.mark.parametrize("n", [4, 5, 6])
def test_symmetry_breaking_does_not_change_verdicts(n):
    # small graphs with up to n-1 edges, k = 2 and k = 3
    for g in enumerate_family(n, n - 1):
        for k in (2, 3):
            on = brute_force_pack(g, k, SearchBudget(symmetry=True), restarts=0)
            off = brute_force_pack(g, k, SearchBudget(symmetry=False), restarts=0)
            assert on.verdict == off.verdict, (g, k)
            assert on.verdict is not Verdict.UNKNOWN


def test_symmetry_breaking_on_order_seven():
    for g in enumerate_family(7, 6):
        on = brute_force_pack(g, 2, SearchBudget(symmetry=True), restarts=0)
        off = brute_force_pack(g, 2, SearchBudget(symmetry=False), restarts=0)
        assert on.verdict == off.verdict, g
