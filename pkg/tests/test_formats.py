import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packlib.formats import (
    ParseError,
    format_edge_list,
    from_graph6,
    looks_like_graph6,
    parse_edge_list,
    parse_graph,
    to_graph6,
)
from packlib.graph import Graph, cycle, disjoint_union, empty, path


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


@given(graphs())
@settings(max_examples=100, deadline=None)
def test_graph6_round_trip(g):
    assert from_graph6(to_graph6(g)) == g


@given(graphs())
@settings(max_examples=100, deadline=None)
def test_edge_list_round_trip(g):
    assert parse_edge_list(format_edge_list(g)) == g


def test_known_graph6_strings():
    assert to_graph6(path(2)) == "A_"
    assert to_graph6(empty(1)) == "@"
    assert from_graph6(">>graph6<<Bw") == Graph(3, [(0, 1), (0, 2), (1, 2)])


def test_header_declares_isolated_vertices():
    g = parse_edge_list("n=5\n0 1\n1 2  # comment\n")
    assert g.n == 5 and g.m == 2
    assert parse_edge_list("10 20\n20 30\n") == path(3)


@pytest.mark.parametrize("text,line", [
    ("0 1\n1\n", 2),
    ("0 1\n1 1\n", 2),
    ("0 1\n1 0\n", 2),
    ("n=3\n0 3\n", 2),
    ("0 1\nn=4\n", 2),
    ("a b\n", 1),
    ("-1 2\n", 1),
])
def test_edge_list_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_format_detection():
    g = disjoint_union(cycle(9), empty(1))
    assert looks_like_graph6(to_graph6(g))
    assert not looks_like_graph6(format_edge_list(g))
    assert parse_graph(to_graph6(g)) == g
    assert parse_graph(format_edge_list(g)) == g
    with pytest.raises(ParseError):
        parse_graph("!!!!", "graph6")
