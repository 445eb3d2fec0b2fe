"""Graph input/output: edge-list text and graph6.

Edge-list text::

    n=10          # optional; declares isolated vertices
    0 1
    1 2           # '#' starts a comment

Without a header, labels are renumbered densely in increasing order.  With a
header, labels must already lie in ``0..n-1``.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import networkx as nx

from .graph import Graph, GraphError


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def parse_edge_list(text: str) -> Graph:
    n_decl = None
    pairs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            if n_decl is not None or pairs:
                raise ParseError("header n=<count> must come first and only once", lineno)
            try:
                n_decl = int(line[2:])
            except ValueError:
                raise ParseError(f"bad vertex count {line[2:]!r}", lineno) from None
            if n_decl < 0:
                raise ParseError("vertex count must be nonnegative", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"vertex labels must be integers: {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError("vertex labels must be nonnegative", lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        pairs.append((u, v, lineno))
    seen: dict[tuple[int, int], int] = {}
    for u, v, lineno in pairs:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"edge {key} repeats line {seen[key]}", lineno)
        seen[key] = lineno
    if n_decl is not None:
        for u, v, lineno in pairs:
            if max(u, v) >= n_decl:
                raise ParseError(f"label {max(u, v)} not below declared n={n_decl}", lineno)
        return Graph(n_decl, [(u, v) for u, v, _ in pairs])
    labels = sorted({x for u, v, _ in pairs for x in (u, v)})
    index = {x: i for i, x in enumerate(labels)}
    return Graph(len(labels), [(index[u], index[v]) for u, v, _ in pairs])


def format_edge_list(g: Graph) -> str:
    lines = [f"n={g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    index = {x: i for i, x in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in h.edges()])


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_nx(g), header=False).decode("ascii").strip()


def from_graph6(line: str) -> Graph:
    line = line.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    try:
        return from_nx(nx.from_graph6_bytes(line.encode("ascii")))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
        raise ParseError(f"bad graph6 string {line!r}: {exc}") from None


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield from_graph6(line)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None


def looks_like_graph6(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(">>graph6<<"):
            return True
        return len(line.split()) == 1 and not line.startswith("n=")
    return False


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse one graph; ``fmt`` is ``edges``, ``graph6`` or ``auto``."""
    if fmt == "auto":
        fmt = "graph6" if looks_like_graph6(text) else "edges"
    try:
        if fmt == "graph6":
            graphs = list(read_graph6_lines(text.splitlines()))
            if len(graphs) != 1:
                raise ParseError(f"expected one graph6 line, found {len(graphs)}")
            return graphs[0]
        if fmt == "edges":
            return parse_edge_list(text)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    raise ValueError(f"unknown format {fmt!r}")
