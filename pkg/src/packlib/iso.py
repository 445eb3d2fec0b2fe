"""Canonical labeling by color refinement plus individualization.

Adequate for the small sparse graphs this package canonicalizes (trees and
unicyclic graphs with at most a dozen or so vertices).  Twin vertices and
automorphisms found at the root prune the search tree.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, components


def _refine(g: Graph, colors: list[int]) -> list[int]:
    ncol = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[y] for y in g.adj[v]))) for v in range(g.n)]
        index = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [index[s] for s in sigs]
        if len(index) == ncol:
            return new
        colors, ncol = new, len(index)


def _twin_keys(g: Graph) -> list[tuple]:
    return [(frozenset(g.adj[v]), frozenset(g.adj[v] + (v,))) for v in range(g.n)]


def _are_twins(keys, x, y) -> bool:
    return keys[x][0] == keys[y][0] or keys[x][1] == keys[y][1]


class _Search:
    def __init__(self, g: Graph, colors: Sequence[int]):
        self.g = g
        self.base = list(colors)
        self.keys = _twin_keys(g)
        self.best_cert = None
        self.best_perm = None
        self.autos: list[list[int]] = []

    def leaf(self, ranks):
        g = self.g
        edges = tuple(sorted((min(ranks[u], ranks[v]), max(ranks[u], ranks[v])) for u, v in g.edges))
        inv = [0] * g.n
        for v, r in enumerate(ranks):
            inv[r] = v
        cert = (g.n, tuple(self.base[inv[r]] for r in range(g.n)), edges)
        if self.best_cert is None or cert < self.best_cert:
            self.best_cert, self.best_perm = cert, list(ranks)
        elif cert == self.best_cert:
            # automorphism: v -> best^{-1}(ranks[v])
            best_inv = [0] * g.n
            for v, r in enumerate(self.best_perm):
                best_inv[r] = v
            self.autos.append([best_inv[ranks[v]] for v in range(g.n)])

    def root_orbit(self, v):
        # orbit of v under the automorphisms discovered so far
        seen = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for a in self.autos:
                y = a[x]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def run(self, colors, depth=0):
        colors = _refine(self.g, colors)
        n = self.g.n
        counts: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            counts.setdefault(c, []).append(v)
        if len(counts) == n:
            self.leaf(colors)
            return
        target = min(c for c, vs in counts.items() if len(vs) > 1)
        tried: list[int] = []
        for v in counts[target]:
            if any(_are_twins(self.keys, v, t) for t in tried):
                continue
            if depth == 0 and any(v in self.root_orbit(t) for t in tried):
                continue
            tried.append(v)
            new = [2 * c + (1 if c == target and x != v else 0) for x, c in enumerate(colors)]
            self.run(new, depth + 1)


def _connected_canon(g: Graph, colors: Sequence[int]) -> tuple[tuple, list[int]]:
    if g.n == 0:
        return (0, (), ()), []
    s = _Search(g, colors)
    s.run(_refine(g, [sorted(set(colors)).index(c) for c in colors]))
    return s.best_cert, s.best_perm


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None) -> tuple[tuple, list[int]]:
    """Return ``(certificate, perm)``; ``g.relabel(perm)`` is the canonical graph.

    Two (vertex-colored) graphs are isomorphic iff their certificates are equal.
    """
    if colors is None:
        colors = [0] * g.n
    parts = []
    for comp in components(g):
        vs = sorted(comp)
        sub = g.induced(vs)
        cert, perm = _connected_canon(sub, [colors[v] for v in vs])
        parts.append((cert, vs, perm))
    parts.sort(key=lambda p: p[0])
    perm = [0] * g.n
    offset = 0
    for cert, vs, local in parts:
        for i, v in enumerate(vs):
            perm[v] = offset + local[i]
        offset += len(vs)
    return tuple(p[0] for p in parts), perm


def certificate(g: Graph) -> tuple:
    return canonical_labeling(g)[0]


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g)[1])


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return certificate(g) == certificate(h)


def vertex_orbits(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Orbit id of every vertex under the (color-preserving) automorphism group.

    Orbit ids are the smallest vertex of the orbit.
    """
    if colors is None:
        colors = [0] * g.n
    comp_of = {}
    for comp in components(g):
        for v in comp:
            comp_of[v] = comp
    out = []
    cache = {}
    for v in range(g.n):
        vs = sorted(comp_of[v])
        sub = g.induced(vs)
        local = [2 * colors[x] + (0 if x == v else 1) for x in vs]
        key = _connected_canon(sub, local)[0]
        if key not in cache:
            cache[key] = v
        out.append(cache[key])
    return out
