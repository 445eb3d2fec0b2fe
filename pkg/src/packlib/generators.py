"""Random graphs for tests and benchmarks."""

from __future__ import annotations

import random

from .graph import Graph, components, distances_from, girth


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labeled tree from a random Pruefer sequence."""
    if n <= 1:
        return Graph(max(n, 0))
    if n == 2:
        return Graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    a, b = [v for v in range(n) if degree[v] == 1]
    edges.append((a, b))
    return Graph(n, edges)


def _random_sizes(n: int, rng: random.Random) -> list[int]:
    sizes = []
    left = n
    while left > 0:
        roll = rng.random()
        if roll < 0.25:
            s = rng.randint(1, 3)
        elif roll < 0.5:
            s = rng.randint(4, 9)
        else:
            s = rng.randint(9, max(9, left))
        s = min(s, left)
        sizes.append(s)
        left -= s
    return sizes


def random_girth9_forest_plus(n: int, rng: random.Random, tries: int = 200) -> Graph | None:
    """A random (n, n-1)-graph with girth at least 9 and max degree at most n-4.

    The graph is a random forest whose components get one chord each (between
    vertices at distance at least 8) until the edge count is ``n-1``; every
    chord lands in a different component, so components are unicyclic or
    trees.  Returns None when no attempt succeeds.
    """
    for _ in range(tries):
        sizes = _random_sizes(n, rng)
        edges = []
        comps = []
        start = 0
        for s in sizes:
            t = random_tree(s, rng)
            edges += [(u + start, v + start) for u, v in t.edges]
            comps.append((start, s))
            start += s
        chords_needed = len(sizes) - 1
        big = [c for c in comps if c[1] >= 9]
        rng.shuffle(big)
        if len(big) < chords_needed:
            continue
        g = Graph(n, edges)
        chords = []
        ok = True
        for begin, s in big[:chords_needed]:
            cands = []
            for u in range(begin, begin + s):
                dist = distances_from(g, u)
                cands += [(u, v) for v in range(u + 1, begin + s) if dist[v] >= 8]
            if not cands:
                ok = False
                break
            chords.append(rng.choice(cands))
        if not ok:
            continue
        g = g.add_edges(chords)
        perm = list(range(n))
        rng.shuffle(perm)
        g = g.relabel(perm)
        if girth(g) >= 9 and g.max_degree() <= n - 4:
            return g
    return None


def random_two_factor(n: int, rng: random.Random, min_cycle: int = 3) -> Graph:
    """Random disjoint union of cycles covering ``n`` vertices."""
    if n < min_cycle:
        raise ValueError("n too small for a cycle")
    lengths = []
    left = n
    while left:
        if left < 2 * min_cycle:
            lengths.append(left)
            break
        s = rng.randint(min_cycle, left - min_cycle) if rng.random() < 0.7 else left
        lengths.append(s)
        left -= s
    edges = []
    start = 0
    for s in lengths:
        edges += [(start + i, start + (i + 1) % s) for i in range(s)]
        start += s
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, edges).relabel(perm)


def component_count(g: Graph) -> int:
    return len(components(g))
