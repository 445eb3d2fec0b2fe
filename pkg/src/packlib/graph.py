"""Simple undirected graphs on vertices ``0..n-1`` and structural queries."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input (loops, repeated edges, bad ids)."""


class Graph:
    """An immutable simple graph.

    Vertices are the integers ``0..n-1``.  Edges are stored as sorted pairs
    ``(u, v)`` with ``u < v``; ``adj[v]`` is the sorted neighbor tuple of ``v``.
    """

    __slots__ = ("n", "edges", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        seen = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"repeated edge {key}")
            seen.add(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    # -- derived graphs --------------------------------------------------

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("repeated vertex in induced subgraph")
        sub = []
        for u, v in self.edges:
            if u in index and v in index:
                sub.append((index[u], index[v]))
        return Graph(len(vertices), sub)

    def remove_vertices(self, removed: Iterable[int]) -> tuple["Graph", list[int]]:
        """Delete vertices.  Returns the smaller graph and the kept old ids in order."""
        gone = set(removed)
        kept = [v for v in range(self.n) if v not in gone]
        return self.induced(kept), kept

    def add_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, list(self.edges) + [tuple(e) for e in extra])

    def remove_edges(self, dropped: Iterable[Sequence[int]]) -> "Graph":
        gone = {(min(u, v), max(u, v)) for u, v in dropped}
        return Graph(self.n, [e for e in self.edges if e not in gone])

    def relabel(self, perm: Sequence[int], n: int | None = None) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n if n is None else n, [(perm[u], perm[v]) for u, v in self.edges])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


# -- structural queries ---------------------------------------------------


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests (BFS from every vertex)."""
    best = math.inf
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def components(g: Graph) -> list[frozenset]:
    """Connected components, largest first, ties broken by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (-len(c), min(c)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def leaves(g: Graph) -> frozenset:
    return frozenset(v for v in range(g.n) if len(g.adj[v]) == 1)


def nodes(g: Graph) -> frozenset:
    """Vertices of degree at least two with a leaf neighbor."""
    lv = leaves(g)
    return frozenset(
        v for v in range(g.n) if len(g.adj[v]) >= 2 and any(x in lv for x in g.adj[v])
    )


def distances_from(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def longest_path_in_tree(g: Graph, vertices: Iterable[int]) -> list[int]:
    """A longest path of the tree spanned by ``vertices`` (double BFS)."""
    vs = list(vertices)
    allowed = set(vs)

    def far(src):
        parent = {src: None}
        order = [src]
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in allowed and y not in parent:
                    parent[y] = x
                    order.append(y)
                    queue.append(y)
        end = order[-1]
        path = [end]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path

    a = far(min(vs))[0]
    return far(a)


def cycle_vertices(g: Graph, comp: Iterable[int]) -> list[int]:
    """Vertices of the unique cycle of a unicyclic component, in cyclic order."""
    comp = set(comp)
    deg = {v: sum(1 for y in g.adj[v] if y in comp) for v in comp}
    queue = deque(v for v in comp if deg[v] == 1)
    alive = set(comp)
    while queue:
        x = queue.popleft()
        alive.discard(x)
        for y in g.adj[x]:
            if y in alive:
                deg[y] -= 1
                if deg[y] == 1:
                    queue.append(y)
    if not alive:
        return []
    start = min(alive)
    order = [start]
    prev, cur = None, start
    while True:
        nxt = [y for y in g.adj[cur] if y in alive and y != prev]
        if prev is None:
            nxt = nxt[:1]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


# -- named families ---------------------------------------------------------


def path(t: int) -> Graph:
    return Graph(t, [(i, i + 1) for i in range(t - 1)])


def cycle(l: int) -> Graph:
    return Graph(l, [(i, (i + 1) % l) for i in range(l)])


def star(n: int) -> Graph:
    """S_n: a star of order n, center 0."""
    return Graph(n, [(0, i) for i in range(1, n)])


def empty(n: int) -> Graph:
    return Graph(n, [])


def inserted_star(a: int, b: int) -> Graph:
    """S_a^b: star S_a with ``b`` vertices inserted into one edge (order a+b)."""
    edges = [(0, i) for i in range(1, a - 1)]
    chain = [0] + list(range(a - 1, a + b))
    edges += list(zip(chain, chain[1:]))
    return Graph(a + b, edges)


def lasso(l: int, s: int) -> Graph:
    """L(l, s): path v_1..v_l plus edge v_1 v_s; v_i is vertex i-1."""
    return Graph(l, [(i, i + 1) for i in range(l - 1)] + [(0, s - 1)])


def double_lasso(l: int, s: int, t: int) -> Graph:
    """D(l, s, t): lasso L(l, s) plus edge v_l v_{l-t+1}."""
    return Graph(l, [(i, i + 1) for i in range(l - 1)] + [(0, s - 1), (l - 1, l - t)])


def spider(*arms: int) -> Graph:
    """Q(n_1, ..., n_t): center 0, arm i is a path hanging off the center.

    Arm vertices are numbered consecutively, arms in the given order, each arm
    starting at the vertex adjacent to the center.
    """
    edges = []
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def spider_arm(arms: Sequence[int], i: int, j: int) -> int:
    """Vertex id of v_j^i (1-based arm ``i``, position ``j``) in :func:`spider`."""
    return 1 + sum(arms[: i - 1]) + (j - 1)


# -- classification ------------------------------------------------------


@dataclass(frozen=True)
class GraphClass:
    tag: str
    params: tuple = ()

    def __str__(self):
        if not self.params:
            return self.tag
        return f"{self.tag}({','.join(map(str, self.params))})"


def _tree_class(g: Graph, comp: frozenset) -> GraphClass:
    size = len(comp)
    deg = {v: sum(1 for y in g.adj[v] if y in comp) for v in comp}
    if size <= 2 or max(deg.values()) <= 2:
        return GraphClass("Path", (size,))
    big = [v for v in comp if deg[v] >= 3]
    if len(big) == 1:
        center = big[0]
        if deg[center] == size - 1:
            return GraphClass("Star", (size,))
        arms = []
        for first in g.adj[center]:
            length, prev, cur = 1, center, first
            while deg[cur] == 2:
                prev, cur = cur, next(y for y in g.adj[cur] if y != prev)
                length += 1
            arms.append(length)
        arms.sort()
        if arms[-2] == 1:
            return GraphClass("InsertedStar", (len(arms) + 1, arms[-1] - 1))
        return GraphClass("Spider", tuple(arms))
    return GraphClass("GenericTree", (size,))


def _unicyclic_class(g: Graph, comp: frozenset) -> GraphClass:
    cyc = cycle_vertices(g, comp)
    if len(cyc) == len(comp):
        return GraphClass("Cycle", (len(cyc),))
    deg = {v: sum(1 for y in g.adj[v] if y in comp) for v in comp}
    if sorted(deg.values())[-2:] == [2, 3] and sum(1 for d in deg.values() if d == 1) == 1:
        if all(d <= 2 for v, d in deg.items() if v not in set(cyc)):
            return GraphClass("Lasso", (len(comp), len(cyc)))
    return GraphClass("Unicyclic", (len(comp), len(cyc)))


def double_lasso_labeling(g: Graph, comp: Iterable[int]) -> tuple[list[int], int, int] | None:
    """Label a bicyclic component with minimum degree 2 as D(l, s, t).

    Returns ``(order, s, t)`` where ``order[i]`` is the vertex playing v_{i+1},
    with ``s >= t`` for two cycles joined by a path (or sharing a vertex), and
    the shared path shortest for theta graphs.  ``None`` if the component is
    not of that form.
    """
    comp = set(comp)
    deg = {v: sum(1 for y in g.adj[v] if y in comp) for v in comp}
    m = sum(deg.values()) // 2
    if m != len(comp) + 1 or min(deg.values()) < 2:
        return None
    high = sorted(v for v in comp if deg[v] >= 3)

    def walk(a, first):
        seq = [a, first]
        while deg[seq[-1]] == 2:
            seq.append(next(y for y in g.adj[seq[-1]] if y != seq[-2]))
        return seq

    if len(high) == 1:
        # two cycles sharing one vertex of degree 4
        c = high[0]
        loops, used = [], set()
        for y in g.adj[c]:
            if y in used:
                continue
            seq = walk(c, y)
            used.update(seq[1:-1])
            loops.append(seq[:-1])
        loops.sort(key=len, reverse=True)
        big, small = loops
        # v_1 .. v_s = big cycle ending at c; then small cycle
        order = big[1:] + [c] + small[1:]
        return order, len(big), len(small)
    if len(high) != 2:
        return None
    x, y = high
    paths = []
    for first in g.adj[x]:
        paths.append(walk(x, first))
    ends = [p[-1] for p in paths]
    if ends.count(y) == 3:
        # theta graph: three internally disjoint x-y paths
        paths.sort(key=len)
        a, b, c = paths  # a shortest
        # cycle 1 = a + c (length s), cycle 2 = a + b (length t)
        la, lb, lc = len(a) - 1, len(b) - 1, len(c) - 1
        s, t = la + lc, la + lb
        # v_1 is the c-neighbor of y; v_s = y, v_{l-t+1} = x
        order = c[1:-1][::-1] + [x] + a[1:-1] + [y] + b[1:-1][::-1]
        return order, s, t
    # two cycles joined by a path x..y
    loops_x = [p for p in paths if p[-1] == x]
    bridge_x = [p for p in paths if p[-1] == y]
    if len(loops_x) != 2 or len(bridge_x) != 1:
        return None
    bridge = bridge_x[0]
    cyc_x = loops_x[0][:-1]  # starts at x
    loops_y = [walk(y, f) for f in g.adj[y]]
    cyc_y = next(p for p in loops_y if p[-1] == y)[:-1]
    if len(cyc_x) < len(cyc_y):
        cyc_x, cyc_y = cyc_y, cyc_x
        bridge = bridge[::-1]
    order = cyc_x[1:] + [cyc_x[0]] + bridge[1:-1] + cyc_y
    return order, len(cyc_x), len(cyc_y)


def classify(g: Graph) -> list[GraphClass]:
    """Structural tag of each component, in :func:`components` order."""
    out = []
    for comp in components(g):
        size = len(comp)
        m = sum(len(g.adj[v]) for v in comp) // 2
        if m == size - 1:
            out.append(_tree_class(g, comp))
        elif m == size:
            out.append(_unicyclic_class(g, comp))
        elif m == size + 1:
            lab = double_lasso_labeling(g, comp)
            if lab is None:
                out.append(GraphClass("Bicyclic", (size,)))
            else:
                out.append(GraphClass("DoubleLasso", (size, lab[1], lab[2])))
        else:
            out.append(GraphClass("Other", (size, m)))
    return out


def build(cls: GraphClass) -> Graph:
    """Inverse of :func:`classify` for the parametrised families."""
    p = cls.params
    if cls.tag == "Path":
        return path(*p)
    if cls.tag == "Cycle":
        return cycle(*p)
    if cls.tag == "Star":
        return star(*p)
    if cls.tag == "InsertedStar":
        return inserted_star(*p)
    if cls.tag == "Lasso":
        return lasso(*p)
    if cls.tag == "DoubleLasso":
        return double_lasso(*p)
    if cls.tag == "Spider":
        return spider(*p)
    raise ValueError(f"{cls.tag} is not a parametrised family")
