"""Explicit k-placement constructions.

Host vertices are ``0..n_host-1``.  The rotational path scheme is computed in
1-based arithmetic (host ``u_j`` for ``j`` in ``1..t``) and shifted down by one
at the boundary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import fixtures
from .graph import (
    Graph,
    components,
    cycle,
    cycle_vertices,
    disjoint_union,
    double_lasso_labeling,
    empty,
    girth,
    path,
    spider,
    spider_arm,
)
from .placement import Placement, PlacementError, Status, assemble, is_placed, vertex_status, verify


class ConstructionError(ValueError):
    """A construction was called outside its parameter range."""


class ConstructionUnknown(RuntimeError):
    """A best-effort search gave up without deciding anything."""


def _check(p: Placement, g: Graph, what: str) -> Placement:
    rep = verify(g, p)
    if not rep.ok:
        raise AssertionError(f"{what}: produced an invalid placement ({rep.reason} {rep.host_edge})")
    return p


# -- paths, cycles, lassos ----------------------------------------------------


def path_image(t: int, i: int, j: int) -> int:
    """1-based host of the ``j``-th path vertex (0-based ``j``) in copy ``i``."""
    raw = i + j // 2 if j % 2 == 0 else i + t - (j + 1) // 2
    return (raw - 1) % t + 1


def path_placement(t: int, k: int) -> Placement:
    """Dispersed k-placement of P_t in K_t by rotating a zigzag.

    Copy ``i`` visits ``u_i, u_{t-1+i}, u_{i+1}, u_{t-2+i}, ...``.
    """
    if k < 1:
        raise ConstructionError("k must be positive")
    if t < 2 * k:
        raise ConstructionError(f"path P_{t} needs t >= 2k = {2 * k}")
    # zigzag of host labels 0..t-1 rotated by i: 0, t-1, 1, t-2, ...
    zig = [j // 2 if j % 2 == 0 else t - (j + 1) // 2 for j in range(t)]
    maps = tuple(tuple((z + i) % t for z in zig) for i in range(k))
    return Placement(t, maps)


def lasso_placement(l: int, s: int, k: int) -> Placement:
    """k-placement of :func:`graph.lasso` ``L(l, s)``; every vertex but v_1 is placed.

    The path v_2..v_l takes hosts ``0..l-2`` by the zigzag scheme and v_1 sits
    on host ``l-1`` in every copy.
    """
    if k < 1:
        raise ConstructionError("k must be positive")
    if not 3 <= s <= l:
        raise ConstructionError(f"lasso needs 3 <= s <= l, got L({l},{s})")
    if s < 2 * k + 1:
        raise ConstructionError(f"lasso L({l},{s}) needs s >= 2k+1 = {2 * k + 1}")
    base = path_placement(l - 1, k)
    maps = tuple((l - 1,) + m for m in base.maps)
    return Placement(l, maps)


def cycle_placement(l: int, k: int) -> Placement:
    """k-placement of C_l (vertex 0 fixed, the rest placed)."""
    if l < 2 * k + 1 or l < 3:
        raise ConstructionError(f"cycle C_{l} needs l >= 2k+1 = {2 * k + 1}")
    return lasso_placement(l, l, k)  # L(l, l) is C_l with the same labels


def double_lasso_placement(l: int, s: int, t: int, k: int) -> Placement:
    """k-placement of ``D(l, s, t)`` with every vertex but v_1 and v_l placed."""
    if k < 1:
        raise ConstructionError("k must be positive")
    if not (3 <= s <= l and 3 <= t < l):
        raise ConstructionError(f"double lasso parameters out of range: D({l},{s},{t})")
    if s < 2 * k + 1 or t < 2 * k + 1:
        raise ConstructionError(f"double lasso D({l},{s},{t}) needs s, t >= 2k+1 = {2 * k + 1}")
    if s == l and k > 1:
        # v_1 v_l would be an edge between the two fixed vertices
        raise ConstructionError("double lasso with s = l is placed reversed; use D(l, t, s)")
    base = path_placement(l - 2, k)
    maps = tuple((l - 2,) + m + (l - 1,) for m in base.maps)
    return Placement(l, maps)


def path_property_violations(t: int, k: int) -> list[tuple[int, int]]:
    """Pairs (a, b), 1-based with b - a >= 2k-1, whose 2k images are not distinct."""
    p = path_placement(t, k)
    bad = []
    for a in range(t):
        for b in range(a + 2 * k - 1, t):
            imgs = set(p.images(a)) | set(p.images(b))
            if len(imgs) != 2 * k:
                bad.append((a + 1, b + 1))
    return bad


# -- unions of small paths and spiders ----------------------------------------


def small_union_graph(l1: int, l2: int) -> Graph:
    """P_{l1} (vertices 0..l1-1) + P_{l2} (next l2 vertices) + K_1 (last vertex)."""
    return disjoint_union(path(l1), path(l2), empty(1))


def paths_union_graph(lengths: Sequence[int]) -> Graph:
    return disjoint_union(*(path(x) for x in lengths), empty(1))


def small_union_placement(l1: int, l2: int) -> Placement:
    """Dispersed 4-placement of ``P_{l1} + P_{l2} + K_1`` in ``K_{l1+l2+1}``.

    Large cases restrict the zigzag placement of ``P_{l1+l2+1}`` (the middle
    vertex at position ``l1+1`` loses both its edges and becomes the K_1);
    small cases come from the stored tables.
    """
    if l1 < 1 or l2 < 1:
        raise ConstructionError("path orders must be positive")
    if l1 + l2 < 3:
        raise ConstructionError("need l1 + l2 >= 3")
    g = small_union_graph(l1, l2)
    n = l1 + l2 + 1
    if l1 + l2 >= 7:
        base = path_placement(n, 4)
        # path position j -> union vertex
        where = list(range(l1)) + [n - 1] + list(range(l1, l1 + l2))
        maps = []
        for m in base.maps:
            row = [0] * n
            for j, v in enumerate(where):
                row[v] = m[j]
            maps.append(tuple(row))
        p = Placement(n, tuple(maps))
    else:
        a, b = max(l1, l2), min(l1, l2)
        table = fixtures.load_table(fixtures.small_union_name(a, b))
        if (a, b) == (l1, l2):
            p = table
        else:
            # swap the two paths: table vertex order is P_a, P_b, K_1
            perm = list(range(a, a + b)) + list(range(a)) + [n - 1]
            p = Placement(n, tuple(tuple(m[perm[v]] for v in range(n)) for m in table.maps))
    return _check(p, g, "small_union_placement")


def paths_union_placement(lengths: Sequence[int]) -> Placement:
    """Dispersed 4-placement of a union of at least two paths plus K_1.

    All paths but the last are concatenated, the two-path case is placed, and
    the joining edges are dropped.
    """
    lengths = list(lengths)
    if len(lengths) < 2 or min(lengths) < 1:
        raise ConstructionError("need at least two nonempty paths")
    if sum(lengths) < 3:
        raise ConstructionError("need total path order >= 3")
    head = sum(lengths[:-1])
    p = small_union_placement(head, lengths[-1])
    return _check(p, paths_union_graph(lengths), "paths_union_placement")


def spider_small_placements() -> dict[tuple[int, ...], Placement]:
    """Stored dispersed 4-placements of Q(2,2,3) on K_8 and Q(2,2,2,2) on K_9."""
    out = {}
    for arms in fixtures.SPIDER_KEYS:
        p = fixtures.load_table(fixtures.spider_name(arms))
        out[arms] = _check(p, spider(*arms), "spider table")
    return out


def cycle_plus_spider(l: int) -> Placement:
    """Dispersed 4-placement of ``C_l + Q(2,2,2)``, ``l >= 9``.

    Graph labeling: the cycle is ``0..l-1`` and ``Q(2,2,2)`` follows with its
    center at ``l``.  Built from the placements of ``P_{l-1}`` and ``Q(2,2,3)``:
    the far end of the long arm is detached from the spider and closes the path
    into the cycle.
    """
    if l < 9:
        raise ConstructionError("cycle_plus_spider needs l >= 9")
    pp = path_placement(l - 1, 4)
    q = spider_small_placements()[(2, 2, 3)]
    tip = spider_arm((2, 2, 3), 3, 3)  # v_3^3, the last spider vertex
    maps = []
    for i in range(4):
        row = list(pp.maps[i])  # cycle vertices 0..l-2 on hosts 0..l-2
        row.append(q.maps[i][tip] + l - 1)  # cycle vertex l-1 is the old tip
        row += [q.maps[i][v] + l - 1 for v in range(tip)]
        maps.append(tuple(row))
    g = disjoint_union(cycle(l), spider(2, 2, 2))
    return _check(Placement(l + 7, tuple(maps)), g, "cycle_plus_spider")


def two_k1_plus_spider_graph(n1: int, n2: int, n3: int) -> Graph:
    """Q(n1,n2,n3) as in :func:`graph.spider`, then two isolated vertices."""
    return disjoint_union(spider(n1, n2, n3), empty(2))


def two_k1_plus_spider(n1: int, n2: int, n3: int) -> Placement:
    """4-placement of ``Q(n1,n2,n3) + 2K_1`` with both isolated vertices and
    every node of the spider placed."""
    if not 2 <= n1 <= n2 <= n3:
        raise ConstructionError("need 2 <= n1 <= n2 <= n3")
    arms = (n1, n2, n3)
    g = two_k1_plus_spider_graph(*arms)
    nq = 1 + n1 + n2 + n3
    x, y = nq, nq + 1
    if n2 + n3 >= 6:
        # join the isolated pair to the ends of arms 2 and 3 to get a lasso
        d = [spider_arm(arms, 3, j) for j in range(1, n3 + 1)]
        b = [spider_arm(arms, 2, j) for j in range(1, n2 + 1)]
        a = [spider_arm(arms, 1, j) for j in range(1, n1 + 1)]
        order = d + [y, x] + b[::-1] + [0] + a
        l, s = len(order), n2 + n3 + 3
        lp = lasso_placement(l, s, 4)
        maps = []
        for m in lp.maps:
            row = [0] * (nq + 2)
            for j, v in enumerate(order):
                row[v] = m[j]
            maps.append(tuple(row))
        p = Placement(nq + 2, tuple(maps))
    elif arms == (2, 2, 2):
        q = spider_small_placements()[(2, 2, 2, 2)]
        p = q  # the fourth arm's two vertices play the isolated pair
    elif arms == (2, 2, 3):
        inner = two_k1_plus_spider(2, 2, 2)  # vertices 0..6 spider, 7, 8 isolated
        tip = spider_arm(arms, 3, 3)  # 7
        maps = []
        for m in inner.maps:
            row = list(m[:7]) + [9] + list(m[7:])
            maps.append(tuple(row))
        p = Placement(10, tuple(maps))
    else:  # pragma: no cover - the cases above are exhaustive
        raise ConstructionError(f"no route for Q{arms}")
    p = _check(p, g, "two_k1_plus_spider")
    from .graph import nodes as _nodes

    for v in list(_nodes(g)) + [x, y]:
        if not is_placed(p, v):
            raise AssertionError(f"two_k1_plus_spider: vertex {v} not placed")
    return p


# -- leaf extension -----------------------------------------------------------


def bipartite_edge_coloring(edges: Sequence[tuple[object, object]], colors: int) -> list[int]:
    """Proper edge coloring of a simple bipartite graph with ``colors`` colors.

    ``edges`` are (left, right) pairs; ``colors`` must be at least the maximum
    degree.  Uses alternating-path recoloring, which always succeeds on
    bipartite graphs.
    """
    at: dict[tuple[int, object], dict[int, int]] = {}  # (side, vertex) -> color -> edge index
    result = [-1] * len(edges)

    def free(node):
        used = at.setdefault(node, {})
        for c in range(colors):
            if c not in used:
                return c
        raise ConstructionError("degree exceeds the number of colors")

    for idx, (u, w) in enumerate(edges):
        a_node, b_node = (0, u), (1, w)
        alpha = free(a_node)
        beta = free(b_node)
        if alpha not in at[b_node]:
            c = alpha
        else:
            # flip the alpha/beta alternating path that starts at w
            chain = []
            node, want = b_node, alpha
            while want in at.setdefault(node, {}):
                e = at[node][want]
                chain.append(e)
                eu, ew = edges[e]
                node = (0, eu) if node[0] == 1 else (1, ew)
                want = beta if want == alpha else alpha
            for e in chain:
                eu, ew = edges[e]
                old = result[e]
                del at[(0, eu)][old]
                del at[(1, ew)][old]
            for e in chain:
                eu, ew = edges[e]
                new = beta if result[e] == alpha else alpha
                result[e] = new
                at[(0, eu)][new] = e
                at[(1, ew)][new] = e
            c = alpha
        result[idx] = c
        at[a_node][c] = idx
        at[b_node][c] = idx
    return result


def extend_by_leaves(g: Graph, U: Sequence[int], base: Placement) -> Placement:
    """Re-attach ``k`` leaves with distinct neighbors to a placement of ``g - U``.

    ``base`` places ``g.remove_vertices(U)[0]`` (the remaining vertices in
    increasing order) in ``K_{n-k}``.  The ``k`` leaves go to the new hosts
    ``n-k..n-1``; copy ``i`` matches the images of the neighbors to those hosts
    through a proper ``k``-edge-coloring of the bipartite graph joining new
    host ``i`` to each image of a neighbor in copy ``i``.
    """
    U = list(U)
    k = len(U)
    if base.k != k:
        raise ConstructionError(f"need exactly k = {base.k} leaves, got {k}")
    if len(set(U)) != k:
        raise ConstructionError("repeated leaf")
    for u in U:
        if g.degree(u) != 1:
            raise ConstructionError(f"vertex {u} is not a leaf")
    nbr = [g.adj[u][0] for u in U]
    if len(set(nbr)) != k:
        raise ConstructionError("leaves must have distinct neighbors")
    if set(nbr) & set(U):
        raise ConstructionError("two chosen leaves are adjacent")
    h, kept = g.remove_vertices(U)
    rep = verify(h, base)
    if not rep.ok:
        raise ConstructionError(f"base is not a placement of g - U: {rep.reason}")
    n = g.n
    n_small = n - k
    if base.n_host != n_small:
        raise ConstructionError(f"base host must have {n_small} vertices")
    index = {v: j for j, v in enumerate(kept)}
    edges = []
    for i in range(k):
        for x in nbr:
            edges.append((i, base.maps[i][index[x]]))
    color = bipartite_edge_coloring(edges, k)
    maps = []
    pos = 0
    for i in range(k):
        row = [0] * n
        for v in kept:
            row[v] = base.maps[i][index[v]]
        for u, x in zip(U, nbr):
            row[u] = n_small + color[pos]
            pos += 1
        maps.append(tuple(row))
    p = Placement(n, tuple(maps))
    return _check(p, g, "extend_by_leaves")


def reattach_leaves(g: Graph, removed: Sequence[int], base: Placement) -> Placement:
    """Put removed leaves back, each fixed on a fresh host vertex.

    Valid whenever every neighbor of a removed leaf is placed in ``base``
    (which places ``g.remove_vertices(removed)[0]``).
    """
    removed = list(removed)
    h, kept = g.remove_vertices(removed)
    index = {v: j for j, v in enumerate(kept)}
    for u in removed:
        if g.degree(u) != 1:
            raise ConstructionError(f"vertex {u} is not a leaf")
        x = g.adj[u][0]
        if x not in index:
            raise ConstructionError(f"leaf {u} hangs on another removed vertex")
        if not is_placed(base, index[x]):
            raise ConstructionError(f"neighbor {x} of leaf {u} is not placed")
    n = base.n_host + len(removed)
    maps = []
    for m in base.maps:
        row = [0] * g.n
        for v in kept:
            row[v] = m[index[v]]
        for j, u in enumerate(removed):
            row[u] = base.n_host + j
        maps.append(tuple(row))
    return _check(Placement(n, tuple(maps)), g, "reattach_leaves")


# -- composition --------------------------------------------------------------


@dataclass(frozen=True)
class ABPartition:
    """Split of ``g`` into blocks A and B plus an independent set U.

    ``placement_a`` places ``g.induced(sorted(A))`` and ``placement_b`` places
    ``g.induced(sorted(B))``.  When U is disjoint from A and B its vertices get
    one fixed host each between the two blocks.
    """

    g: Graph
    A: frozenset
    B: frozenset
    U: frozenset
    placement_a: Placement
    placement_b: Placement
    a: int | None = None

    @classmethod
    def make(cls, g, A, B, U, placement_a, placement_b, a=None):
        return cls(g, frozenset(A), frozenset(B), frozenset(U), placement_a, placement_b, a)


class StructureError(ConstructionError):
    def __init__(self, clause: str, detail: str):
        super().__init__(f"condition {clause} violated: {detail}")
        self.clause = clause


def check_structure(part: ABPartition) -> int | None:
    """Validate the structure conditions; returns the connecting vertex ``a``."""
    g, A, B, U = part.g, part.A, part.B, part.U
    if A & B:
        raise StructureError("partition", "A and B overlap")
    if U & A and U & B:
        raise StructureError("partition", "U meets both A and B")
    cover = A | B | U
    if cover != frozenset(range(g.n)) or (not (U <= A or U <= B) and (U & (A | B))):
        raise StructureError("partition", "A, B, U do not partition the vertex set")
    for u in U:
        if any(y in U for y in g.adj[u]):
            raise StructureError("partition", "U is not independent")
    U_in_a, U_in_b = bool(U) and U <= A, bool(U) and U <= B
    # (i)
    connectors = sorted(x for x in A - U if any(y in B - U for y in g.adj[x]))
    if len(connectors) > 1:
        raise StructureError("(i)", f"vertices {connectors} of A all have neighbors in B")
    a = connectors[0] if connectors else None
    if part.a is not None and a is not None and part.a != a:
        raise StructureError("(i)", f"declared a={part.a} but {a} has neighbors in B")
    if part.a is not None:
        a = part.a
    for u in U:
        if not U_in_a and sum(1 for y in g.adj[u] if y in A) > 1:
            raise StructureError("(i)", f"u={u} has several neighbors in A")
        if not U_in_b and sum(1 for y in g.adj[u] if y in B) > 1:
            raise StructureError("(i)", f"u={u} has several neighbors in B")
    # (ii)
    va, vb = sorted(A), sorted(B)
    ia = {v: j for j, v in enumerate(va)}
    ib = {v: j for j, v in enumerate(vb)}
    for name, p, vs in (("A", part.placement_a, va), ("B", part.placement_b, vb)):
        sub = g.induced(vs)
        rep = verify(sub, p)
        if not rep.ok:
            raise StructureError("(ii)", f"placement of {name} invalid: {rep.reason}")
    k = part.placement_a.k
    if part.placement_b.k != k:
        raise StructureError("(ii)", "blocks have different copy counts")

    def status(v):
        if v in ia:
            return vertex_status(part.placement_a, ia[v])
        if v in ib:
            return vertex_status(part.placement_b, ib[v])
        return Status.FIXED

    # edges from U into its own block are covered by that block's placement
    if U_in_a:
        must_place = {y for u in U for y in g.adj[u] if y in B}
    elif U_in_b:
        must_place = {y for u in U for y in g.adj[u] if y in A}
    else:
        must_place = {y for u in U for y in g.adj[u]}
    if a is not None:
        must_place.add(a)
    for v in sorted(must_place):
        if status(v) is not Status.PLACED:
            raise StructureError("(ii)", f"vertex {v} must be placed")
    for u in sorted(U):
        if k > 1 and status(u) is not Status.FIXED:
            raise StructureError("(ii)", f"vertex {u} of U must be fixed")
    return a


def compose_structure(part: ABPartition) -> Placement:
    """Combine the block placements of an (A, U, B) split into one placement."""
    check_structure(part)
    g = part.g
    va, vb = sorted(part.A), sorted(part.B)
    free_u = sorted(part.U - part.A - part.B)
    k = part.placement_a.k
    na, nb = part.placement_a.n_host, part.placement_b.n_host
    blocks = [(va, part.placement_a, 0)]
    if free_u:
        blocks.append((free_u, Placement(len(free_u), tuple(tuple(range(len(free_u))) for _ in range(k))), na))
    blocks.append((vb, part.placement_b, na + len(free_u)))
    p = assemble(na + len(free_u) + nb, g.n, k, blocks)
    return _check(p, g, "compose_structure")


def union_placement(g: Graph, parts: Iterable[tuple[Sequence[int], Placement]]) -> Placement:
    """Place vertex-disjoint pieces with no edges between them on consecutive blocks."""
    blocks = []
    offset = 0
    k = None
    for vs, p in parts:
        blocks.append((list(vs), p, offset))
        offset += p.n_host
        k = p.k if k is None else k
    if k is None:
        raise ConstructionError("no parts")
    p = assemble(offset, g.n, k, blocks)
    return _check(p, g, "union_placement")


def relabel_domain(p: Placement, order: Sequence[int], n: int | None = None) -> Placement:
    """Placement of a graph whose vertex ``order[j]`` plays vertex ``j`` of ``p``."""
    n = len(order) if n is None else n
    maps = []
    for m in p.maps:
        row = [-1] * n
        for j, v in enumerate(order):
            row[v] = m[j]
        if -1 in row:
            raise PlacementError("domain relabeling misses a vertex")
        maps.append(tuple(row))
    return Placement(p.n_host, tuple(maps))


# -- maximum degree two -------------------------------------------------------


def _degree_two_order(g: Graph) -> list[list[int]]:
    pieces = []
    for comp in components(g):
        cyc = cycle_vertices(g, comp)
        if cyc and len(cyc) == len(comp):
            pieces.append((0, -len(comp), cyc))
        else:
            ends = [v for v in comp if g.degree(v) <= 1]
            start = min(ends)
            walk = [start]
            prev = None
            while True:
                nxt = [y for y in g.adj[walk[-1]] if y != prev]
                if not nxt:
                    break
                prev = walk[-1]
                walk.append(nxt[0])
            pieces.append((1, -len(comp), walk))
    pieces.sort(key=lambda p: (p[0], p[1], p[2]))
    return [p[2] for p in pieces]


def _embed_copy(g, pieces, free, n, rng, node_limit):
    """Embed one copy of ``g`` into the host graph given by ``free`` bitsets."""
    order = [v for piece in pieces for v in piece]
    first_of = {}
    prev_of = {}
    close_to = {}
    for piece in pieces:
        first_of[piece[0]] = True
        for a, b in zip(piece, piece[1:]):
            prev_of[b] = a
        if len(piece) >= 3 and piece[0] in g.adj[piece[-1]]:
            close_to[piece[-1]] = piece[0]
    img = [-1] * g.n
    nodes = 0

    def rec(p, used):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise TimeoutError
        if p == len(order):
            return True
        v = order[p]
        if v in prev_of:
            cand = free[img[prev_of[v]]] & ~used
        else:
            cand = ((1 << n) - 1) & ~used
        if v in close_to:
            cand &= free[img[close_to[v]]]
        hs = [h for h in range(n) if cand >> h & 1]
        rng.shuffle(hs)
        hs.sort(key=lambda h: bin(free[h]).count("1"))
        for h in hs:
            img[v] = h
            if rec(p + 1, used | (1 << h)):
                return True
        img[v] = -1
        return False

    return list(img) if rec(0, 0) else None


def pack_max_degree_two(g: Graph, k: int, *, seed: int = 0, restarts: int = 50,
                        node_limit: int = 200_000) -> Placement:
    """k-placement of a graph with maximum degree at most two.

    Single cycles and paths use the explicit schemes when long enough.
    Otherwise the copies are embedded one at a time into what is left of
    ``K_n``; each embedding is a backtracking search (longest cycle first,
    hosts tried by increasing remaining degree).  Failure raises
    :class:`ConstructionUnknown`, never a claim of impossibility.
    """
    if g.max_degree() > 2:
        raise ConstructionError("maximum degree exceeds two")
    if k < 1:
        raise ConstructionError("k must be positive")
    n = g.n
    comps = components(g)
    if len(comps) == 1 and g.m == n and n >= 2 * k + 1:
        order = cycle_vertices(g, comps[0])
        return _check(relabel_domain(cycle_placement(n, k), order), g, "pack_max_degree_two")
    if len(comps) == 1 and g.m == n - 1 and n >= 2 * k:
        order = _degree_two_order(g)[0]
        return _check(relabel_domain(path_placement(n, k), order), g, "pack_max_degree_two")
    if k * g.m > n * (n - 1) // 2:
        raise ConstructionUnknown("edge count exceeds the host")
    pieces = _degree_two_order(g)
    rng = random.Random(seed)
    for _ in range(restarts):
        free = [((1 << n) - 1) & ~(1 << h) for h in range(n)]
        maps = []
        try:
            for _i in range(k):
                img = _embed_copy(g, pieces, free, n, rng, node_limit)
                if img is None:
                    break
                for u, v in g.edges:
                    a, b = img[u], img[v]
                    free[a] &= ~(1 << b)
                    free[b] &= ~(1 << a)
                maps.append(tuple(img))
        except TimeoutError:
            continue
        if len(maps) == k:
            return _check(Placement(n, tuple(maps)), g, "pack_max_degree_two")
    raise ConstructionUnknown(f"no {k}-placement found after {restarts} restarts")


def pack_n_plus_one(g: Graph, k: int) -> Placement:
    """k-placement of an (n, n+1)-graph with girth >= 2k+1 and minimum degree >= 2.

    Cycle components are placed on their own blocks; the one remaining
    component is a double lasso.
    """
    if k < 4:
        raise ConstructionError("needs k >= 4")
    if g.m != g.n + 1:
        raise ConstructionError("not an (n, n+1)-graph")
    if g.min_degree() < 2:
        raise ConstructionError("minimum degree below two")
    if girth(g) < 2 * k + 1:
        raise ConstructionError(f"girth below {2 * k + 1}")
    parts = []
    for comp in components(g):
        vs = sorted(comp)
        e = sum(1 for u, v in g.edges if u in comp)
        if e == len(vs):
            order = cycle_vertices(g, comp)
            parts.append((order, cycle_placement(len(order), k)))
        else:
            lab = double_lasso_labeling(g, comp)
            if lab is None:
                raise ConstructionError("component is not a double lasso")
            order, s, t = lab
            l = len(order)
            if s == l:
                order, s, t = order[::-1], t, s
            parts.append((order, double_lasso_placement(l, s, t, k)))
    return union_placement(g, parts)
