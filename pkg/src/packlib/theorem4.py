"""4-placements of (n, n-1)-graphs with girth at least 9.

Such a graph is 4-placeable iff ``n >= 8``, ``max degree <= n-4`` and it is
not one of the exceptional trees of :mod:`packlib.wcatalog`.  :func:`pack4`
follows the inductive construction: trees by leaf peeling, small disconnected
graphs by one long lasso, four leaves with distinct neighbors by matching
extension, two tree components by a block split, and the remaining shapes by
leaf deletion plus lasso, cycle and spider pieces.  Every route is checked by
the verifier; a route that does not apply falls through to the next one, and a
randomized search is the last resort (flagged ``FALLBACK`` in the trace).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constructions import (
    ABPartition,
    ConstructionError,
    compose_structure,
    cycle_placement,
    cycle_plus_spider,
    double_lasso_placement,
    extend_by_leaves,
    lasso_placement,
    path_placement,
    paths_union_placement,
    reattach_leaves,
    small_union_placement,
    two_k1_plus_spider,
)
from .graph import (
    Graph,
    components,
    cycle_vertices,
    double_lasso_labeling,
    girth,
    is_connected,
    longest_path_in_tree,
    nodes,
    spider_arm,
)
from .placement import Placement, Status, assemble, is_placed, vertex_status, verify
from .search import SearchBudget, Verdict, embed, embed_with_restarts
from .wcatalog import WCatalog, default_catalog, is_W_member

K = 4


class Refusal(enum.Enum):
    MAX_DEGREE_TOO_HIGH = "MaxDegreeTooHigh"
    TOO_SMALL = "TooSmall"
    EXCEPTION_W = "ExceptionW"
    PARITY = "ParityObstruction"
    OUTSIDE_SCOPE = "OutsideTheoremScope"
    SEARCH_EXHAUSTED = "SearchExhausted"


@dataclass
class PackOutcome:
    placement: Placement | None
    refusal: Refusal | None = None
    trace: list[str] = field(default_factory=list)
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.placement is not None

    @property
    def used_fallback(self) -> bool:
        return any("FALLBACK" in line for line in self.trace)


class RouteFailed(Exception):
    """A construction route does not apply to this graph."""


class _Exhausted(Exception):
    pass


# -- refusal checks -------------------------------------------------------------


def parity_obstruction(g: Graph, k: int = K) -> bool:
    """True when the copies would need every host edge but no host vertex can
    reach odd (or even) total degree n-1."""
    n = g.n
    if k * g.m != n * (n - 1) // 2 or n < 2:
        return False
    parities = {d % 2 for d in g.degrees()}
    if len(parities) != 1:
        return False
    p = parities.pop()
    return (k * p) % 2 != (n - 1) % 2


def refusal_reason(g: Graph, catalog: WCatalog | None = None) -> tuple[Refusal, str] | None:
    """The first applicable refusal, checked in a fixed order."""
    catalog = catalog if catalog is not None else default_catalog()
    n = g.n
    if g.m != n - 1:
        return Refusal.OUTSIDE_SCOPE, f"e(G)={g.m} but n-1={n - 1}"
    if 2 <= n < 2 * K:
        return Refusal.TOO_SMALL, f"4(n-1)={4 * (n - 1)} exceeds e(K_{n})={n * (n - 1) // 2}"
    if is_W_member(g, catalog):
        return Refusal.EXCEPTION_W, "isomorphic to a catalog tree"
    if parity_obstruction(g):
        return Refusal.PARITY, "all degrees have one parity and every host edge is needed"
    if girth(g) < 9:
        return Refusal.OUTSIDE_SCOPE, f"girth {girth(g)} < 9"
    if g.max_degree() > n - 4:
        return Refusal.MAX_DEGREE_TOO_HIGH, f"max degree {g.max_degree()} > n-4={n - 4}"
    return None


# -- leaf deletion ----------------------------------------------------------------


@dataclass
class LeafDeletionRecord:
    """Result of deleting leaves by priority.

    ``reduced`` has vertices ``0..len(kept)-1``; ``kept[i]`` is the original
    vertex.  ``deleted`` maps each removed leaf to its neighbor and ``b`` holds
    the number of non-leaf neighbors of every non-leaf vertex.
    """

    original: Graph
    reduced: Graph
    kept: list[int]
    deleted: dict[int, int]
    b: dict[int, int]

    def reattach(self) -> Graph:
        edges = [(self.kept[u], self.kept[v]) for u, v in self.reduced.edges]
        edges += list(self.deleted.items())
        return Graph(self.original.n, edges)


def _hanging(g: Graph, comp: Iterable[int], cyc: Sequence[int]) -> dict[int, list[int]]:
    """For each cycle vertex, the vertices of the trees hanging from it."""
    cyc_set = set(cyc)
    comp = set(comp)
    owner = {}
    for w in cyc:
        stack = [y for y in g.adj[w] if y not in cyc_set]
        for y in stack:
            owner[y] = w
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in comp and y not in cyc_set and y not in owner:
                    owner[y] = w
                    stack.append(y)
    out = {w: [] for w in cyc}
    for x, w in owner.items():
        out[w].append(x)
    return out


def _tree_path(g: Graph, allowed: set, src: int, dst: int) -> list[int]:
    parent = {src: None}
    stack = [src]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in allowed and y not in parent:
                parent[y] = x
                stack.append(y)
    out = [dst]
    while out[-1] != src:
        out.append(parent[out[-1]])
    return out[::-1]


@dataclass
class LassoOption:
    cycle: list[int]  # cyclic order
    w: int  # attachment vertex (v_s)
    tail: list[int]  # v_{s+1}, ..., v_l
    removed: list[int]  # leaves outside the lasso

    @property
    def l(self) -> int:
        return len(self.cycle) + len(self.tail)

    def cycle_neighbors(self) -> tuple[int, int]:
        i = self.cycle.index(self.w)
        return self.cycle[i - 1], self.cycle[(i + 1) % len(self.cycle)]

    def order(self, v1: int) -> list[int]:
        """Vertices in lasso order v_1..v_l with the given cycle neighbor of w as v_1."""
        c = self.cycle
        s = len(c)
        i = c.index(self.w)
        if c[(i + 1) % s] == v1:
            walk = [c[(i + 1 + j) % s] for j in range(s)]
        elif c[i - 1] == v1:
            walk = [c[(i - 1 - j) % s] for j in range(s)]
        else:
            raise ValueError("v1 must be a cycle neighbor of w")
        return walk + self.tail


def lasso_options(g: Graph, comp: Iterable[int]) -> list[LassoOption]:
    """All lassos obtained from a unicyclic component by deleting leaves."""
    comp = set(comp)
    cyc = cycle_vertices(g, comp)
    if not cyc:
        return []
    hang = _hanging(g, comp, cyc)
    out = []
    for w in cyc:
        tree = hang[w]
        allowed = set(tree) | {w}
        ends = [None] + sorted(tree)
        for x in ends:
            tail = [] if x is None else _tree_path(g, allowed, w, x)[1:]
            kept = set(cyc) | set(tail)
            rest = sorted(comp - kept)
            if all(g.degree(r) == 1 and g.adj[r][0] in kept for r in rest):
                out.append(LassoOption(list(cyc), w, tail, rest))
    return out


def _component_kind(g: Graph, comp) -> str:
    m = sum(g.degree(v) for v in comp) // 2
    if m == len(comp) - 1:
        return "tree"
    if m == len(comp):
        return "unicyclic"
    return "multicyclic"


def delete_leaves_priority(g: Graph) -> LeafDeletionRecord:
    """Delete leaves component by component.

    A component from which deleting leaves leaves a lasso with a nonempty tail
    keeps the longest such lasso; a K_2 loses one end.  Elsewhere a vertex
    with zero or at least two non-leaf neighbors loses all its leaves, and a
    vertex with exactly one keeps one leaf (so nodes of the result are nodes
    of ``g``).
    """
    node_set = nodes(g)
    deleted: dict[int, int] = {}
    b: dict[int, int] = {}
    for v in range(g.n):
        if g.degree(v) >= 2 or (g.degree(v) == 1 and g.degree(g.adj[v][0]) == 1 and v < g.adj[v][0]):
            b[v] = sum(1 for y in g.adj[v] if g.degree(y) >= 2)
    for comp in components(g):
        kind = _component_kind(g, comp)
        if kind == "unicyclic":
            opts = [o for o in lasso_options(g, comp) if o.tail]
            if opts:
                best = max(o.l for o in opts)
                opts = [o for o in opts if o.l == best]
                # prefer a lasso whose attachment has a cycle neighbor without leaves
                opts.sort(key=lambda o: (all(x in node_set for x in o.cycle_neighbors()), o.w, o.tail))
                for r in opts[0].removed:
                    deleted[r] = g.adj[r][0]
                continue
        if kind == "tree" and len(comp) == 2:
            a, c = sorted(comp)
            deleted[c] = a
            continue
        if len(comp) <= 2:
            continue
        leaf_set = {v for v in comp if g.degree(v) == 1}
        for u in sorted(comp - leaf_set):
            mine = sorted(y for y in g.adj[u] if y in leaf_set)
            if not mine:
                continue
            bu = b.get(u, 0)
            drop = mine if bu == 0 or bu >= 2 else mine[1:]
            for y in drop:
                deleted[y] = u
    reduced, kept = g.remove_vertices(deleted)
    return LeafDeletionRecord(g, reduced, kept, deleted, b)


# -- small helpers ------------------------------------------------------------------


def _lift(g: Graph, pieces: Sequence[tuple[Sequence[int], Placement]]) -> Placement:
    """Disjoint blocks for pieces (vertex lists of ``g`` with their placements)."""
    blocks, offset = [], 0
    for vs, p in pieces:
        blocks.append((list(vs), p, offset))
        offset += p.n_host
    return assemble(offset, g.n, K, blocks)


def _on_order(p: Placement, order: Sequence[int], targets: Sequence[int]) -> Placement:
    """Re-index a placement whose vertex ``j`` is ``order[j]`` so that it
    places the vertices listed in ``targets`` (in that order)."""
    pos = {v: j for j, v in enumerate(order)}
    return Placement(p.n_host, tuple(tuple(m[pos[v]] for v in targets) for m in p.maps))


def _check(g: Graph, p: Placement, what: str) -> Placement:
    rep = verify(g, p)
    if not rep.ok:
        raise RouteFailed(f"{what}: {rep.reason}")
    return p


def _tree_reduce(g: Graph, comp: Iterable[int]) -> tuple[list[int], list[int]]:
    """Delete the leaves of a tree component except one per end node.

    Returns ``(kept, removed)``; K_1 and K_2 are kept whole.
    """
    comp = sorted(comp)
    if len(comp) <= 2:
        return comp, []
    leaf_set = {v for v in comp if g.degree(v) == 1}
    inner = [v for v in comp if v not in leaf_set]
    inner_set = set(inner)
    removed = []
    for x in inner:
        mine = sorted(y for y in g.adj[x] if y in leaf_set)
        inner_deg = sum(1 for y in g.adj[x] if y in inner_set)
        keep = 1 if inner_deg <= 1 and mine else 0
        removed += mine[keep:]
    removed_set = set(removed)
    return [v for v in comp if v not in removed_set], removed


def _spider_shape(g: Graph, vertices: Sequence[int]) -> tuple[int, list[list[int]]] | None:
    """Center and arms (each listed from the center outward) of a spider with
    three arms, or None."""
    vs = set(vertices)
    deg = {v: sum(1 for y in g.adj[v] if y in vs) for v in vs}
    big = [v for v in vs if deg[v] >= 3]
    if len(big) != 1 or deg[big[0]] != 3:
        return None
    c = big[0]
    arms = []
    for first in sorted(y for y in g.adj[c] if y in vs):
        arm = [first]
        while deg[arm[-1]] == 2:
            arm.append(next(y for y in g.adj[arm[-1]] if y in vs and y not in (arm[-2] if len(arm) > 1 else c,)))
        arms.append(arm)
    arms.sort(key=len)
    return c, arms


def _path_order(g: Graph, vertices: Sequence[int]) -> list[int] | None:
    vs = set(vertices)
    if len(vs) == 1:
        return list(vs)
    deg = {v: sum(1 for y in g.adj[v] if y in vs) for v in vs}
    if max(deg.values()) > 2:
        return None
    ends = sorted(v for v in vs if deg[v] == 1)
    if len(ends) != 2:
        return None
    out = [ends[0]]
    while len(out) < len(vs):
        out.append(next(y for y in g.adj[out[-1]] if y in vs and (len(out) < 2 or y != out[-2])))
    return out


# -- the solver -----------------------------------------------------------------


class _Packer:
    def __init__(self, catalog: WCatalog, budget: SearchBudget | None, seed: int):
        self.catalog = catalog
        self.budget = budget or SearchBudget(time_limit=120)
        self.seed = seed
        self.trace: list[str] = []
        self.depth = 0

    def log(self, name: str, fallback: bool = False, **params):
        parts = [f"LEMMA {name}"] + [f"{k}={v}" for k, v in params.items()]
        if fallback:
            parts.append("FALLBACK")
        self.trace.append("  " * self.depth + " ".join(parts))

    def qualifies(self, g: Graph) -> bool:
        if g.n == 1 and g.m == 0:
            return True
        return refusal_reason(g, self.catalog) is None

    def sub(self, h: Graph, why: str, need: Iterable[int] = ()) -> Placement:
        """Solve a smaller qualifying instance; vertices in ``need`` must end
        up placed (they carry deleted leaves)."""
        if not self.qualifies(h):
            raise RouteFailed(f"{why}: subinstance outside the theorem")
        need = sorted(set(need))
        self.depth += 1
        try:
            p = self.solve(h)
            if any(not is_placed(p, v) for v in need):
                p = self.good_search(h, need)
            return p
        finally:
            self.depth -= 1

    def good_search(self, h: Graph, need: Sequence[int]) -> Placement:
        """Search a placement of ``h`` with every vertex of ``need`` placed."""
        res = embed_with_restarts(h, K, placed=need, restarts=8, nodes_per_restart=20000, seed=self.seed)
        if not res.found and h.n <= 13:
            res = embed(h, K, placed=need, budget=self.budget)
        if not res.found:
            raise RouteFailed(f"no placement of order {h.n} with required vertices placed")
        self.log("good_search", fallback=True, n=h.n, placed=len(need))
        return res.placement

    # main dispatch

    def solve(self, g: Graph) -> Placement:
        n = g.n
        if n == 1:
            return Placement(1, tuple((0,) for _ in range(K)))
        if is_connected(g):
            return self.tree(g)
        routes = []
        if n <= 9:
            routes.append(self.small_search)
        elif n <= 13:
            routes.append(self.lemma31)
        else:
            routes += [self.four_leaves, self.two_trees, self.main_cases]
        for route in routes:
            try:
                return route(g)
            except (RouteFailed, ConstructionError) as exc:
                self.log("skip", route=route.__name__, reason=str(exc).replace(" ", "_")[:60])
        return self.fallback(g)

    # trees

    def tree(self, t: Graph) -> Placement:
        n = t.n
        if t.max_degree() <= 2:
            order = _path_order(t, range(n))
            self.log("path_placement", t=n)
            return _check(t, _on_order(path_placement(n, K), order, range(n)), "path")
        if n >= 12:
            U = self._peel_choice(t)
            if U is not None:
                h, kept = t.remove_vertices(U)
                self.log("tree_peel", n=n, U=list(U))
                base = self.sub(h, "tree peel")
                return extend_by_leaves(t, U, base)
        return self.small_search(t, name="tree_base")

    def _peel_choice(self, t: Graph) -> tuple[int, ...] | None:
        by_node: dict[int, list[int]] = {}
        for v in range(t.n):
            if t.degree(v) == 1:
                by_node.setdefault(t.adj[v][0], []).append(v)
        cand = sorted(by_node, key=lambda x: (-t.degree(x), x))
        if len(cand) < K:
            return None
        for combo in itertools.islice(itertools.combinations(cand, K), 200):
            U = tuple(sorted(by_node[x][0] for x in combo))
            h, _ = t.remove_vertices(U)
            if self.qualifies(h):
                return U
        return None

    def small_search(self, g: Graph, name: str = "oracle") -> Placement:
        res = embed_with_restarts(g, K, restarts=8, nodes_per_restart=20000, seed=self.seed)
        if not res.found:
            res = embed(g, K, budget=self.budget)
        if not res.found:
            raise _Exhausted(f"search {res.verdict.value} on n={g.n}")
        self.log(name, n=g.n, nodes=res.nodes)
        return res.placement

    # 10 <= n <= 13

    def lemma31(self, g: Graph) -> Placement:
        comps = components(g)
        if len(comps) != 2:
            raise RouteFailed("expected two components")
        cyc_comp = [c for c in comps if _component_kind(g, c) == "unicyclic"]
        tree_comp = [c for c in comps if _component_kind(g, c) == "tree"]
        if len(cyc_comp) != 1 or len(tree_comp) != 1:
            raise RouteFailed("expected one unicyclic and one tree component")
        A, B = cyc_comp[0], tree_comp[0]
        opts = lasso_options(g, A)
        good = []
        for o in opts:
            for v1 in o.cycle_neighbors():
                if g.degree(v1) == 2:
                    good.append((o, v1))
        if not good:
            raise RouteFailed("no lasso with a degree-2 cycle neighbor")
        o, v1 = max(good, key=lambda ov: (ov[0].l, -ov[0].w, -ov[1]))
        pth = longest_path_in_tree(g, B)
        on_path = set(pth)
        b_removed = sorted(set(B) - on_path)
        if any(g.degree(r) != 1 or g.adj[r][0] not in on_path for r in b_removed):
            raise RouteFailed("tree component is not a path plus leaves")
        order = o.order(v1) + pth
        s = len(o.cycle)
        p = lasso_placement(len(order), s, K)
        removed = o.removed + b_removed
        h, kept = g.remove_vertices(removed)
        base = _on_order(p, order, kept)
        self.log("lemma31", n=g.n, lasso=f"L({len(order)},{s})", removed=len(removed))
        return reattach_leaves(g, removed, _check(h, base, "lemma31"))

    # four leaves with distinct neighbors

    def four_leaves(self, g: Graph) -> Placement:
        by_node: dict[int, list[int]] = {}
        for v in range(g.n):
            if g.degree(v) == 1 and g.degree(g.adj[v][0]) >= 2:
                by_node.setdefault(g.adj[v][0], []).append(v)
        if len(by_node) < K:
            raise RouteFailed("fewer than four nodes")
        cand = sorted(by_node, key=lambda x: (-g.degree(x), x))
        for combo in itertools.islice(itertools.combinations(cand, K), 50):
            U = tuple(sorted(by_node[x][0] for x in combo))
            h, _ = g.remove_vertices(U)
            if self.qualifies(h):
                self.log("four_leaves", n=g.n, U=list(U))
                base = self.sub(h, "four leaves")
                return extend_by_leaves(g, U, base)
        raise RouteFailed("no qualifying four-leaf removal")

    # two or more tree components

    def _connect_rest(self, g: Graph, rest: Sequence[int]) -> tuple[Graph, list[int]]:
        """Induced graph on ``rest`` plus edges joining components (min degree
        endpoints) until it has one edge fewer than vertices."""
        rest = sorted(rest)
        b = g.induced(rest)
        need = b.n - 1 - b.m
        if need < 0:
            raise RouteFailed("remaining part has too many edges")
        comps = components(b)
        if need > len(comps) - 1:
            raise RouteFailed("not enough components to join")
        deg = b.degrees()
        added = []
        merged = set(comps[0])
        for j in range(need):
            nxt = comps[j + 1]
            x = min(merged, key=lambda v: (deg[v], v))
            y = min(nxt, key=lambda v: (deg[v], v))
            added.append((x, y))
            deg[x] += 1
            deg[y] += 1
            merged |= nxt
        return b.add_edges(added), rest

    def _place_rest(self, g: Graph, rest: Sequence[int], why: str) -> tuple[Placement, list[int]]:
        b2, order = self._connect_rest(g, rest)
        pb = self.sub(b2, why)
        return _check(g.induced(order), pb, why), order

    def two_trees(self, g: Graph) -> Placement:
        comps = components(g)
        trees = [c for c in comps if _component_kind(g, c) == "tree"]
        if len(trees) < 2:
            raise RouteFailed("fewer than two tree components")
        t1, t2 = trees[0], trees[1]
        others = [v for v in range(g.n) if v not in t1 and v not in t2]
        u = min(others, key=lambda v: (-g.degree(v), v))
        if len(t1) + len(t2) >= 3:
            pa, a_vertices = self._pair_block(g, t1, t2, u)
            rest = [v for v in range(g.n) if v not in set(a_vertices)]
            pb, b_order = self._place_rest(g, rest, "two trees")
            self.log("two_trees", n=g.n, u=u, A=len(a_vertices))
            part = ABPartition.make(g, a_vertices, b_order, (), pa, pb, a=u)
            return compose_structure(part)
        isolated = sorted(v for c in trees for v in c if len(c) == 1)
        if len(isolated) >= 3 and g.degree(u) >= 4:
            a_vertices = sorted(isolated[:3] + [u])
            iu = a_vertices.index(u)
            maps = []
            for i in range(K):
                row = [0] * 4
                row[iu] = i
                others4 = [h for h in range(4) if h != i]
                for j, idx in enumerate(x for x in range(4) if x != iu):
                    row[idx] = others4[j]
                maps.append(tuple(row))
            pa = Placement(4, tuple(maps))
            rest = [v for v in range(g.n) if v not in set(a_vertices)]
            pb, b_order = self._place_rest(g, rest, "isolated hub")
            self.log("isolated_hub", n=g.n, u=u, degree=g.degree(u))
            part = ABPartition.make(g, a_vertices, b_order, (), pa, pb, a=u)
            return compose_structure(part)
        if len(isolated) == 2:
            try:
                return self._double_lasso_split(g, isolated)
            except (RouteFailed, ConstructionError) as exc:
                self.log("skip", route="double_lasso_split", reason=str(exc).replace(" ", "_")[:60])
        return self._triple_route(g, isolated)

    def _pair_block(self, g: Graph, t1, t2, u) -> tuple[Placement, list[int]]:
        """Placement of T1 + T2 + {u} with u placed (leaves re-attached fixed)."""
        kept1, rem1 = _tree_reduce(g, t1)
        kept2, rem2 = _tree_reduce(g, t2)
        shapes = []
        for kept in (kept1, kept2):
            po = _path_order(g, kept)
            if po is not None:
                shapes.append(("path", po))
                continue
            sp = _spider_shape(g, kept)
            if sp is None:
                raise RouteFailed("tree component reduces to neither path nor spider")
            shapes.append(("spider", sp))
        removed = rem1 + rem2
        if shapes[0][0] == "path" and shapes[1][0] == "path":
            p1, p2 = shapes[0][1], shapes[1][1]
            order = p1 + p2 + [u]
            core = small_union_placement(len(p1), len(p2))
            self.log("paths_plus_vertex", l1=len(p1), l2=len(p2))
        else:
            if shapes[0][0] == "spider":
                (c, arms), other = shapes[0][1], shapes[1]
            else:
                (c, arms), other = shapes[1][1], shapes[0]
            if other[0] != "path" or len(other[1]) > 2:
                raise RouteFailed("spider next to a long path")
            extra = other[1]
            if len(extra) == 2:
                removed = removed + [extra[1]]
                extra = extra[:1]
            lens = [len(a) for a in arms]
            if lens[0] < 2:
                raise RouteFailed("spider arm of length one")
            order = [c] + [v for a in arms for v in a] + extra + [u]
            core = two_k1_plus_spider(*lens)
            self.log("spider_plus_two", arms=tuple(lens))
        a_vertices = sorted(set(t1) | set(t2) | {u})
        sub = g.induced(a_vertices)
        idx = {v: i for i, v in enumerate(a_vertices)}
        removed_local = [idx[v] for v in removed]
        h, kept_local = sub.remove_vertices(removed_local)
        base = _on_order(core, [idx[v] for v in order], kept_local)
        pa = reattach_leaves(sub, removed_local, _check(h, base, "pair block"))
        if not is_placed(pa, idx[u]):
            raise RouteFailed("hub not placed in pair block")
        return pa, a_vertices

    def _double_lasso_split(self, g: Graph, isolated: list[int]) -> Placement:
        multi = [c for c in components(g) if _component_kind(g, c) == "multicyclic"]
        if len(multi) != 1:
            raise RouteFailed("no bicyclic component")
        lab = double_lasso_labeling(g, multi[0])
        if lab is None:
            raise RouteFailed("bicyclic component is not a bare double lasso")
        order, s, t = lab
        l = len(order)
        if s == l:
            order, s, t = order[::-1], t, s
        pd = double_lasso_placement(l, s, t, K)
        rest = sorted(set(range(g.n)) - set(order))
        r = g.induced(rest)
        i0, i1 = rest.index(isolated[0]), rest.index(isolated[1])
        r2 = r.add_edges([(i0, i1)])
        self.log("double_lasso_split", l=l, s=s, t=t)
        pr = self.sub(r2, "double lasso split")
        return _check(g, _lift(g, [(order, pd), (rest, pr)]), "double lasso split")

    def _triple_route(self, g: Graph, isolated: list[int]) -> Placement:
        need = {(3, 2, 2): 1, (3, 2, 3): 2, (3, 3, 3): 3}
        for u in range(g.n):
            if g.degree(u) != 3:
                continue
            for v in g.adj[u]:
                for w in g.adj[v]:
                    if w == u:
                        continue
                    seq = (g.degree(u), g.degree(v), g.degree(w))
                    x = need.get(seq)
                    if x is None or len(isolated) < x + 1:
                        continue
                    M = isolated[: x + 1]
                    h, kept = g.remove_vertices(M + [u, v, w])
                    if not self.qualifies(h):
                        continue
                    self.log("triple", S=seq, u=u, v=v, w=w)
                    ph = self.sub(h, "triple")
                    return claim_triple_placement(g, (u, v, w), M, ph, trace=self)
        raise RouteFailed("no usable degree triple")

    # one tree component

    def main_cases(self, g: Graph) -> Placement:
        rec = delete_leaves_priority(g)
        red, kept = rec.reduced, rec.kept
        comps = components(red)
        kinds = [_component_kind(red, c) for c in comps]
        trees = [c for c, k in zip(comps, kinds) if k == "tree"]
        if len(trees) != 1:
            raise RouteFailed("expected exactly one tree component")
        tree = trees[0]
        if any(k == "multicyclic" for k in kinds):
            raise RouteFailed("bicyclic component present")
        others = [c for c in comps if c is not tree]
        pos = {v: i for i, v in enumerate(kept)}
        need = {pos[x] for x in rec.deleted.values()}
        try:
            if len(tree) > 1:
                pr = self._case1(red, tree, others, need)
            else:
                pr = self._case2(red, tree, others, need)
            pr = _check(red, pr, "reduced graph")
            if any(not is_placed(pr, v) for v in need):
                raise RouteFailed("a vertex carrying deleted leaves is fixed")
        except (RouteFailed, ConstructionError) as exc:
            self.log("skip", route="leaf_deleted_cases", reason=str(exc).replace(" ", "_")[:60])
            pr = self.good_search(red, sorted(need))
        return reattach_leaves(g, sorted(rec.deleted), pr)

    def _cycle_pieces(self, red: Graph, cycles, need=frozenset()) -> list[tuple[list[int], Placement]]:
        """Cycle components; the fixed first vertex avoids ``need`` when possible."""
        out = []
        for c in cycles:
            order = cycle_vertices(red, c)
            start = next((j for j, x in enumerate(order) if x not in need), 0)
            order = order[start:] + order[:start]
            out.append((order, cycle_placement(len(order), K)))
        return out

    def _lasso_with(self, red: Graph, comp, extra_path: Sequence[int], need) -> tuple[list[int], Placement]:
        """A lasso or cycle component with a path glued to the end of its tail."""
        opts = [o for o in lasso_options(red, comp) if not o.removed]
        if not opts:
            raise RouteFailed("component is not a lasso")
        o = opts[0]
        v1s = [x for x in o.cycle_neighbors() if x not in need]
        if not v1s:
            raise RouteFailed("both cycle neighbors of the attachment carry leaves")
        order = o.order(v1s[0]) + list(extra_path)
        return order, lasso_placement(len(order), len(o.cycle), K)

    def _case1(self, red: Graph, tree, others, need) -> Placement:
        po = _path_order(red, tree)
        if po is not None:
            lassos = [c for c in others if len(cycle_vertices(red, c)) < len(c)]
            if len(lassos) > 1:
                raise RouteFailed("several lassos next to a path")
            host = lassos[0] if lassos else (others[0] if others else None)
            if host is None:
                raise RouteFailed("no cyclic component")
            order, p = self._lasso_with(red, host, po, need)
            rest = [c for c in others if c is not host]
            self.log("case1_path", t=len(po), lasso=f"L({len(order)},{len(cycle_vertices(red, host))})")
            return _lift(red, [(order, p)] + self._cycle_pieces(red, rest, need))
        sp = _spider_shape(red, tree)
        if sp is None:
            raise RouteFailed("tree is neither a path nor a spider")
        c, arms = sp
        lens = [len(a) for a in arms]
        if lens[0] < 2:
            raise RouteFailed("spider arm of length one")
        if any(len(cycle_vertices(red, x)) != len(x) for x in others):
            raise RouteFailed("spider next to a non-cycle component")
        if not others:
            raise RouteFailed("no cycle component")
        cyc = cycle_vertices(red, others[0])
        rest = others[1:]
        if lens[2] == 2:
            p = cycle_plus_spider(len(cyc))
            order = cyc + [c] + [v for a in arms for v in a]
            self.log("case1_cycle_spider", s=len(cyc))
            return _lift(red, [(order, p)] + self._cycle_pieces(red, rest, need))
        # delete u_2 from the cycle and thread the cycle between arms 2 and 3
        s = len(cyc)
        u1, u2, u3 = cyc[0], cyc[1], cyc[2]
        walk = [u1] + cyc[:2:-1] + [u3]  # u_1, u_s, ..., u_3
        a1, a2, a3 = arms
        order = a3 + walk + a2[::-1] + [c] + a1
        lp = lasso_placement(len(order), len(a3) + len(walk) + len(a2) + 1, K)
        maps = []
        hosts = lp.n_host
        for m in lp.maps:
            maps.append(tuple(m) + (hosts,))
        p = Placement(hosts + 1, tuple(maps))
        order = order + [u2]
        self.log("case1_spider_lasso", arms=tuple(lens), s=s)
        return _lift(red, [(order, p)] + self._cycle_pieces(red, rest, need))

    def _case2(self, red: Graph, tree, others, need) -> Placement:
        k1 = list(tree)
        shapes = []
        for c in others:
            opts = [o for o in lasso_options(red, c) if not o.removed]
            shapes.append((c, opts))
        if all(opts for _, opts in shapes):
            # every component is a cycle or a lasso; the isolated vertex extends one tail
            host = max(range(len(shapes)), key=lambda i: (bool(shapes[i][1][0].tail), -i))
            pieces = []
            for i, (c, opts) in enumerate(shapes):
                extra = k1 if i == host else []
                if opts[0].tail or extra:
                    order, p = self._lasso_with(red, c, extra, need)
                    pieces.append((order, p))
                else:
                    pieces += self._cycle_pieces(red, [c], need)
            self.log("case2_lassos", components=len(others))
            return _lift(red, pieces)
        if any(len(cycle_vertices(red, c)) == len(c) for c in others):
            cyc = next(c for c in others if len(cycle_vertices(red, c)) == len(c))
            rest = sorted(set(range(red.n)) - set(cyc))
            r = red.induced(rest)
            self.log("case2_cycle_split", s=len(cyc))
            pr = self.sub(r, "cycle split", [i for i, x in enumerate(rest) if x in need])
            return _lift(red, self._cycle_pieces(red, [cyc], need) + [(rest, pr)])
        bad = [c for c, opts in shapes if not opts]
        if len(bad) != 1 or len(others) != 1:
            raise RouteFailed("two components with several trees")
        comp = bad[0]
        cyc = cycle_vertices(red, comp)
        hang = _hanging(red, comp, cyc)
        M = [w for w in cyc if hang[w]]
        if len(M) == 1:
            return self._cycle_peel(red, k1, comp, cyc, M[0], need)
        if len(M) == 2:
            return self._m2(red, k1, comp, cyc, M, hang, need)
        if len(M) == 3:
            return self._m3(red, k1, comp, cyc, M, hang, need)
        raise RouteFailed("more than three attachment vertices")

    def _cycle_peel(self, red, k1, comp, cyc, u1, need) -> Placement:
        """Cut the cycle at its attachment; the path C_s - u_1 is placed by the
        zigzag and the rest recursively with one joining edge."""
        i = cyc.index(u1)
        pth = [cyc[(i + 1 + j) % len(cyc)] for j in range(len(cyc) - 1)]
        rest = sorted(set(range(red.n)) - set(pth))
        r = red.induced(rest)
        r2 = r.add_edges([(rest.index(k1[0]), rest.index(u1))])
        self.log("case2_cycle_peel", s=len(cyc), rest=len(rest))
        pr = self.sub(r2, "cycle peel", [j for j, x in enumerate(rest) if x in need])
        pp = path_placement(len(pth), K)
        return _check(red, _lift(red, [(pth, pp), (rest, pr)]), "cycle peel")

    def _m2(self, red, k1, comp, cyc, M, hang, need) -> Placement:
        """Cycle as one block with an attachment vertex fixed, paths plus K_1 as the other."""
        paths = []
        for w in M:
            po = _path_order(red, hang[w])
            if po is None:
                raise RouteFailed("hanging tree is not a path")
            first = next(x for x in po if w in red.adj[x])
            if po[0] != first:
                po = po[::-1]
            if po[0] != first:
                raise RouteFailed("path does not hang by its end")
            paths.append(po)
        for fixed_i in (0, 1):
            u1 = M[fixed_i]
            if u1 in need:
                continue
            i = cyc.index(u1)
            order = [cyc[(i + j) % len(cyc)] for j in range(len(cyc))]
            pc = cycle_placement(len(cyc), K)
            b_paths = paths[:]
            b_vertices = [v for pth in b_paths for v in pth] + k1
            pb = paths_union_placement([len(p) for p in b_paths])
            A = order
            try:
                part = ABPartition.make(red, A, b_vertices, [u1],
                                        _on_order(pc, order, sorted(A)),
                                        _on_order(pb, b_vertices, sorted(b_vertices)),
                                        a=M[1 - fixed_i])
                p = compose_structure(part)
            except ConstructionError:
                continue
            self.log("case2_two_attachments", s=len(cyc), paths=tuple(len(x) for x in paths))
            return p
        raise RouteFailed("no valid split with two attachments")

    def _m3(self, red, k1, comp, cyc, M, hang, need) -> Placement:
        """Lasso through the shortest hanging path; the second path's first
        vertex is fixed between the blocks."""
        paths = {}
        for w in M:
            po = _path_order(red, hang[w])
            if po is None:
                raise RouteFailed("hanging tree is not a path")
            if w not in red.adj[po[0]]:
                po = po[::-1]
            if w not in red.adj[po[0]]:
                raise RouteFailed("path does not hang by its end")
            paths[w] = po
        ws = sorted(M, key=lambda w: (len(paths[w]), w))
        w1, w2, w3 = ws
        if len(paths[w2]) < 2:
            raise RouteFailed("second path too short")
        s = len(cyc)
        i = cyc.index(w1)
        for v1 in (cyc[i - 1], cyc[(i + 1) % s]):
            if v1 in (w2, w3) or v1 in need:
                continue
            j = cyc.index(v1)
            step = -1 if cyc[(i + 1) % s] == v1 else 1
            walk = [v1] + [cyc[(j + step * t) % s] for t in range(1, s)]
            if walk[-1] != w1:
                walk = [v1] + [cyc[(j - step * t) % s] for t in range(1, s)]
            order_a = walk + paths[w1]
            pa = lasso_placement(len(order_a), s, K)
            U = [paths[w2][0]]
            if U[0] in need:
                continue
            b_paths = [paths[w3], paths[w2][1:]]
            b_vertices = [v for p in b_paths for v in p] + k1
            pb = paths_union_placement([len(p) for p in b_paths])
            try:
                part = ABPartition.make(red, order_a, b_vertices, U,
                                        _on_order(pa, order_a, sorted(order_a)),
                                        _on_order(pb, b_vertices, sorted(b_vertices)),
                                        a=w3)
                p = compose_structure(part)
            except ConstructionError:
                continue
            self.log("case2_three_attachments", s=s, paths=tuple(len(paths[w]) for w in ws))
            return p
        raise RouteFailed("no valid split with three attachments")

    # last resort

    def fallback(self, g: Graph) -> Placement:
        comps = components(g)
        for c in comps:
            order = cycle_vertices(g, c)
            if order and len(order) == len(c):
                rest = sorted(set(range(g.n)) - set(c))
                r = g.induced(rest)
                if self.qualifies(r):
                    self.log("cycle_split", fallback=True, s=len(order))
                    pr = self.sub(r, "cycle split")
                    return _check(g, _lift(g, [(order, cycle_placement(len(order), K)), (rest, pr)]),
                                  "cycle split")
        res = embed_with_restarts(g, K, restarts=8, nodes_per_restart=50000, seed=self.seed)
        if not res.found and g.n <= 13:
            res = embed(g, K, budget=self.budget)
        if not res.found:
            raise _Exhausted(f"fallback search {res.verdict.value} on n={g.n}")
        self.log("search", fallback=True, n=g.n, nodes=res.nodes)
        return res.placement


# -- the triple claim --------------------------------------------------------------


def _permute_copies(p: Placement, perm: Sequence[int]) -> Placement:
    return Placement(p.n_host, tuple(p.maps[i] for i in perm))


def claim_triple_placement(
    g: Graph,
    triple: tuple[int, int, int],
    isolated: Sequence[int],
    h_placement: Placement,
    trace: _Packer | None = None,
) -> Placement:
    """Extend a placement of ``H = g - M`` to ``g``, where ``M`` is the path
    ``u v w`` plus some isolated vertices, using a separate host block for M.

    Degree sequence (3,2,2) uses the explicit assignment table (or a block
    split when ``w``'s outside neighbor is placed or fixed).  Other sequences
    pick the pair of copies given by the disjoint-neighborhood choice, pin the
    shared image, and enumerate the rest; every result is verified.
    """
    u, v, w = triple
    M = list(isolated) + [u, v, w]
    h, kept = g.remove_vertices(M)
    rep = verify(h, h_placement)
    if not rep.ok:
        raise ConstructionError(f"H placement invalid: {rep.reason}")
    idx = {x: i for i, x in enumerate(kept)}
    nh = h.n
    names = [u, v, w] + list(isolated)
    host = {x: nh + i for i, x in enumerate(names)}  # host named after an M vertex
    N = {x: [y for y in g.adj[x] if y not in set(M)] for x in (u, v, w)}
    seq = (g.degree(u), g.degree(v), g.degree(w))

    def log(name, **kw):
        if trace is not None:
            trace.log(name, **kw)

    def finish(hp: Placement, rows: list[tuple[int, int, int]]) -> Placement:
        maps = []
        for i in range(K):
            row = [0] * g.n
            for x in kept:
                row[x] = hp.maps[i][idx[x]]
            a, b, c = rows[i]
            row[u], row[v], row[w] = a, b, c
            spare = [hh for hh in range(nh, g.n) if hh not in (a, b, c)]
            for s_vertex, hh in zip(isolated, spare):
                row[s_vertex] = hh
            maps.append(tuple(row))
        return Placement(g.n, tuple(maps))

    if seq == (3, 2, 2):
        w1 = N[w][0]
        st = vertex_status(h_placement, idx[w1])
        s1, s2 = isolated[0], isolated[1]
        sub_order = [u, v, w, s1, s2]
        if st is Status.FIXED:
            # M as one block with w placed; w1 plays U inside H
            core = small_union_placement(3, 1)  # P_3 + K_1 + K_1, dispersed
            order = [u, v, w, s1, s2]
            A = sorted(order)
            pa = _on_order(core, order, A)
            part = ABPartition.make(g, A, kept, [w1], pa, h_placement, a=u)
            log("claim_block", S=seq, case="fixed")
            return compose_structure(part)
        if st is Status.PLACED:
            core = small_union_placement(2, 1)  # P_2 + K_1 + K_1
            order = [u, v, s1, s2]
            A = sorted(order)
            pa = _on_order(core, order, A)
            part = ABPartition.make(g, A, kept, [w], pa, h_placement, a=u)
            log("claim_block", S=seq, case="placed")
            return compose_structure(part)
        imgs = h_placement.images(idx[w1])
        # reorder copies so copies 1 and 2 share the image p, copy 3 differs
        perm = None
        for a, b in itertools.combinations(range(K), 2):
            if imgs[a] == imgs[b]:
                c = next(x for x in range(K) if imgs[x] != imgs[a])
                d = next(x for x in range(K) if x not in (a, b, c))
                perm = (a, b, c, d)
                break
        hp = _permute_copies(h_placement, perm)
        p_img, q_img = imgs[perm[0]], imgs[perm[2]]
        f4 = imgs[perm[3]]
        H = host
        rows = [(H[v], H[w], H[s1]), (H[s1], H[v], H[u]), (H[s2], H[s1], H[u])]
        if f4 == p_img:
            x_, y_ = H[s2], H[v]
        elif f4 == q_img:
            x_, y_ = H[u], H[s2]
        else:
            x_, y_ = H[s2], H[u]
        rows.append((H[w], x_, y_))
        p = finish(hp, rows)
        if verify(g, p).ok:
            log("claim_table", S=seq)
            return p
        log("claim_table_rejected", S=seq)
        return _enumerate_triple(g, triple, isolated, hp, kept, idx, host, N, finish, log, pins={})

    # sequences (3,2,3) and (3,3,3): choose alpha, beta, l, l' by the disjointness rule
    best = None
    for alpha, beta in itertools.permutations(range(K), 2):
        for l, lp in itertools.product((u, w), repeat=2):
            t = w if l == u else u
            A = {h_placement.maps[alpha][idx[y]] for y in N[l]}
            B = {h_placement.maps[beta][idx[y]] for y in N[lp]}
            if A & B:
                continue
            T = {h_placement.maps[alpha][idx[y]] for y in N[t]}
            score = len(T & B)
            key = (-score, alpha, beta, 0 if l == u else 1, 0 if lp == u else 1)
            if best is None or key < best[0]:
                best = (key, alpha, beta, l, lp)
    pins = {}
    hp = h_placement
    if best is not None:
        _, alpha, beta, l, lp = best
        rest = [x for x in range(K) if x not in (alpha, beta)]
        hp = _permute_copies(h_placement, (alpha, beta, *rest))
        pins = {(0, l): host[u], (1, lp): host[u]}
        log("claim_choice", S=seq, alpha=alpha + 1, beta=beta + 1, l=l, lp=lp)
    return _enumerate_triple(g, triple, isolated, hp, kept, idx, host, N, finish, log, pins)


def _enumerate_triple(g, triple, isolated, hp, kept, idx, host, N, finish, log, pins) -> Placement:
    u, v, w = triple
    block = sorted(host.values())
    used: set[tuple[int, int]] = set()
    rows: list[tuple[int, int, int]] = []

    def edges_of(i, a, b, c):
        out = [(a, b), (b, c)]
        for x, hx in ((u, a), (v, b), (w, c)):
            for y in N[x]:
                out.append((hx, hp.maps[i][idx[y]]))
        return [(min(e), max(e)) for e in out]

    def rec(i):
        if i == K:
            return True
        for a, b, c in itertools.permutations(block, 3):
            if pins.get((i, u), a) != a or pins.get((i, v), b) != b or pins.get((i, w), c) != c:
                continue
            es = edges_of(i, a, b, c)
            if any(e in used for e in es) or len(set(es)) != len(es):
                continue
            used.update(es)
            rows.append((a, b, c))
            if rec(i + 1):
                return True
            rows.pop()
            used.difference_update(es)
        return False

    if not rec(0):
        if pins:
            log("claim_unpinned", fallback=True)
            return _enumerate_triple(g, triple, isolated, hp, kept, idx, host, N, finish, log, {})
        raise ConstructionError("no assignment of the triple found")
    p = finish(hp, rows)
    rep = verify(g, p)
    if not rep.ok:
        raise ConstructionError(f"triple assignment invalid: {rep.reason}")
    log("claim_search", S=(g.degree(u), g.degree(v), g.degree(w)))
    return p


# -- public entry points ---------------------------------------------------------


def pack4(
    g: Graph,
    *,
    catalog: WCatalog | None = None,
    budget: SearchBudget | None = None,
    seed: int = 0,
) -> PackOutcome:
    """Decide 4-placeability of an (n, n-1)-graph and certify a yes answer."""
    catalog = catalog if catalog is not None else default_catalog()
    packer = _Packer(catalog, budget, seed)
    if g.n == 1 and g.m == 0:
        return PackOutcome(Placement(1, tuple((0,) for _ in range(K))), None, ["LEMMA trivial n=1"])
    reason = refusal_reason(g, catalog)
    if reason is not None:
        packer.log("refuse", reason=reason[0].value)
        return PackOutcome(None, reason[0], packer.trace, reason[1])
    try:
        p = packer.solve(g)
    except _Exhausted as exc:
        return PackOutcome(None, Refusal.SEARCH_EXHAUSTED, packer.trace, str(exc))
    rep = verify(g, p)
    if not rep.ok:  # never hand out an unverified placement
        return PackOutcome(None, Refusal.SEARCH_EXHAUSTED, packer.trace, f"internal: {rep.reason}")
    return PackOutcome(p, None, packer.trace)


def tree_pack4(t: Graph, *, catalog: WCatalog | None = None, budget: SearchBudget | None = None,
               seed: int = 0) -> PackOutcome:
    """:func:`pack4` restricted to trees."""
    if t.m != t.n - 1 or not is_connected(t):
        return PackOutcome(None, Refusal.OUTSIDE_SCOPE, [], "not a tree")
    return pack4(t, catalog=catalog, budget=budget, seed=seed)


def lemma31(g: Graph) -> Placement:
    """Placement of a disconnected qualifying graph with 10 <= n <= 13 via one lasso."""
    if not 10 <= g.n <= 13 or is_connected(g):
        raise ConstructionError("needs a disconnected graph with 10 <= n <= 13")
    packer = _Packer(default_catalog(), None, 0)
    try:
        return packer.lemma31(g)
    except RouteFailed as exc:
        raise ConstructionError(str(exc)) from None


def lemma33(g: Graph) -> Placement:
    """Placement of a qualifying graph with at least two tree components."""
    packer = _Packer(default_catalog(), None, 0)
    try:
        return packer.two_trees(g)
    except (RouteFailed, _Exhausted) as exc:
        raise ConstructionError(str(exc)) from None


def case2_dispatch(g: Graph) -> Placement:
    """Placement of a qualifying graph with one tree component via leaf deletion."""
    packer = _Packer(default_catalog(), None, 0)
    try:
        return packer.main_cases(g)
    except (RouteFailed, _Exhausted) as exc:
        raise ConstructionError(str(exc)) from None
