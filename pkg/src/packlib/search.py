"""Backtracking search for k-placements.

Copies are embedded one after another into ``K_n``.  Copy 1 is the identity
(any placement can be relabeled so), the remaining copies are built vertex by
vertex, each new vertex adjacent to as many already-embedded ones as
possible.  Host edges still available are kept as one bitmask per host vertex.

Symmetry breaking (valid because copies are interchangeable and because an
automorphism of ``G`` applied to every map leaves copy 1's edge set alone):

* the first vertex ``r`` of copy 2 goes to the representative of an orbit of
  ``Aut(G)`` acting on the host through copy 1;
* copies 3..k put ``r`` into orbits no smaller than copy 2's, and in
  non-decreasing host order among themselves;
* within every copy, automorphisms of ``G`` that fix ``r`` are broken: in a
  tree component, isomorphic sibling subtrees get increasing root images;
  elsewhere twin vertices (equal open neighborhoods) get increasing images.
  Either swap leaves the copy's edge set unchanged.

Pruning: when ``G`` spans the host, every host vertex needs ``min_degree(G)``
free edges for each copy still to come.
"""

from __future__ import annotations

import enum
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph
from .iso import vertex_orbits
from .placement import Placement, verify


class Verdict(enum.Enum):
    FOUND = "Found"
    IMPOSSIBLE = "Impossible"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int | None = None
    time_limit: float | None = None
    symmetry: bool = True


@dataclass
class SearchResult:
    verdict: Verdict
    placement: Placement | None = None
    nodes: int = 0
    elapsed: float = 0.0
    note: str = ""

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND


class _Abort(Exception):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def embedding_order(g: Graph) -> list[int]:
    """Vertex order: start at a max-degree vertex, then greedily the vertex with
    most already-ordered neighbors (ties: higher degree, smaller id).  Isolated
    vertices come last."""
    n = g.n
    placed = [False] * n
    score = [0] * n
    order: list[int] = []
    deg = g.degrees()
    while len(order) < n:
        best = None
        for v in range(n):
            if placed[v] or (deg[v] == 0 and any(not placed[x] and deg[x] > 0 for x in range(n))):
                continue
            key = (score[v], deg[v], -v)
            if best is None or key > best[0]:
                best = (key, v)
        v = best[1]
        placed[v] = True
        order.append(v)
        for y in g.adj[v]:
            score[y] += 1
    return order


def _rooted_codes(g: Graph, root: int, comp: set) -> tuple[dict, dict]:
    parent = {root: None}
    order = [root]
    for x in order:
        for y in g.adj[x]:
            if y in comp and y not in parent:
                parent[y] = x
                order.append(y)
    code = {}
    for x in reversed(order):
        code[x] = "(" + "".join(sorted(code[y] for y in g.adj[x] if parent.get(y) == x)) + ")"
    return parent, code


def _domain_order_constraints(g: Graph, order: Sequence[int], placed, fixed) -> list[int]:
    """For each order position, an earlier vertex whose image must be smaller, or -1."""
    pos = {v: i for i, v in enumerate(order)}
    pred = [-1] * len(order)
    status = lambda v: (v in placed, v in fixed)
    seen = set()
    root0 = order[0] if order else None
    for start in order:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        m = sum(len(g.adj[v]) for v in comp) // 2
        last = {}
        if m == len(comp) - 1:
            parent, code = _rooted_codes(g, start, comp)
            for v in sorted(comp, key=pos.get):
                if v == start:
                    continue
                # constraint statuses must agree along the whole swapped subtree;
                # conservatively require them to agree with the root of the subtree
                key = (parent[v], code[v], status(v))
                if key in last and _same_status_subtree(g, parent, last[key], v, placed, fixed):
                    pred[pos[v]] = last[key]
                last[key] = v
        else:
            for v in sorted(comp, key=pos.get):
                if v == root0 or not g.adj[v]:
                    continue
                key = (g.adj[v], status(v))
                if root0 in comp and key == (g.adj[root0], status(root0)):
                    continue
                if key in last:
                    pred[pos[v]] = last[key]
                last[key] = v
    return pred


def _same_status_subtree(g, parent, a, b, placed, fixed) -> bool:
    if not placed and not fixed:
        return True

    def sub(r):
        out = [r]
        for x in out:
            out.extend(y for y in g.adj[x] if parent.get(y) == x)
        return out

    sa, sb = sub(a), sub(b)
    return not any(x in placed or x in fixed for x in sa + sb)


class Embedder:
    def __init__(
        self,
        g: Graph,
        k: int,
        n_host: int | None = None,
        *,
        placed: Iterable[int] = (),
        fixed: Iterable[int] = (),
        budget: SearchBudget | None = None,
        seed: int | None = None,
    ):
        self.g = g
        self.k = k
        self.n = g.n if n_host is None else n_host
        if self.n < g.n:
            raise ValueError("host smaller than graph")
        self.placed = set(placed)
        self.fixed = set(fixed)
        if self.placed & self.fixed and k > 1:
            raise ValueError("a vertex cannot be both placed and fixed")
        self.budget = budget or SearchBudget()
        self.rng = random.Random(seed) if seed is not None else None
        self.order = embedding_order(g)
        pos = {v: i for i, v in enumerate(self.order)}
        self.back = [[y for y in g.adj[v] if pos[y] < i] for i, v in enumerate(self.order)]
        self.fwd = [[y for y in g.adj[v] if pos[y] > i] for i, v in enumerate(self.order)]
        self.deg = g.degrees()
        self.full = (1 << self.n) - 1
        self.delta = g.min_degree() if g.n == self.n else 0
        self.twin_pred = _domain_order_constraints(g, self.order, self.placed, self.fixed)
        # when the copies need every host edge, a host's free degree must be a
        # sum of one degree per remaining copy
        self.tight = self.n == g.n and k * g.m == self.n * (self.n - 1) // 2
        self.sums = [{0}]
        for _ in range(k):
            self.sums.append({a + d for a in self.sums[-1] for d in set(self.deg)})
        self.nodes = 0
        self._deadline = None

    # -- symmetry ----------------------------------------------------------

    def _orbit_data(self):
        g = self.g
        if self.placed or self.fixed:
            # relabeling copy 1 by an automorphism would move the constraints
            return [0] * self.n, {0: h for h in range(self.n)}
        orb = vertex_orbits(g) if g.n else []
        orbit_index = {}
        for v in range(g.n):
            orbit_index.setdefault(orb[v], len(orbit_index))
        host_orbit = [orbit_index[orb[v]] for v in range(g.n)]
        host_orbit += [len(orbit_index)] * (self.n - g.n)  # unused hosts: one more orbit
        reps = {}
        for h in range(self.n):
            reps.setdefault(host_orbit[h], h)
        return host_orbit, reps

    # -- search ------------------------------------------------------------

    def run(self) -> SearchResult:
        t0 = time.monotonic()
        if self.budget.time_limit is not None:
            self._deadline = t0 + self.budget.time_limit
        g, k, n = self.g, self.k, self.n
        if k * g.m > n * (n - 1) // 2:
            return SearchResult(Verdict.IMPOSSIBLE, None, 0, 0.0, "edge count bound")
        ident = tuple(range(g.n))
        self.maps = [list(ident)] + [[-1] * g.n for _ in range(k - 1)]
        self.free = [self.full & ~(1 << h) for h in range(n)]
        for u, v in g.edges:
            self.free[u] &= ~(1 << v)
            self.free[v] &= ~(1 << u)
        self.sym = self.budget.symmetry and k > 1 and g.n > 0
        if self.sym:
            self.host_orbit, reps = self._orbit_data()
            self.rep_mask = 0
            for h in reps.values():
                self.rep_mask |= 1 << h
            if self.placed or self.fixed:
                self.rep_mask = self.full
        try:
            ok = k == 1 or self._copy(1)
        except _Abort:
            return SearchResult(Verdict.UNKNOWN, None, self.nodes, time.monotonic() - t0, "budget exhausted")
        elapsed = time.monotonic() - t0
        if not ok:
            return SearchResult(Verdict.IMPOSSIBLE, None, self.nodes, elapsed)
        p = Placement(n, tuple(tuple(m) for m in self.maps))
        assert verify(g, p).ok
        return SearchResult(Verdict.FOUND, p, self.nodes, elapsed)

    def _tick(self):
        self.nodes += 1
        b = self.budget
        if b.node_limit is not None and self.nodes > b.node_limit:
            raise _Abort
        if self._deadline is not None and (self.nodes & 1023) == 0 and time.monotonic() > self._deadline:
            raise _Abort

    def _copy(self, i: int) -> bool:
        if i == self.k:
            return True
        if self.tight:
            allowed = self.sums[self.k - i]
            if any(_popcount(f) not in allowed for f in self.free):
                return False
        need = (self.k - i) * self.delta
        if need and any(_popcount(f) < need for f in self.free):
            return False
        return self._place(i, 0, 0)

    def _candidates(self, i: int, p: int, used: int) -> int:
        v = self.order[p]
        m = self.maps[i]
        cand = self.full & ~used
        for y in self.back[p]:
            cand &= self.free[m[y]]
        tp = self.twin_pred[p]
        if tp >= 0:
            cand &= self.full & ~((2 << m[tp]) - 1)
        if v in self.fixed:
            cand &= 1 << self.maps[0][v]
        elif v in self.placed:
            for j in range(i):
                cand &= ~(1 << self.maps[j][v])
        if p == 0 and self.sym:
            if i == 1:
                cand &= self.rep_mask
            else:
                o2 = self.host_orbit[self.maps[1][v]]
                lo = self.maps[i - 1][v] if i >= 3 else 0
                mask = 0
                for h in range(lo, self.n):
                    if self.host_orbit[h] >= o2:
                        mask |= 1 << h
                cand &= mask
        return cand

    def _place(self, i: int, p: int, used: int) -> bool:
        if p == len(self.order):
            return self._copy(i + 1)
        self._tick()
        v = self.order[p]
        m = self.maps[i]
        cand = self._candidates(i, p, used)
        if not cand:
            return False
        d = self.deg[v] + (self.k - 1 - i) * self.delta
        rest = self.sums[self.k - 1 - i] if self.tight else None
        hosts = []
        c = cand
        while c:
            b = c & -c
            h = b.bit_length() - 1
            c ^= b
            f = _popcount(self.free[h])
            if f >= d and (rest is None or f - self.deg[v] in rest):
                hosts.append(h)
        if self.deg[v] == 0 and v not in self.placed and v not in self.fixed:
            hosts = hosts[:1]
        elif self.rng is not None:
            self.rng.shuffle(hosts)
        free = self.free
        back = self.back[p]
        for h in hosts:
            m[v] = h
            bh = 1 << h
            for y in back:
                hy = m[y]
                free[h] &= ~(1 << hy)
                free[hy] &= ~bh
            new_used = used | bh
            if self._forward_ok(i, p, new_used) and self._place(i, p + 1, new_used):
                return True
            for y in back:
                hy = m[y]
                free[h] |= 1 << hy
                free[hy] |= bh
        m[v] = -1
        return False

    def _forward_ok(self, i: int, p: int, used: int) -> bool:
        m = self.maps[i]
        free = self.free
        avail = self.full & ~used
        for x in self.fwd[p]:
            cand = avail
            for y in self.g.adj[x]:
                hy = m[y]
                if hy >= 0:
                    cand &= free[hy]
            if not cand:
                return False
        return True


def embed(
    g: Graph,
    k: int,
    n_host: int | None = None,
    *,
    placed: Iterable[int] = (),
    fixed: Iterable[int] = (),
    budget: SearchBudget | None = None,
    seed: int | None = None,
) -> SearchResult:
    """Search for a k-placement of ``g`` in ``K_{n_host}``.

    ``placed`` vertices must receive k distinct images, ``fixed`` ones a single
    image.  ``Impossible`` is returned only after the search space is
    exhausted; hitting the budget gives ``Unknown``.
    """
    return Embedder(g, k, n_host, placed=placed, fixed=fixed, budget=budget, seed=seed).run()


def embed_with_restarts(
    g: Graph,
    k: int,
    n_host: int | None = None,
    *,
    placed: Iterable[int] = (),
    fixed: Iterable[int] = (),
    restarts: int = 8,
    nodes_per_restart: int = 20000,
    seed: int = 0,
) -> SearchResult:
    """Randomized restarts with growing node limits; never reports Impossible
    unless one restart ran to exhaustion."""
    placed, fixed = tuple(placed), tuple(fixed)
    total = 0
    limit = nodes_per_restart
    for r in range(restarts):
        res = embed(g, k, n_host, placed=placed, fixed=fixed,
                    budget=SearchBudget(node_limit=limit), seed=seed + r)
        total += res.nodes
        if res.verdict is not Verdict.UNKNOWN:
            res.nodes = total
            return res
        limit = int(limit * 1.5)
    return SearchResult(Verdict.UNKNOWN, None, total, 0.0, "restarts exhausted")
