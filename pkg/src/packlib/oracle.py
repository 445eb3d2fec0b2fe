"""Ground truth for small instances: exhaustive search, enumeration, censuses.

Nothing here claims impossibility without a completed search; budget
exhaustion gives ``Unknown`` and marks any census or catalog incomplete.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .formats import to_graph6
from .graph import Graph, girth, is_connected, is_forest, longest_path_in_tree
from .iso import canonical_graph, certificate, vertex_orbits
from .search import SearchBudget, SearchResult, Verdict, embed, embed_with_restarts
from .wcatalog import WCatalog

__all__ = [
    "FamilyFilter",
    "CensusResult",
    "brute_force_pack",
    "enumerate_trees",
    "enumerate_family",
    "census",
    "derive_W",
    "derive_fixture_tables",
]


def brute_force_pack(
    g: Graph,
    k: int,
    budget: SearchBudget | None = None,
    *,
    restarts: int = 10,
    placed: Iterable[int] = (),
    fixed: Iterable[int] = (),
) -> SearchResult:
    """Decide k-placeability of ``g`` in ``K_{v(g)}``.

    A few randomized restarts look for a placement first; the complete
    copy-by-copy search with symmetry breaking then settles the rest.
    """
    budget = budget or SearchBudget()
    n = g.n
    if k * g.m > n * (n - 1) // 2:
        return SearchResult(Verdict.IMPOSSIBLE, None, 0, 0.0, "edge count bound")
    t0 = time.monotonic()
    placed, fixed = tuple(placed), tuple(fixed)
    nodes = 0
    if restarts:
        quick = embed_with_restarts(g, k, placed=placed, fixed=fixed, restarts=restarts,
                                    nodes_per_restart=20000)
        nodes = quick.nodes
        if quick.verdict is not Verdict.UNKNOWN:
            quick.elapsed = time.monotonic() - t0
            return quick
    remaining = budget
    if budget.time_limit is not None:
        left = max(0.0, budget.time_limit - (time.monotonic() - t0))
        remaining = SearchBudget(budget.node_limit, left, budget.symmetry)
    res = embed(g, k, placed=placed, fixed=fixed, budget=remaining)
    res.nodes += nodes
    res.elapsed = time.monotonic() - t0
    return res


# -- enumeration ----------------------------------------------------------------


@dataclass(frozen=True)
class FamilyFilter:
    """Predicates for :func:`enumerate_family`.

    ``min_girth`` and ``max_degree`` are closed under edge deletion and prune
    the generation; ``connected`` and ``min_edges`` only filter the output.
    """

    min_girth: int | None = None
    max_degree: int | None = None
    connected: bool | None = None
    min_edges: int = 0
    extra: Callable[[Graph], bool] | None = None

    def hereditary_ok(self, g: Graph) -> bool:
        if self.max_degree is not None and g.max_degree() > self.max_degree:
            return False
        if self.min_girth is not None and girth(g) < self.min_girth:
            return False
        return True

    def accepts(self, g: Graph) -> bool:
        if g.m < self.min_edges or not self.hereditary_ok(g):
            return False
        if self.connected is not None and is_connected(g) != self.connected:
            return False
        if self.extra is not None and not self.extra(g):
            return False
        return True


def enumerate_trees(n: int) -> list[Graph]:
    """All trees of order ``n`` up to isomorphism, in canonical form.

    Every tree on ``n`` vertices arises from one on ``n-1`` by adding a leaf,
    so it suffices to extend each tree at one vertex per orbit.
    """
    if n <= 0:
        return []
    level = [Graph(1)]
    for size in range(2, n + 1):
        seen = {}
        for t in level:
            orbits = vertex_orbits(t)
            for v in sorted(set(orbits)):
                child = Graph(size, list(t.edges) + [(v, size - 1)])
                cert = certificate(child)
                if cert not in seen:
                    seen[cert] = canonical_graph(child)
        level = sorted(seen.values(), key=to_graph6)
    return level


def enumerate_family(
    n: int,
    max_edges: int,
    filt: FamilyFilter | None = None,
    *,
    source: Iterable[Graph] | None = None,
) -> Iterator[Graph]:
    """Every isomorphism class of graphs of order ``n`` with at most
    ``max_edges`` edges passing ``filt``, each exactly once.

    With ``source`` the graphs come from an external stream (e.g. graph6) and
    are only filtered and deduplicated.
    """
    filt = filt or FamilyFilter()
    if source is not None:
        seen = set()
        for g in source:
            if g.n != n or g.m > max_edges or not filt.accepts(g):
                continue
            cert = certificate(g)
            if cert not in seen:
                seen.add(cert)
                yield canonical_graph(g)
        return
    if n > 11:
        raise ValueError("built-in enumeration is limited to n <= 11; pass an external source")
    if (filt.connected and filt.min_edges <= n - 1 <= max_edges and max_edges == n - 1
            and filt.min_edges == n - 1):
        # connected graphs with n-1 edges are the trees
        for t in enumerate_trees(n):
            if filt.accepts(t):
                yield t
        return
    level = {certificate(Graph(n)): Graph(n)}
    for m in range(0, max_edges + 1):
        for g in sorted(level.values(), key=to_graph6):
            if filt.accepts(g):
                yield g
        if m == max_edges:
            break
        nxt = {}
        for g in level.values():
            es = g.edge_set()
            for u in range(n):
                for v in range(u + 1, n):
                    if (u, v) in es:
                        continue
                    child = g.add_edges([(u, v)])
                    if not filt.hereditary_ok(child):
                        continue
                    cert = certificate(child)
                    if cert not in nxt:
                        nxt[cert] = canonical_graph(child)
        level = nxt


# -- census ---------------------------------------------------------------------


@dataclass
class CensusResult:
    n: int
    q: int
    k: int
    exceptions: list[Graph] = field(default_factory=list)
    unknown: list[Graph] = field(default_factory=list)
    placeable: int = 0
    impossible: int = 0
    elapsed: float = 0.0

    @property
    def complete(self) -> bool:
        return not self.unknown

    def graph6_lines(self) -> list[str]:
        return sorted(to_graph6(g) for g in self.exceptions)


def _census_job(args):
    g, k, budget = args
    res = brute_force_pack(g, k, budget)
    return res.verdict


def census(
    n: int,
    q: int,
    k: int,
    budget: SearchBudget | None = None,
    *,
    filt: FamilyFilter | None = None,
    source: Iterable[Graph] | None = None,
    jobs: int = 1,
) -> CensusResult:
    """Non-k-placeable graphs of order ``n`` with at most ``q`` edges.

    Set ``filt.min_edges`` to restrict to exactly ``q`` edges.
    """
    t0 = time.monotonic()
    budget = budget or SearchBudget(time_limit=600)
    graphs = list(enumerate_family(n, q, filt, source=source))
    work = [(g, k, budget) for g in graphs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_census_job, work))
    else:
        verdicts = [_census_job(w) for w in work]
    out = CensusResult(n, q, k)
    for g, verdict in zip(graphs, verdicts):
        if verdict is Verdict.FOUND:
            out.placeable += 1
        elif verdict is Verdict.IMPOSSIBLE:
            out.impossible += 1
            out.exceptions.append(g)
        else:
            out.unknown.append(g)
    out.exceptions.sort(key=to_graph6)
    out.elapsed = time.monotonic() - t0
    return out


# -- the exceptional trees -------------------------------------------------------


class IncompleteCatalog(RuntimeError):
    def __init__(self, unknown: list[Graph]):
        super().__init__(f"{len(unknown)} tree(s) left undecided; catalog not emitted")
        self.unknown = unknown


def longest_path_order(t: Graph) -> int:
    return len(longest_path_in_tree(t, range(t.n)))


def derive_W(
    max_order: int = 11,
    budget: SearchBudget | None = None,
    *,
    min_order: int = 8,
    progress: Callable[[str], None] | None = None,
) -> WCatalog:
    """Trees of order ``min_order..max_order`` with max degree at most n-4
    that the complete search proves not 4-placeable."""
    if max_order > 11:
        raise ValueError("complete search is only attempted up to order 11")
    budget = budget or SearchBudget(time_limit=3600)
    members, unknown = [], []
    for n in range(min_order, max_order + 1):
        for t in enumerate_trees(n):
            if t.max_degree() > n - 4:
                continue
            res = brute_force_pack(t, 4, budget)
            if progress:
                progress(f"n={n} {to_graph6(t)} {res.verdict.value} {res.nodes} nodes {res.elapsed:.1f}s")
            if res.verdict is Verdict.IMPOSSIBLE:
                members.append(t)
            elif res.verdict is Verdict.UNKNOWN:
                unknown.append(t)
    if unknown:
        raise IncompleteCatalog(unknown)
    desc = f"time_limit={budget.time_limit},node_limit={budget.node_limit}"
    return WCatalog.from_graphs(members, min_order, max_order, desc)


def derive_fixture_tables(budget: SearchBudget | None = None) -> dict[str, object]:
    """Search dispersed 4-placements for every stored table."""
    from . import fixtures
    from .constructions import small_union_graph
    from .graph import spider
    from .placement import dispersed

    budget = budget or SearchBudget(time_limit=600)
    out = {}
    jobs = [(fixtures.small_union_name(a, b), small_union_graph(a, b)) for a, b in fixtures.SMALL_UNION_KEYS]
    jobs += [(fixtures.spider_name(arms), spider(*arms)) for arms in fixtures.SPIDER_KEYS]
    for name, g in jobs:
        res = embed(g, 4, placed=range(g.n), budget=budget)
        if not res.found or not dispersed(res.placement):
            raise RuntimeError(f"no dispersed placement found for {name}: {res.verdict.value}")
        out[name] = res.placement
    return out
