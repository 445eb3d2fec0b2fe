"""k-placement certificates: verification, vertex status, relabeling, text I/O.

A placement of a graph ``G`` into ``K_n`` is ``k`` injective maps from
``V(G)`` into ``0..n-1`` whose edge images are pairwise disjoint.

Text format::

    k n_host v
    img_0 img_1 ... img_{v-1}      # copy 1
    ...                            # one line per copy
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import repeat
from operator import add, mul
from typing import Iterable, Mapping, Sequence

from .graph import Graph


class PlacementError(ValueError):
    """Structural misuse of a placement (wrong dimensions, bad relabeling)."""


class Status(enum.Enum):
    PLACED = "Placed"
    FIXED = "Fixed"
    MIXED = "Mixed"


@dataclass(frozen=True)
class Placement:
    n_host: int
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(tuple(map(int, m)) for m in self.maps))

    @property
    def k(self) -> int:
        return len(self.maps)

    @property
    def order(self) -> int:
        return len(self.maps[0]) if self.maps else 0

    def images(self, v: int) -> tuple[int, ...]:
        return tuple(m[v] for m in self.maps)

    def edge_images(self, g: Graph, i: int) -> list[tuple[int, int]]:
        m = self.maps[i]
        return [(min(m[u], m[v]), max(m[u], m[v])) for u, v in g.edges]

    # -- serialization ---------------------------------------------------

    def dumps(self) -> str:
        lines = [f"{self.k} {self.n_host} {self.order}"]
        lines += [" ".join(map(str, m)) for m in self.maps]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Placement":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows or len(rows[0]) != 3:
            raise PlacementError("placement header must be 'k n_host v'")
        k, n_host, v = map(int, rows[0])
        body = rows[1:]
        if len(body) != k:
            raise PlacementError(f"header announces {k} copies, found {len(body)}")
        maps = []
        for i, row in enumerate(body):
            if len(row) != v:
                raise PlacementError(f"copy {i} has {len(row)} images, expected {v}")
            maps.append(tuple(int(x) for x in row))
        return cls(n_host, tuple(maps))


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    reason: str = ""
    copies: tuple[int, ...] = ()
    edge: tuple[int, int] | None = None
    host_edge: tuple[int, int] | None = None

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "reason": self.reason,
            "copies": list(self.copies),
            "edge": list(self.edge) if self.edge else None,
            "host_edge": list(self.host_edge) if self.host_edge else None,
        }


def verify(g: Graph, p: Placement) -> VerificationReport:
    """Check that ``p`` is a k-placement of ``g``.

    Copies are numbered from 1 in the report (row order of the text format).  A map whose domain size differs from
    ``g.n`` raises :class:`PlacementError` instead of failing verification.
    """
    for i, m in enumerate(p.maps):
        if len(m) != g.n:
            raise PlacementError(f"copy {i} maps {len(m)} vertices, graph has {g.n}")
    if g.n > p.n_host:
        return VerificationReport(False, f"graph order {g.n} exceeds host order {p.n_host}")
    n_host = p.n_host
    us = [u for u, _ in g.edges]
    vs = [v for _, v in g.edges]
    seen: set[int] = set()
    for i, m in enumerate(p.maps):
        if m and (min(m) < 0 or max(m) >= n_host):
            v, h = next((v, h) for v, h in enumerate(m) if not 0 <= h < n_host)
            return VerificationReport(False, f"image {h} of vertex {v} outside host", (i + 1,))
        if len(set(m)) != len(m):
            return VerificationReport(False, "map is not injective", (i + 1,))
        before = len(seen)
        a = list(map(m.__getitem__, us))
        b = list(map(m.__getitem__, vs))
        # host edge {x, y} with x < y is keyed as x * n_host + y
        seen.update(map(add, map(mul, map(min, a, b), repeat(n_host)), map(max, a, b)))
        if len(seen) - before != g.m:
            return _shared_edge(g, p, i)
    return VerificationReport(True)


def _shared_edge(g: Graph, p: Placement, last: int) -> VerificationReport:
    """Locate the first repeated host edge among copies ``0..last``."""
    owner: dict[tuple[int, int], tuple[int, tuple[int, int]]] = {}
    for i, m in enumerate(p.maps[: last + 1]):
        for u, v in g.edges:
            a, b = m[u], m[v]
            he = (a, b) if a < b else (b, a)
            prev = owner.get(he)
            if prev is not None:
                return VerificationReport(False, "shared edge", (prev[0] + 1, i + 1), (u, v), he)
            owner[he] = (i, (u, v))
    raise AssertionError("no shared edge found")


def is_placement(g: Graph, p: Placement) -> bool:
    try:
        return verify(g, p).ok
    except PlacementError:
        return False


def vertex_status(p: Placement, v: int) -> Status:
    if not 0 <= v < p.order:
        raise PlacementError(f"unknown vertex {v}")
    imgs = p.images(v)
    distinct = len(set(imgs))
    if distinct == len(imgs):
        return Status.PLACED
    if distinct == 1:
        return Status.FIXED
    return Status.MIXED


def is_placed(p: Placement, v: int) -> bool:
    return vertex_status(p, v) is Status.PLACED


def dispersed(p: Placement) -> bool:
    return all(vertex_status(p, v) is Status.PLACED for v in range(p.order))


def relabel(p: Placement, host_map: Sequence[int] | Mapping[int, int], n_host: int | None = None) -> Placement:
    """Rename host vertices through an injective ``host_map``."""
    if isinstance(host_map, Mapping):
        pairs = dict(host_map)
    else:
        pairs = dict(enumerate(host_map))
    used = {h for m in p.maps for h in m}
    missing = used - pairs.keys()
    if missing:
        raise PlacementError(f"host map undefined on {sorted(missing)[:5]}")
    targets = [pairs[h] for h in sorted(used)]
    if len(set(targets)) != len(targets):
        raise PlacementError("host map is not injective")
    if n_host is None:
        n_host = max(p.n_host, max(targets, default=-1) + 1)
    if targets and (min(targets) < 0 or max(targets) >= n_host):
        raise PlacementError("host map leaves the host")
    return Placement(n_host, tuple(tuple(pairs[h] for h in m) for m in p.maps))


def shift(p: Placement, offset: int, n_host: int) -> Placement:
    return relabel(p, {h: h + offset for h in range(p.n_host)}, n_host)


def assemble(n_host: int, order: int, k: int, blocks: Iterable[tuple[Sequence[int], Placement, int]]) -> Placement:
    """Combine block placements into one placement of a bigger graph.

    Each block is ``(vertices, placement, host_offset)``: ``vertices[j]`` is the
    big-graph vertex that plays vertex ``j`` of the block placement, whose host
    vertices are shifted by ``host_offset``.
    """
    maps = [[-1] * order for _ in range(k)]
    for vertices, bp, offset in blocks:
        if bp.k != k:
            raise PlacementError(f"block has {bp.k} copies, expected {k}")
        for i in range(k):
            for j, v in enumerate(vertices):
                maps[i][v] = bp.maps[i][j] + offset
    for i in range(k):
        if -1 in maps[i]:
            raise PlacementError(f"vertex {maps[i].index(-1)} not covered by any block")
    return Placement(n_host, tuple(tuple(m) for m in maps))


def trivial_placement(order: int, k: int, n_host: int | None = None, fixed: bool = True) -> Placement:
    """Placement of an edgeless graph; vertices fixed, or rotated so all are placed."""
    n_host = order if n_host is None else n_host
    if fixed:
        return Placement(n_host, tuple(tuple(range(order)) for _ in range(k)))
    if n_host < k and order:
        raise PlacementError("need at least k host vertices to place a vertex")
    return Placement(n_host, tuple(tuple((v + i) % n_host for v in range(order)) for i in range(k)))
