"""The catalog of exceptional trees and membership tests against it.

The catalog is stored as sorted graph6 lines after a small ``#`` header that
records how it was produced::

    # packlib W catalog
    # min_order=8
    # max_order=11
    # budget=...
    G?`@F_
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from . import fixtures
from .formats import from_graph6, to_graph6
from .graph import Graph, is_connected
from .iso import canonical_graph, certificate


@dataclass(frozen=True)
class WCatalog:
    members: tuple[Graph, ...]
    min_order: int = 8
    max_order: int = 11
    budget: str = ""
    certificates: frozenset = field(default=frozenset(), compare=False)

    @classmethod
    def from_graphs(cls, graphs: Iterable[Graph], min_order=8, max_order=11, budget="") -> "WCatalog":
        canon = sorted((canonical_graph(g) for g in graphs), key=lambda g: (g.n, to_graph6(g)))
        certs = frozenset(certificate(g) for g in canon)
        return cls(tuple(canon), min_order, max_order, budget, certs)

    def __contains__(self, g: Graph) -> bool:
        return is_W_member(g, self)

    def __len__(self) -> int:
        return len(self.members)

    def dumps(self) -> str:
        lines = [
            "# packlib W catalog",
            f"# min_order={self.min_order}",
            f"# max_order={self.max_order}",
            f"# budget={self.budget}",
        ]
        lines += sorted(to_graph6(g) for g in self.members)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "WCatalog":
        meta = {}
        graphs = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, value = body.split("=", 1)
                    meta[key.strip()] = value.strip()
                continue
            graphs.append(from_graph6(line))
        return cls.from_graphs(
            graphs,
            int(meta.get("min_order", 8)),
            int(meta.get("max_order", 11)),
            meta.get("budget", ""),
        )


def is_W_member(g: Graph, catalog: WCatalog | Iterable[Graph]) -> bool:
    """True iff ``g`` is isomorphic to a catalog tree."""
    if not isinstance(catalog, WCatalog):
        catalog = WCatalog.from_graphs(catalog)
    if g.m != g.n - 1 or not is_connected(g):
        return False
    if not catalog.min_order <= g.n <= catalog.max_order:
        return False
    return certificate(g) in catalog.certificates


def catalog_path() -> Path:
    return fixtures.data_dir() / fixtures.catalog_name()


@lru_cache(maxsize=4)
def _load(path: str) -> WCatalog:
    return WCatalog.loads(Path(path).read_text())


def default_catalog() -> WCatalog:
    return _load(str(catalog_path()))
