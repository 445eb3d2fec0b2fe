"""Location and loading of the stored placement tables.

Tables live under ``data/v1`` inside the package.  Setting the environment
variable ``PACKLIB_DATA_DIR`` points the loader at another directory with the
same layout (used when re-deriving the tables).
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from .placement import Placement

DATA_VERSION = "v1"
ENV_VAR = "PACKLIB_DATA_DIR"

# (l1, l2) with l1 >= l2 and 3 <= l1 + l2 <= 6
SMALL_UNION_KEYS = ((2, 1), (2, 2), (3, 1), (4, 1), (3, 2), (4, 2), (3, 3), (5, 1))
SPIDER_KEYS = ((2, 2, 3), (2, 2, 2, 2))


def data_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data" / DATA_VERSION


def small_union_name(l1: int, l2: int) -> str:
    return f"small_union_{l1}_{l2}.txt"


def spider_name(arms: tuple[int, ...]) -> str:
    return "spider_" + "_".join(map(str, arms)) + ".txt"


def catalog_name() -> str:
    return "w_catalog.g6"


@lru_cache(maxsize=None)
def _load(directory: str, name: str) -> Placement:
    path = Path(directory) / name
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise FileNotFoundError(f"missing placement table {path}") from None
    return Placement.loads(text)


def load_table(name: str) -> Placement:
    return _load(str(data_dir()), name)


def write_table(directory: Path, name: str, p: Placement) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / name
    path.write_text(p.dumps())
    return path
