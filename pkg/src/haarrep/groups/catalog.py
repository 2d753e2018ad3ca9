"""The shipped catalog of named groups and their exceptional-table membership."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .core import FiniteGroup, GroupError
from .iso import fingerprint, find_isomorphism
from .named import make_named

TABLE_KEYS = ("hgr", "rigid", "poset3")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    descriptor: dict = field(compare=False)
    tables: tuple[str, ...] = ()
    aliases: tuple[str, ...] = ()

    def build(self) -> FiniteGroup:
        return _build(self.name)

    @property
    def no_hgr(self) -> bool:
        """Listed among the groups with no HGR (abelian groups aside)."""
        return "hgr" in self.tables

    @property
    def no_rigid(self) -> bool:
        return "rigid" in self.tables


@lru_cache(maxsize=None)
def entries() -> tuple[CatalogEntry, ...]:
    raw = json.loads(resources.files(__package__).joinpath("data/catalog.json").read_text())
    return tuple(CatalogEntry(d["name"], d["descriptor"], tuple(d.get("tables", ())), tuple(d.get("aliases", ())))
                 for d in raw)


def entry(name: str) -> CatalogEntry:
    for e in entries():
        if name == e.name or name in e.aliases:
            return e
    raise GroupError(f"no catalog group named {name!r}")


@lru_cache(maxsize=None)
def _build(name: str) -> FiniteGroup:
    e = entry(name)
    G = make_named(e.descriptor)
    G.name = e.name
    return G


def get(name: str) -> FiniteGroup:
    """Catalog group by name or alias (cached; treat as read-only)."""
    return _build(entry(name).name)


def names(max_order: int | None = None, min_order: int = 1) -> list[str]:
    out = []
    for e in entries():
        n = _order_of(e)
        if n >= min_order and (max_order is None or n <= max_order):
            out.append(e.name)
    return out


@lru_cache(maxsize=None)
def _order_of(e: CatalogEntry) -> int:
    return _build(e.name).order


def order_of(name: str) -> int:
    return _order_of(entry(name))


def identify(G: FiniteGroup) -> CatalogEntry | None:
    """Catalog entry isomorphic to ``G``, if any."""
    fp = fingerprint(G)
    for e in entries():
        if _order_of(e) != G.order:
            continue
        H = e.build()
        if fingerprint(H) == fp and find_isomorphism(G, H) is not None:
            return e
    return None


def in_table(G: FiniteGroup, key: str) -> bool:
    if key not in TABLE_KEYS:
        raise ValueError(f"unknown table {key!r}")
    e = identify(G)
    return e is not None and key in e.tables
