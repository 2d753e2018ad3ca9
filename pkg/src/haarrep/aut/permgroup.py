"""Permutation groups via a deterministic Schreier-Sims stabilizer chain.

Permutations act on the right: ``p[i]`` is the image of ``i`` and the
product ``p*q`` applies ``p`` first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator, Sequence

import numpy as np


def _arr(p: Sequence[int]) -> np.ndarray:
    return np.asarray(p, dtype=np.int32)


def _inverse(p: np.ndarray) -> np.ndarray:
    out = np.empty_like(p)
    out[p] = np.arange(len(p), dtype=p.dtype)
    return out


def perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p`` then ``q``."""
    return tuple(q[i] for i in p)


def perm_inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


class _Level:
    __slots__ = ("base", "gens", "done", "orbit", "trans", "tinv")

    def __init__(self, base: int, ident: np.ndarray):
        self.base = base
        self.gens: list[np.ndarray] = []
        self.done: list[int] = []
        self.orbit = [base]
        self.trans = {base: ident}
        self.tinv = {base: ident}


class StabChain:
    """Stabilizer chain built incrementally from generators.

    Every Schreier generator of every level is sifted, so the chain is
    complete after each call to :meth:`add_generator`; no randomisation.
    """

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = (), base: Sequence[int] = ()):
        self.degree = degree
        self.ident = np.arange(degree, dtype=np.int32)
        self.levels: list[_Level] = []
        self._pref = list(base)
        self.generators: list[tuple[int, ...]] = []
        for b in dict.fromkeys(base):
            self.levels.append(_Level(b, self.ident))
        for g in gens:
            self.add_generator(g)

    # --------------------------------------------------------------- building
    def add_generator(self, g: Sequence[int]) -> bool:
        a = _arr(g)
        if len(a) != self.degree:
            raise ValueError("generator has the wrong degree")
        r, _ = self._sift(a, 0)
        if np.array_equal(r, self.ident):
            return False
        self.generators.append(tuple(int(x) for x in a))
        self._insert(a, 0)
        return True

    def _sift(self, g: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            L = self.levels[i]
            p = int(g[L.base])
            u = L.tinv.get(p)
            if u is None:
                return g, i
            g = u[g]
        return g, len(self.levels)

    def _new_base_point(self, r: np.ndarray) -> int:
        used = {L.base for L in self.levels}
        for b in self._pref:
            if b not in used and r[b] != b:
                return b
        moved = np.nonzero(r != self.ident)[0]
        return int(moved[0])

    def _insert(self, h: np.ndarray, start: int) -> None:
        r, j = self._sift(h, start)
        if np.array_equal(r, self.ident):
            return
        if j == len(self.levels):
            self.levels.append(_Level(self._new_base_point(r), self.ident))
        for k in range(start, j + 1):
            self.levels[k].gens.append(r)
            self.levels[k].done.append(0)
        for k in range(j, start - 1, -1):
            self._process(k)

    def _process(self, i: int) -> None:
        L = self.levels[i]
        busy = True
        while busy:
            busy = False
            for k in range(len(L.gens)):
                s = L.gens[k]
                while L.done[k] < len(L.orbit):
                    busy = True
                    p = L.orbit[L.done[k]]
                    L.done[k] += 1
                    q = int(s[p])
                    up_s = s[L.trans[p]]
                    if q not in L.trans:
                        L.trans[q] = up_s
                        L.tinv[q] = _inverse(up_s)
                        L.orbit.append(q)
                    else:
                        h = L.tinv[q][up_s]
                        if not np.array_equal(h, self.ident):
                            self._insert(h, i + 1)

    # ---------------------------------------------------------------- queries
    def order(self) -> int:
        return prod(len(L.orbit) for L in self.levels)

    @property
    def base(self) -> list[int]:
        return [L.base for L in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [len(L.orbit) for L in self.levels]

    def strong_generators(self) -> list[tuple[int, ...]]:
        seen = []
        ids = set()
        for L in self.levels:
            for g in L.gens:
                t = tuple(int(x) for x in g)
                if t not in ids:
                    ids.add(t)
                    seen.append(t)
        return seen

    def contains(self, g: Sequence[int]) -> bool:
        a = _arr(g)
        if len(a) != self.degree or sorted(a.tolist()) != list(range(self.degree)):
            return False
        r, j = self._sift(a, 0)
        return j == len(self.levels) and np.array_equal(r, self.ident)

    def orbits(self) -> list[list[int]]:
        """Orbits of the whole group on points."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x, y in enumerate(g):
                a, b = find(x), find(y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for x in range(self.degree):
            groups.setdefault(find(x), []).append(x)
        return list(groups.values())

    def stabilizer(self, point: int) -> "StabChain":
        """Point stabilizer, by rebuilding the chain with ``point`` first in the base."""
        moved = StabChain(self.degree, base=[point] + [b for b in self.base if b != point])
        for g in self.strong_generators():
            moved.add_generator(g)
        gens = moved.levels[1].gens if len(moved.levels) > 1 else []
        out = StabChain(self.degree, base=moved.base[1:])
        for g in gens:
            out.add_generator(g)
        if out.order() * len(self.orbit_of(point)) != self.order():
            raise AssertionError("orbit-stabilizer check failed")
        return out

    def orbit_of(self, point: int) -> list[int]:
        seen = {point}
        todo = [point]
        for x in todo:
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return sorted(seen)

    def elements(self) -> Iterator[tuple[int, ...]]:
        """Every element (use only for small groups)."""
        def rec(i):
            if i == len(self.levels):
                yield self.ident
                return
            for x in rec(i + 1):
                for u in self.levels[i].trans.values():
                    yield u[x]
        for e in rec(0):
            yield tuple(int(v) for v in e)

    def coset_elements(self, point: int, image: int) -> Iterator[tuple[int, ...]]:
        """Elements mapping the first base point ``point`` to ``image``."""
        if not self.levels or self.levels[0].base != point:
            raise ValueError("point must be the first base point")
        u = self.levels[0].trans.get(image)
        if u is None:
            return

        def rec(i):
            if i == len(self.levels):
                yield self.ident
                return
            for x in rec(i + 1):
                for v in self.levels[i].trans.values():
                    yield v[x]
        for x in rec(1):
            yield tuple(int(v) for v in u[x])


@dataclass
class PermGroupDescriptor:
    """Generators plus an exact order certified by a stabilizer chain."""

    degree: int
    generators: list[tuple[int, ...]]
    order: int
    base: list[int]
    orbit_sizes: list[int] = field(default_factory=list)
    _chain: StabChain | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_generators(cls, degree: int, gens: Iterable[Sequence[int]], base: Sequence[int] = ()) -> "PermGroupDescriptor":
        gens = [tuple(int(x) for x in g) for g in gens]
        chain = StabChain(degree, gens, base)
        return cls(degree, gens, chain.order(), chain.base, chain.orbit_sizes(), chain)

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.degree, self.generators, self.base)
        return self._chain

    def contains(self, g: Sequence[int]) -> bool:
        return self.chain.contains(g)

    def orbits(self) -> list[list[int]]:
        return self.chain.orbits()

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def point_stabilizer(self, v: int) -> "PermGroupDescriptor":
        st = self.chain.stabilizer(v)
        return PermGroupDescriptor(self.degree, st.strong_generators(), st.order(), st.base, st.orbit_sizes(), st)

    def to_dict(self) -> dict:
        return {"degree": self.degree, "order": self.order, "base": self.base,
                "orbit_sizes": self.orbit_sizes, "generators": [list(g) for g in self.generators]}
