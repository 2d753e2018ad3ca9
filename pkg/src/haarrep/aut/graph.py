"""Simple undirected graphs in compressed sparse row form."""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Sequence

from .kernels import graph_arrays

MAX_VERTICES = 8192


class Graph:
    """Undirected simple graph on ``0..nv-1``."""

    def __init__(self, nv: int, adjacency: Sequence[Iterable[int]]):
        if nv > MAX_VERTICES:
            raise ValueError(f"graphs are limited to {MAX_VERTICES} vertices")
        nbrs = [sorted(set(a)) for a in adjacency]
        if len(nbrs) != nv:
            raise ValueError("adjacency list length does not match vertex count")
        for v, a in enumerate(nbrs):
            for u in a:
                if u == v or not 0 <= u < nv:
                    raise ValueError(f"bad neighbour {u} of {v}")
        off = [0]
        flat = []
        for a in nbrs:
            flat.extend(a)
            off.append(len(flat))
        self.nv = nv
        self.nbrs = nbrs
        self.off = off
        self.adj = flat
        self.k_off, self.k_adj = graph_arrays(off, flat)
        self._sets = None

    @classmethod
    def from_edges(cls, nv: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(nv)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(nv, adj)

    @classmethod
    def from_haar(cls, H) -> "Graph":
        return cls(H.nv, H.adjacency_lists())

    def edge_set(self) -> set[tuple[int, int]]:
        if self._sets is None:
            self._sets = {(u, v) for u in range(self.nv) for v in self.nbrs[u] if u < v}
        return self._sets

    @property
    def edge_count(self) -> int:
        return len(self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        a = self.nbrs[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def components(self) -> list[list[int]]:
        seen = [False] * self.nv
        out = []
        for s in range(self.nv):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            i = 0
            while i < len(comp):
                for u in self.nbrs[comp[i]]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                i += 1
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.nv == 0 or len(self.components()) == 1
