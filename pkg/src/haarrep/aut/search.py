"""Automorphism groups by individualization-refinement backtracking.

The first path of the search tree fixes a base. Levels are then processed
bottom-up: for every vertex of the level's target cell that is not yet known
to lie in the orbit of the base point, a subtree is searched for a leaf
equivalent to the first leaf. Generators found at depth ``>= L`` fix the
first ``L`` base points, so orbit sizes multiply to the group order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .graph import Graph
from .kernels import PartitionState, is_automorphism

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    """The backtracking node budget ran out before the search finished."""


def default_budget() -> int:
    env = os.environ.get("HAAR_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class SearchResult:
    order: int
    generators: list[tuple[int, ...]]
    base: list[int]
    orbit_sizes: list[int]
    nodes: int
    stats: dict = field(default_factory=dict)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]

    def add_perm(self, perm: Sequence[int]) -> None:
        for x, y in enumerate(perm):
            if x != y:
                self.union(x, y)


class _Search:
    def __init__(self, graph: Graph, cells: list[list[int]], budget: int):
        self.g = graph
        self.cells = cells
        self.budget = budget
        self.nodes = 0
        self.color = [0] * graph.nv
        for i, c in enumerate(cells):
            for v in c:
                self.color[v] = i
        self.leaf_checks = 0

    def refine(self, st: PartitionState, queue) -> int:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")
        return st.refine(self.g.k_off, self.g.k_adj, queue)

    def child(self, st: PartitionState, v: int) -> tuple[PartitionState, int]:
        c = st.copy()
        s = c.individualize(v)
        return c, self.refine(c, [s])

    def leaf_perm(self, first: list[int], lab: list[int]) -> tuple[int, ...] | None:
        nv = self.g.nv
        perm = [0] * nv
        for a, b in zip(first, lab):
            perm[a] = b
        color = self.color
        for v in range(nv):
            if color[perm[v]] != color[v]:
                return None
        self.leaf_checks += 1
        if not is_automorphism(self.g.k_off, self.g.k_adj, perm):
            return None
        return tuple(perm)

    def find_equivalent(self, st: PartitionState, depth: int, traces: list[int], first: list[int]):
        """DFS below ``st`` (at ``depth``) for a leaf giving an automorphism."""
        if st.is_discrete():
            return self.leaf_perm(first, st.leaf())
        s = st.target_cell()
        for u in st.cell(s):
            c, h = self.child(st, u)
            if depth + 1 >= len(traces) or h != traces[depth + 1]:
                continue
            res = self.find_equivalent(c, depth + 1, traces, first)
            if res is not None:
                return res
        return None

    def run(self, seeds: Sequence[Sequence[int]] = ()) -> SearchResult:
        g = self.g
        root = PartitionState(g.nv, self.cells)
        root.refine(g.k_off, g.k_adj, root.cell_starts())
        self.nodes += 1
        states = [root]
        targets: list[list[int]] = []
        chosen: list[int] = []
        traces = [0]
        st = root
        while not st.is_discrete():
            s = st.target_cell()
            cell = st.cell(s)
            v = min(cell)
            targets.append(cell)
            chosen.append(v)
            st, h = self.child(st, v)
            traces.append(h)
            states.append(st)
        first = st.leaf()
        depth = len(chosen)
        gens: list[tuple[int, ...]] = []
        orbit_sizes = [1] * depth
        for p in seeds:
            # seeds must preserve colours and edges; they are elements of the group at the top level
            if depth and self.leaf_perm(list(range(g.nv)), list(p)) is not None:
                gens.append(tuple(p))
        for L in range(depth - 1, -1, -1):
            if L > 0:
                # only elements fixing the earlier base points act on this level
                level_gens = [p for p in gens if all(p[b] == b for b in chosen[:L])]
            else:
                level_gens = gens
            uf = _UnionFind(g.nv)
            for p in level_gens:
                uf.add_perm(p)
            vL = chosen[L]
            failed: set[int] = set()
            for w in targets[L]:
                if w == vL:
                    continue
                rw = uf.find(w)
                if rw == uf.find(vL) or rw in failed:
                    continue
                c, h = self.child(states[L], w)
                res = None
                if h == traces[L + 1]:
                    res = self.find_equivalent(c, L + 1, traces, first)
                if res is None:
                    failed.add(rw)
                    continue
                gens.append(res)
                uf.add_perm(res)
                # classes marked failed stay failed: they were not in the orbit before and are not merged with it
                failed = {uf.find(x) for x in failed}
            root_v = uf.find(vL)
            orbit_sizes[L] = sum(1 for x in targets[L] if uf.find(x) == root_v)
        order = prod(orbit_sizes)
        return SearchResult(order, gens, chosen, orbit_sizes, self.nodes,
                            {"depth": depth, "leaf_checks": self.leaf_checks})


def search_automorphisms(graph: Graph, cells: list[list[int]] | None = None, budget: int | None = None,
                         seeds: Sequence[Sequence[int]] = ()) -> SearchResult:
    """Colour-preserving automorphism group of ``graph``.

    ``cells`` is the initial ordered partition (default: one cell). ``seeds``
    are known automorphisms preserving every cell; they speed up the
    top level only.
    """
    if cells is None:
        cells = [list(range(graph.nv))]
    cells = [list(c) for c in cells if c]
    if graph.nv == 0:
        return SearchResult(1, [], [], [], 0)
    s = _Search(graph, cells, default_budget() if budget is None else budget)
    return s.run(seeds)
