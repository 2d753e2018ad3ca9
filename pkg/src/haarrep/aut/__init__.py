"""Automorphism groups of graphs and Haar graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..groups.core import FiniteGroup, GroupHom
from ..groups.iso import generating_sequence
from ..haar import ConnectionSet, HaarGraph, build_haar, rho
from .graph import Graph
from .kernels import BACKEND
from .permgroup import PermGroupDescriptor, StabChain, perm_compose, perm_inverse
from .regular import find_regular_subgroup, is_semiregular_element
from .search import BudgetExceeded, SearchResult, default_budget, search_automorphisms

__all__ = [
    "BACKEND", "BudgetExceeded", "Graph", "HgrCheck", "PermGroupDescriptor", "StabChain",
    "aut0", "aut_full", "automorphism_group", "find_regular_subgroup", "induced_group_automorphism",
    "is_hgr", "is_semiregular_element", "perm_compose", "perm_inverse", "point_stabilizer", "refine",
]


def _as_graph(g) -> Graph:
    if isinstance(g, Graph):
        return g
    if isinstance(g, HaarGraph):
        if "graph" not in g.__dict__:
            g.__dict__["graph"] = Graph.from_haar(g)
        return g.__dict__["graph"]
    raise TypeError(f"expected a Graph or HaarGraph, got {type(g).__name__}")


def refine(graph, cells: Sequence[Sequence[int]]) -> list[list[int]]:
    """Coarsest equitable partition refining ``cells`` (ordered)."""
    from .kernels import PartitionState

    G = _as_graph(graph)
    st = PartitionState(G.nv, [list(c) for c in cells if c])
    st.refine(G.k_off, G.k_adj, st.cell_starts())
    return st.cells()


def automorphism_group(graph, initial: Sequence[Sequence[int]] | None = None, budget: int | None = None,
                       seeds: Sequence[Sequence[int]] = (), certify: bool = True) -> PermGroupDescriptor:
    """Exact colour-preserving automorphism group.

    With ``certify`` the order from the search is re-derived with a
    Schreier-Sims chain on the returned generators.
    """
    G = _as_graph(graph)
    res = search_automorphisms(G, None if initial is None else [list(c) for c in initial], budget, seeds)
    desc = PermGroupDescriptor(G.nv, res.generators, res.order, res.base, res.orbit_sizes)
    if certify:
        chain = StabChain(G.nv, res.generators, res.base)
        if chain.order() != res.order:
            raise AssertionError(f"search order {res.order} disagrees with chain order {chain.order()}")
        desc._chain = chain
    desc.nodes = res.nodes
    return desc


def _haar_seeds(H: HaarGraph) -> list[tuple[int, ...]]:
    return [rho(H.group, g) for g in generating_sequence(H.group)] if H.group.order > 1 else []


def aut0(H: HaarGraph, budget: int | None = None, certify: bool = True) -> PermGroupDescriptor:
    """Automorphisms mapping each part to itself."""
    n = H.n
    cells = [list(range(n)), list(range(n, 2 * n))]
    return automorphism_group(H, cells, budget, _haar_seeds(H), certify)


def aut_full(H: HaarGraph, budget: int | None = None, certify: bool = True) -> PermGroupDescriptor:
    return automorphism_group(H, None, budget, _haar_seeds(H), certify)


def point_stabilizer(P: PermGroupDescriptor, v: int) -> PermGroupDescriptor:
    if not 0 <= v < P.degree:
        raise ValueError("vertex out of range")
    return P.point_stabilizer(v)


@dataclass(frozen=True)
class HgrCheck:
    is_hgr: bool
    aut_order: int
    aut0_order: int


def is_hgr(G: FiniteGroup, S, budget: int | None = None) -> HgrCheck:
    """Whether ``Haar(G, S)`` has automorphism group exactly the right translations."""
    H = S if isinstance(S, HaarGraph) else build_haar(G, S)
    a0 = aut0(H, budget, certify=False).order
    a = aut_full(H, budget, certify=False).order
    return HgrCheck(a == G.order, a, a0)


def induced_group_automorphism(H: HaarGraph, phi: Sequence[int]) -> tuple[GroupHom, int]:
    """Group automorphism and translation describing a part swap of a bipartition-rigid Haar graph.

    Returns ``(f, x)`` with ``(r,-1) -> (f(r), 1)`` and ``(r,1) -> (f^-1(r) x, -1)``.
    """
    G, n = H.group, H.n
    if not H.is_connected():
        raise ValueError("the Haar graph must be connected")
    if aut0(H, certify=False).order != n:
        raise ValueError("the bipartition-preserving automorphism group is larger than the translations")
    phi = tuple(phi)
    if len(phi) != 2 * n or not H.is_automorphism(phi):
        raise ValueError("phi is not an automorphism of the graph")
    if phi[0] != n:
        raise ValueError("phi must map (1,-1) to (1,1)")
    f = tuple(phi[r] - n for r in range(n))
    if min(f) < 0:
        raise AssertionError("phi does not swap the parts")
    hom = GroupHom(G, G, f)
    if not (hom.is_homomorphism() and hom.is_bijective()):
        raise AssertionError("induced map is not a group automorphism")
    finv = perm_inverse(f)
    x = phi[n]
    if not 0 <= x < n:
        raise AssertionError("phi does not swap the parts")
    for r in range(n):
        if phi[n + r] != G.mul[finv[r]][x]:
            raise AssertionError("phi does not have the expected shape on the upper part")
    return hom, x
