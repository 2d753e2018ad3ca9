"""Deciding whether a graph is a Cayley graph (has a regular automorphism subgroup).

The decision runs a chain of exact reductions (components, complements,
bipartite complements of Haar graphs) and cheap positive certificates
(regular automorphism group, twin quotients, part-swapping normalizer
elements) before falling back to the exhaustive regular-subgroup search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice

from .aut import BudgetExceeded, Graph, _as_graph, automorphism_group, find_regular_subgroup
from .aut.permgroup import StabChain
from .groups.core import FiniteGroup
from .groups.iso import automorphisms, generating_sequence
from .groups.structure import closure_mask
from .haar import ConnectionSet, build_haar, rho

YES, NO, UNKNOWN = "yes", "no", "unknown"
AUTOMORPHISM_CAP = 5000


@dataclass(frozen=True)
class CayleyStatus:
    verdict: str
    reason: str


def _induced(g: Graph, verts: list[int]) -> Graph:
    pos = {v: i for i, v in enumerate(verts)}
    return Graph(len(verts), [[pos[u] for u in g.nbrs[v] if u in pos] for v in verts])


def _complement(g: Graph) -> Graph:
    full = set(range(g.nv))
    return Graph(g.nv, [full - set(g.nbrs[v]) - {v} for v in range(g.nv)])


def _twin_quotient(g: Graph, closed: bool) -> Graph | None:
    """Quotient by (open or closed) neighbourhood twins when every class has the same size > 1."""
    key = {}
    for v in range(g.nv):
        k = frozenset(g.nbrs[v]) | ({v} if closed else frozenset())
        key.setdefault(k, []).append(v)
    classes = list(key.values())
    sizes = {len(c) for c in classes}
    if len(sizes) != 1 or sizes == {1}:
        return None
    cls = {v: i for i, c in enumerate(classes) for v in c}
    adj = [{cls[u] for u in g.nbrs[c[0]] if cls[u] != i} for i, c in enumerate(classes)]
    return Graph(len(classes), adj)


def cayley_status(graph, budget: int | None = None, _extra=None) -> CayleyStatus:
    """Cayley-graph decision for an undirected graph (``yes``/``no``/``unknown``)."""
    g = _as_graph(graph)
    nv = g.nv
    if nv <= 2 or g.edge_count in (0, nv * (nv - 1) // 2):
        return CayleyStatus(YES, "edgeless-or-complete")
    try:
        comps = g.components()
        if len(comps) > 1:
            P = automorphism_group(g, budget=budget, certify=False)
            if not P.is_transitive():
                return CayleyStatus(NO, "not-vertex-transitive")
            # isomorphic components: a disjoint union is Cayley iff one component is
            return _tag(cayley_status(_induced(g, comps[0]), budget), "component")
        co = _complement(g)
        if not co.is_connected():
            return _tag(cayley_status(co, budget), "complement")
        P = automorphism_group(g, budget=budget, certify=False)
    except BudgetExceeded:
        return CayleyStatus(UNKNOWN, "budget")
    if not P.is_transitive():
        return CayleyStatus(NO, "not-vertex-transitive")
    if P.order == nv:
        return CayleyStatus(YES, "regular-automorphism-group")
    for closed in (False, True):
        q = _twin_quotient(g, closed)
        if q is not None and cayley_status(q, budget).verdict == YES:
            return CayleyStatus(YES, "twin-quotient")
    if _extra is not None and _extra():
        return CayleyStatus(YES, "normalizer")
    try:
        reg = find_regular_subgroup(P, budget)
    except BudgetExceeded:
        return CayleyStatus(UNKNOWN, "budget")
    return CayleyStatus(YES, "regular-subgroup") if reg is not None else CayleyStatus(NO, "no-regular-subgroup")


def _tag(st: CayleyStatus, prefix: str) -> CayleyStatus:
    return CayleyStatus(st.verdict, f"{prefix}/{st.reason}")


def _subgroup_haar(G: FiniteGroup, mask: int, S: list[int]) -> tuple[FiniteGroup, ConnectionSet]:
    from .groups.core import Subgroup

    H, emb = Subgroup(G, mask).as_group()
    pos = {g: i for i, g in enumerate(emb)}
    return H, ConnectionSet.from_elements(H, (pos[x] for x in S))


def _translated_component(G: FiniteGroup, S: list[int]) -> tuple[FiniteGroup, ConnectionSet]:
    """``Haar(<S^-1 S>, s0^-1 S)``: the component of the identity, as a Haar graph."""
    s0i = G.inv[S[0]]
    T = [G.mul[s0i][s] for s in S]
    return _subgroup_haar(G, closure_mask(G, T), T)


def normalizer_swap(G: FiniteGroup, S: ConnectionSet, cap: int = AUTOMORPHISM_CAP) -> list[tuple[int, ...]] | None:
    """Generators of a regular group ``<R^, phi>`` with ``phi`` a part swap, if one is found.

    ``phi`` is ``(x,-1) -> (a x^f, 1)``, ``(x,1) -> (b x^f, -1)`` for a group
    automorphism ``f``; it preserves the graph when ``a (S^f)^-1 b^-1 = S``.
    """
    n = G.order
    els = S.elements()
    if not els:
        return None
    mul, inv = G.mul, G.inv
    Smask = S.members
    H = build_haar(G, S)
    base = [rho(G, g) for g in generating_sequence(G)] if n > 1 else []
    ident = tuple(range(n))
    autos = [ident]
    if G.is_abelian:
        autos.append(tuple(inv))
    autos += [f for f in islice(automorphisms(G), cap) if f not in autos[:2]]
    for f in autos:
        Sf_inv = [inv[f[s]] for s in els]
        for a in range(n):
            T = [mul[a][x] for x in Sf_inv]
            for s in els:
                binv = mul[inv[T[0]]][s]
                m = 0
                for t in T:
                    m |= 1 << mul[t][binv]
                if m != Smask:
                    continue
                b = inv[binv]
                phi = tuple([n + mul[a][f[x]] for x in range(n)] + [mul[b][f[x]] for x in range(n)])
                if not H.is_automorphism(phi):
                    raise AssertionError("normalizer candidate is not an automorphism")
                chain = StabChain(2 * n, base + [phi])
                if chain.order() == 2 * n:
                    return base + [phi]
    return None


def haar_cayley_status(G: FiniteGroup, S: ConnectionSet, budget: int | None = None) -> CayleyStatus:
    """Cayley decision for ``Haar(G, S)``."""
    n = G.order
    els = S.elements()
    if not els or len(els) == n:
        return CayleyStatus(YES, "empty-or-complete-bipartite")
    s0i = G.inv[els[0]]
    if closure_mask(G, [G.mul[s0i][s] for s in els]).bit_count() != n:
        # disjoint copies of the identity component
        H, T = _translated_component(G, els)
        return _tag(haar_cayley_status(H, T, budget), "haar-component")
    comp = S.complement().elements()
    t0i = G.inv[comp[0]]
    if closure_mask(G, [G.mul[t0i][t] for t in comp]).bit_count() != n:
        # Haar(G,S) is the bipartite complement of copies of X; it is Cayley iff X is
        H, T = _translated_component(G, comp)
        return _tag(haar_cayley_status(H, T, budget), "haar-bipartite-complement")
    return cayley_status(build_haar(G, S), budget, _extra=lambda: normalizer_swap(G, S) is not None)


def is_cayley_haar(G: FiniteGroup, S) -> bool | None:
    if not isinstance(S, ConnectionSet):
        S = ConnectionSet.from_elements(G, S)
    v = haar_cayley_status(G, S).verdict
    return None if v == UNKNOWN else v == YES


__all__ = ["CayleyStatus", "cayley_status", "haar_cayley_status", "is_cayley_haar", "normalizer_swap"]
