"""Isomorphism testing and automorphism enumeration for table groups."""

from __future__ import annotations

from collections import Counter
from typing import Iterator

from .core import FiniteGroup, GroupHom
from .structure import center, closure_mask, derived_subgroup


def fingerprint(G: FiniteGroup) -> tuple:
    """Isomorphism invariant: order, element-order profile, centre and abelianization sizes."""
    if "fingerprint" not in G._cache:
        prof = tuple(sorted(Counter(G.element_orders).items()))
        G._cache["fingerprint"] = (G.order, prof, center(G).order, G.order // derived_subgroup(G).order)
    return G._cache["fingerprint"]


def generating_sequence(G: FiniteGroup) -> list[int]:
    """A short generating sequence, preferring elements of large order."""
    if "gens" in G._cache:
        return G._cache["gens"]
    orders = G.element_orders
    cand = sorted(range(1, G.order), key=lambda g: (-orders[g], g))
    gens: list[int] = []
    members = 1
    while members.bit_count() < G.order:
        # greedily take the element that enlarges the subgroup the most
        best, best_mask = None, members
        for g in cand:
            if members >> g & 1:
                continue
            m = closure_mask(G, [g], members)
            if m.bit_count() > best_mask.bit_count():
                best, best_mask = g, m
                if m.bit_count() == G.order:
                    break
        gens.append(best)
        members = best_mask
    G._cache["gens"] = gens
    return gens


def _words(G: FiniteGroup, gens: list[int]) -> list[tuple[int, int, int]]:
    """BFS spanning tree: list of (element, parent, generator index) excluding identity."""
    seen = {0}
    order = [0]
    tree = []
    i = 0
    while i < len(order):
        x = order[i]
        for k, g in enumerate(gens):
            y = G.mul[x][g]
            if y not in seen:
                seen.add(y)
                order.append(y)
                tree.append((y, x, k))
        i += 1
    return tree


def _extend(G: FiniteGroup, H: FiniteGroup, gens: list[int], tree, images: tuple[int, ...]) -> list[int] | None:
    f = [-1] * G.order
    f[0] = 0
    for y, x, k in tree:
        f[y] = H.mul[f[x]][images[k]]
    if len(set(f)) != G.order:
        return None
    for x in range(G.order):
        fx = f[x]
        for k, g in enumerate(gens):
            if f[G.mul[x][g]] != H.mul[fx][images[k]]:
                return None
    return f


def _pruned_sizes(G: FiniteGroup, gens: list[int]) -> list[int]:
    return [closure_mask(G, gens[:k + 1]).bit_count() for k in range(len(gens))]


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    if fingerprint(G) != fingerprint(H):
        return None
    if G.order == 1:
        return GroupHom(G, H, (0,))
    gens = generating_sequence(G)
    tree = _words(G, gens)
    sizes = _pruned_sizes(G, gens)
    go, ho = G.element_orders, H.element_orders
    cands = [[h for h in range(H.order) if ho[h] == go[g]] for g in gens]
    chosen: list[int] = []

    def rec(k):
        if k == len(gens):
            return _extend(G, H, gens, tree, tuple(chosen))
        for h in cands[k]:
            chosen.append(h)
            if closure_mask(H, chosen).bit_count() == sizes[k]:
                f = rec(k + 1)
                if f is not None:
                    return f
            chosen.pop()
        return None

    f = rec(0)
    return None if f is None else GroupHom(G, H, tuple(f))


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> tuple[bool, GroupHom | None]:
    hom = find_isomorphism(G, H)
    return hom is not None, hom


def automorphisms(G: FiniteGroup) -> Iterator[tuple[int, ...]]:
    """Every automorphism of ``G`` as an image tuple (can be many)."""
    if G.order == 1:
        yield (0,)
        return
    gens = generating_sequence(G)
    tree = _words(G, gens)
    sizes = _pruned_sizes(G, gens)
    orders = G.element_orders
    cands = [[h for h in range(G.order) if orders[h] == orders[g]] for g in gens]
    chosen: list[int] = []

    def rec(k):
        if k == len(gens):
            f = _extend(G, G, gens, tree, tuple(chosen))
            if f is not None:
                yield tuple(f)
            return
        for h in cands[k]:
            chosen.append(h)
            if closure_mask(G, chosen).bit_count() == sizes[k]:
                yield from rec(k + 1)
            chosen.pop()

    yield from rec(0)


def automorphism_generators(G: FiniteGroup) -> list[tuple[int, ...]]:
    """A generating set of ``Aut(G)``, as element permutations.

    Automorphisms are enumerated in backtrack order and kept only when they
    fall outside the group generated so far (membership by sifting).
    """
    if "autgens" in G._cache:
        return G._cache["autgens"]
    from ..aut.permgroup import StabChain

    chain = StabChain(G.order)
    gens: list[tuple[int, ...]] = []
    for f in automorphisms(G):
        if f == tuple(range(G.order)):
            continue
        if not chain.contains(f):
            gens.append(f)
            chain.add_generator(f)
    G._cache["autgens"] = gens
    return gens
