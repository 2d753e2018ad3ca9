"""Subgroup closures, centres, normal subgroups and quotients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import FiniteGroup, GroupHom, Subgroup, bits


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_orders[g]


def closure_mask(G: FiniteGroup, seed: Iterable[int], start: int = 1) -> int:
    """Bitmask of the subgroup generated by ``seed`` together with the subgroup ``start``."""
    mul = G.mul
    members = start | 1
    elems = bits(members)
    gens: list[int] = []
    for g in seed:
        if members >> g & 1:
            continue
        gens.append(g)
        # re-close: every known element times every generator
        frontier = list(elems)
        while frontier:
            nxt = []
            for x in frontier:
                row = mul[x]
                for s in gens:
                    y = row[s]
                    if not members >> y & 1:
                        members |= 1 << y
                        nxt.append(y)
            elems.extend(nxt)
            frontier = nxt
        # newly added generator must also act on old elements
        if len(elems) != members.bit_count():
            elems = bits(members)
    return members


def closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    return Subgroup(G, closure_mask(G, seed))


def generates(G: FiniteGroup, seed: Iterable[int]) -> bool:
    return closure_mask(G, seed).bit_count() == G.order


def center(G: FiniteGroup) -> Subgroup:
    mul = G.mul
    n = G.order
    return Subgroup.from_elements(G, (z for z in range(n) if all(mul[z][g] == mul[g][z] for g in range(n))))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(a + 1, G.order)}
    return closure(G, sorted(comms))


def centralizer(G: FiniteGroup, sub: Subgroup, g: int) -> Subgroup:
    """``{n in sub : n g = g n}``."""
    mul = G.mul
    return Subgroup.from_elements(G, (x for x in sub.elements() if mul[x][g] == mul[g][x]))


@dataclass(frozen=True)
class Structure:
    is_abelian: bool
    center: Subgroup
    derived: Subgroup


def structure_queries(G: FiniteGroup) -> Structure:
    return Structure(G.is_abelian, center(G), derived_subgroup(G))


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    if "classes" in G._cache:
        return G._cache["classes"]
    seen = 0
    classes = []
    for x in range(G.order):
        if seen >> x & 1:
            continue
        cls = sorted({G.conj(x, h) for h in range(G.order)})
        for y in cls:
            seen |= 1 << y
        classes.append(cls)
    G._cache["classes"] = classes
    return classes


def normal_closure_mask(G: FiniteGroup, seed: Iterable[int], start: int = 1) -> int:
    members = closure_mask(G, seed, start)
    while True:
        conj = {G.conj(x, h) for x in bits(members) for h in range(G.order)}
        bigger = closure_mask(G, sorted(conj), members)
        if bigger == members:
            return members
        members = bigger


def is_normal(G: FiniteGroup, sub: Subgroup) -> bool:
    return all(G.conj(x, h) in sub for x in sub.elements() for h in range(G.order))


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, sorted by order then bitmask."""
    if "normals" in G._cache:
        return G._cache["normals"]
    # unions of classes closed under multiplication; grow by joining class closures
    class_closures = []
    for cls in conjugacy_classes(G):
        m = closure_mask(G, cls)
        if m not in class_closures:
            class_closures.append(m)
    found = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for N in frontier:
            for C in class_closures:
                if C & ~N == 0:
                    continue
                J = closure_mask(G, bits(C), N)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    out = [Subgroup(G, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]
    G._cache["normals"] = out
    return out


def quotient(G: FiniteGroup, N: Subgroup, name: str = "") -> tuple[FiniteGroup, GroupHom]:
    """Quotient group by a normal subgroup, with the projection map.

    Cosets are numbered by their least element, in increasing order, so the
    identity coset is 0.
    """
    coset_of = [-1] * G.order
    reps = []
    nel = N.elements()
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        k = len(reps)
        reps.append(g)
        for x in nel:
            coset_of[G.mul[x][g]] = k
    mul = [[coset_of[G.mul[a][b]] for b in reps] for a in reps]
    labels = [G.labels[r] + "N" if r else "N" for r in reps]
    Q = FiniteGroup(mul, labels, name=name or f"{G.name}/N", check=False)
    return Q, GroupHom(G, Q, tuple(coset_of))


def is_simple(G: FiniteGroup) -> bool:
    if G.order == 1:
        return False
    if is_prime(G.order):
        return True
    return len(normal_subgroups(G)) == 2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def normal_subgroups_with_simple_quotient(G: FiniteGroup) -> list[tuple[Subgroup, FiniteGroup, GroupHom]]:
    """Maximal proper normal subgroups with quotient and projection.

    Sorted by quotient order (smallest index first), ties by bitmask.
    """
    if G.order < 2:
        raise ValueError("the trivial group has no simple quotients")
    normals = normal_subgroups(G)
    full = (1 << G.order) - 1
    proper = [N for N in normals if N.members != full]
    maximal = [N for N in proper if not any(N < M for M in proper)]
    out = []
    for N in sorted(maximal, key=lambda N: (G.order // N.order, N.members)):
        Q, proj = quotient(G, N)
        if not is_simple(Q):
            raise AssertionError("maximal normal subgroup with non-simple quotient")
        out.append((N, Q, proj))
    return out


def is_cyclic(G: FiniteGroup) -> bool:
    return max(G.element_orders) == G.order


def cyclic_generator(G: FiniteGroup) -> int | None:
    for g, o in enumerate(G.element_orders):
        if o == G.order:
            return g
    return None


def dihedral_data(G: FiniteGroup) -> tuple[int, int] | None:
    """``(s, t)`` with ``o(s) = |G|/2``, ``t`` an involution inverting ``s``; ``None`` if not dihedral.

    Groups of order 2 and 4 (C2, C2^2) count as dihedral only if they match this
    shape; callers here only care about ``|G| >= 6``.
    """
    n = G.order
    if n % 2 or n < 4:
        return None
    m = n // 2
    orders = G.element_orders
    for s in range(n):
        if orders[s] != m:
            continue
        rot = closure_mask(G, [s])
        for t in range(n):
            if rot >> t & 1 or orders[t] != 2:
                continue
            if G.conj(s, t) == G.inv[s]:
                return s, t
        return None
    return None


def is_dihedral(G: FiniteGroup) -> bool:
    return dihedral_data(G) is not None


def is_subgroup_mask(G: FiniteGroup, mask: int) -> bool:
    return Subgroup(G, mask).is_valid()


def maximal_subgroups_of_prime_index(G: FiniteGroup, sub: Subgroup | None = None) -> list[Subgroup]:
    """Maximal subgroups of an abelian group (or abelian ``sub``), largest first.

    Uses that in an abelian group the maximal subgroups are exactly the
    kernels of maps onto cyclic groups of prime order, i.e. the subgroups of
    prime index generated by ``p``-th powers and a codimension-one lattice.
    A direct search over closures of element subsets suffices at our sizes.
    """
    els = sub.elements() if sub is not None else list(range(G.order))
    whole = Subgroup.from_elements(G, els).members
    total = len(els)
    found: set[int] = set()
    out = []
    for p in sorted({q for q in range(2, total + 1) if total % q == 0 and is_prime(q)}):
        target = total // p
        # subgroups of index p contain all p-th powers and all elements of order coprime to p
        base = closure_mask(G, [G.power(x, p) for x in els])
        if base.bit_count() == target:
            if base not in found:
                found.add(base)
                out.append(Subgroup(G, base))
            continue
        # extend the base by one element at a time until index p is reached
        _extend(G, base, els, target, found, out, whole)
    out.sort(key=lambda H: (-H.order, H.members))
    return out


def _extend(G, base, els, target, found, out, whole):
    stack = [base]
    seen = {base}
    while stack:
        m = stack.pop()
        if m.bit_count() == target:
            if m not in found:
                found.add(m)
                out.append(Subgroup(G, m))
            continue
        for x in els:
            if m >> x & 1:
                continue
            m2 = closure_mask(G, [x], m)
            if m2.bit_count() <= target and target % m2.bit_count() == 0 and m2 not in seen:
                seen.add(m2)
                stack.append(m2)
