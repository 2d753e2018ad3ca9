"""Regular subgroups of permutation groups (Cayley-graph recognition)."""

from __future__ import annotations

from typing import Sequence

from .permgroup import PermGroupDescriptor, StabChain, perm_compose
from .search import BudgetExceeded, default_budget


def is_semiregular_element(p: Sequence[int]) -> bool:
    """All cycles have the same length and there are no fixed points (unless ``p`` is the identity)."""
    n = len(p)
    seen = bytearray(n)
    length = None
    for i in range(n):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = p[j]
            k += 1
        if length is None:
            length = k
        elif k != length:
            return False
    return length != 1 or all(p[i] == i for i in range(n))


def _close(gens: list[tuple[int, ...]], degree: int, limit: int) -> set[tuple[int, ...]] | None:
    """Elements of the group generated by ``gens``; ``None`` once it exceeds ``limit`` or stops being semiregular."""
    ident = tuple(range(degree))
    elems = {ident}
    todo = [ident]
    while todo:
        x = todo.pop()
        for g in gens:
            y = perm_compose(x, g)
            if y not in elems:
                if len(elems) >= limit or not is_semiregular_element(y):
                    return None
                elems.add(y)
                todo.append(y)
    return elems


def find_regular_subgroup(P: PermGroupDescriptor, budget: int | None = None) -> list[tuple[int, ...]] | None:
    """Generators of a regular subgroup of ``P``, or ``None`` when none exists.

    Exhaustive: a regular subgroup is grown one element at a time, each new
    element mapping the point 0 to the least point not yet covered; every
    candidate in the corresponding coset of the point stabilizer is tried.
    Raises :class:`BudgetExceeded` when the number of examined elements
    passes ``budget``.
    """
    d = P.degree
    if d == 0:
        return []
    if not P.is_transitive() or P.order % d:
        return None
    if P.order == d:
        return list(P.generators)
    budget = default_budget() if budget is None else budget
    chain = StabChain(d, P.generators, base=[0])
    stab_order = P.order // d
    if stab_order > budget:
        raise BudgetExceeded(f"point stabilizer of order {stab_order} too large to scan")
    cand: dict[int, list[tuple[int, ...]]] = {}
    work = [0]

    def candidates(t: int) -> list[tuple[int, ...]]:
        if t not in cand:
            out = []
            for g in chain.coset_elements(0, t):
                work[0] += 1
                if work[0] > budget:
                    raise BudgetExceeded("regular-subgroup search budget exhausted")
                if is_semiregular_element(g):
                    out.append(g)
            cand[t] = out
        return cand[t]

    seen: set[frozenset] = set()

    def rec(gens: list[tuple[int, ...]], elems: set[tuple[int, ...]]):
        if len(elems) == d:
            return gens
        covered = {e[0] for e in elems}
        t = next(x for x in range(d) if x not in covered)
        for g in candidates(t):
            work[0] += 1
            if work[0] > budget:
                raise BudgetExceeded("regular-subgroup search budget exhausted")
            new = _close(gens + [g], d, d)
            if new is None or d % len(new):
                continue
            key = frozenset(new)
            if key in seen:
                continue
            seen.add(key)
            res = rec(gens + [g], new)
            if res is not None:
                return res
        return None

    return rec([], {tuple(range(d))})
