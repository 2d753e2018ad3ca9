"""Explicit connection sets with trivial (bipartition-preserving) stabilizers.

Every builder checks its hypotheses and raises :class:`ConstructionError`
with a short machine-readable ``reason`` when one fails. The returned sets
are not verified here; :mod:`haarrep.driver` recomputes automorphism groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .groups.core import FiniteGroup, Subgroup
from .groups.structure import (closure_mask, dihedral_data, is_normal, is_simple, maximal_subgroups_of_prime_index,
                               quotient)
from .haar import ConnectionSet, in_window


class ConstructionError(ValueError):
    """A hypothesis of a construction does not hold."""

    def __init__(self, reason: str, message: str = ""):
        super().__init__(f"{reason}: {message}" if message else reason)
        self.reason = reason


def _fail(reason: str, message: str = ""):
    raise ConstructionError(reason, message)


def _as_mask(G: FiniteGroup, S) -> int:
    if isinstance(S, ConnectionSet):
        if S.parent is not G:
            _fail("wrong-group", "connection set belongs to another group")
        return S.members
    m = 0
    for e in S:
        if not 0 <= e < G.order:
            _fail("bad-element", f"element {e} out of range")
        m |= 1 << e
    return m


def _powers(G: FiniteGroup, s: int, exps: Iterable[int]) -> list[int]:
    return [G.power(s, k) for k in exps]


# ------------------------------------------------------------------ cyclic
CYCLIC_EXPONENTS = (0, 1, 2, 3, 4, 5, 6, 8)


def cyclic_connection(G: FiniteGroup, s: int) -> ConnectionSet:
    """``{s^0, ..., s^6, s^8}``; needs ``o(s) >= 12``."""
    if G.element_orders[s] < 12:
        _fail("order-too-small", f"element order {G.element_orders[s]} < 12")
    return ConnectionSet.from_elements(G, _powers(G, s, CYCLIC_EXPONENTS))


# ----------------------------------------------------------- two generators
def twogen_connection(G: FiniteGroup, s: int, t: int, variant: int = 1) -> ConnectionSet:
    """Cyclic set on ``s`` plus ``{t, ts}`` (variant 1) and also ``ts^3`` (variant 2)."""
    if variant not in (1, 2):
        _fail("bad-variant", str(variant))
    if G.element_orders[s] < 12:
        _fail("order-too-small", f"element order {G.element_orders[s]} < 12")
    if closure_mask(G, [s, t]).bit_count() != G.order:
        _fail("not-generating", "s and t do not generate the group")
    st = G.conj(s, t)
    if st == s:
        _fail("commuting", "t centralizes s")
    if variant == 1 and st == G.inv[s]:
        _fail("inverting", "t inverts s; variant 1 needs s^t != s^-1")
    if variant == 2 and dihedral_data(G) is None:
        _fail("not-dihedral", "variant 2 needs a dihedral group")
    els = _powers(G, s, CYCLIC_EXPONENTS) + [t, G.mul[t][s]]
    if variant == 2:
        els.append(G.mul[t][G.power(s, 3)])
    return ConnectionSet.from_elements(G, els)


class GeneratingPair(NamedTuple):
    s: int
    t: int
    inverting: bool  # t inverts s


def find_generating_pair_high_order(G: FiniteGroup, min_order: int = 12) -> GeneratingPair | None:
    """A generating pair with ``o(s) >= min_order`` and ``s^t != s``.

    Scans ``s`` by decreasing order (then index) and ``t`` by index. A pair
    with ``s^t`` different from ``s^-1`` is preferred; the inverting kind is
    returned only when no other pair exists. ``None`` means no qualifying
    pair exists at all.
    """
    orders = G.element_orders
    cands = sorted((s for s in range(G.order) if orders[s] >= min_order), key=lambda s: (-orders[s], s))
    fallback = None
    seen_cyclic: set[int] = set()
    for s in cands:
        cyc = closure_mask(G, [s])
        # generators of the same cyclic subgroup give the same verdicts
        if cyc in seen_cyclic:
            continue
        seen_cyclic.add(cyc)
        for t in range(G.order):
            if cyc >> t & 1:
                continue
            st = G.conj(s, t)
            if st == s:
                continue
            inverting = st == G.inv[s]
            if inverting and fallback is not None:
                continue
            if closure_mask(G, [t], cyc).bit_count() != G.order:
                continue
            if not inverting:
                return GeneratingPair(s, t, False)
            fallback = GeneratingPair(s, t, True)
    return fallback


# ------------------------------------------------------------------- lifts
def _check_base(G: FiniteGroup, N: Subgroup, S_N, check_rigid: bool) -> int:
    if N.parent is not G or not N.is_valid():
        _fail("not-subgroup", "N is not a subgroup of G")
    if N.order in (1, G.order):
        _fail("not-proper", "N must be a nontrivial proper subgroup")
    if not is_normal(G, N):
        _fail("not-normal", "N is not normal in G")
    m = _as_mask(G, S_N)
    if m & ~N.members:
        _fail("not-in-subgroup", "S_N is not contained in N")
    k = m.bit_count()
    if not in_window(k, N.order):
        _fail("window", f"|S_N| = {k} outside 4..{(N.order - 6) // 2}")
    if check_rigid:
        _require_rigid(G, N, m)
    return m


def _require_rigid(G: FiniteGroup, sub: Subgroup, mask: int) -> None:
    from .aut import aut0
    from .haar import build_haar

    H, emb = sub.as_group()
    pos = {g: i for i, g in enumerate(emb)}
    S = [pos[g] for g in range(G.order) if mask >> g & 1]
    if aut0(build_haar(H, S), certify=False).order != H.order:
        _fail("not-rigid", "Aut0 of the subgroup's Haar graph is larger than the translations")


def lift_cyclic_quotient(G: FiniteGroup, N: Subgroup, S_N, r: int, variant: int = 1,
                         check_rigid: bool = True) -> ConnectionSet:
    """Lift over a normal subgroup with cyclic quotient generated by ``rN``.

    Variant 1 is ``S_N`` together with ``Nr`` minus ``r``; variant 2 is its
    complement in ``G``. The window holds for variant 1 when ``|G:N| >= 3``
    and for variant 2 when ``|G:N| = 2``; the other combinations are refused.
    """
    if variant not in (1, 2):
        _fail("bad-variant", str(variant))
    m = _check_base(G, N, S_N, check_rigid)
    if r in N:
        _fail("r-in-N", "r lies in N")
    if closure_mask(G, [r], N.members).bit_count() != G.order:
        _fail("not-generating", "N and r do not generate G")
    index = G.order // N.order
    if variant == 1 and index < 3:
        _fail("window", "variant 1 needs index at least 3")
    if variant == 2 and index != 2:
        _fail("window", "variant 2 needs index 2")
    for g in N.right_coset(r):
        if g != r:
            m |= 1 << g
    if variant == 2:
        m = ((1 << G.order) - 1) & ~m
    return ConnectionSet(G, m)


def lift_simple_quotient(G: FiniteGroup, N: Subgroup, S_N, r1: int, r2: int, n1: int,
                         check_rigid: bool = True) -> ConnectionSet:
    """Lift over a normal subgroup with nonabelian simple quotient.

    ``S_N`` plus ``N r2^-1`` minus ``r2^-1``, plus ``N r2`` minus
    ``{r2, n1 r2}``, plus ``r1`` and ``r2 r1``. The four cosets involved must
    be pairwise distinct, which is asserted rather than assumed.
    """
    m = _check_base(G, N, S_N, check_rigid)
    Q, proj = quotient(G, N)
    if Q.is_abelian or not is_simple(Q):
        _fail("not-simple-quotient", "G/N is not nonabelian simple")
    if closure_mask(G, [r1, r2], N.members).bit_count() != G.order:
        _fail("not-generating", "r1, r2 and N do not generate G")
    if Q.element_orders[proj(r2)] < 5:
        _fail("quotient-order", "the image of r2 has order below 5")
    if n1 not in N or n1 == 0:
        _fail("bad-n1", "n1 must be a non-identity element of N")
    mul, inv = G.mul, G.inv
    r2i = inv[r2]
    r2r1 = mul[r2][r1]
    cosets = [0, proj(r2i), proj(r2), proj(r1), proj(r2r1)]
    if len(set(cosets)) != 5:
        _fail("coset-overlap", "N, N r2^-1, N r2, N r1 and N r2 r1 must be distinct cosets")
    n1r2 = mul[n1][r2]
    for g in N.right_coset(r2i):
        if g != r2i:
            m |= 1 << g
    for g in N.right_coset(r2):
        if g not in (r2, n1r2):
            m |= 1 << g
    m |= 1 << r1 | 1 << r2r1
    return ConnectionSet(G, m)


# ---------------------------------------------------------- index-2 abelian
DIHEDRAL_2P = "dihedral-2p"
ORDER_8 = "order-8-dihedral-or-quaternion"


@dataclass(frozen=True)
class MouraData:
    """Either a triple ``(N1, n1, n2)`` or one of the two exceptional tags."""

    N1: Subgroup | None = None
    n1: int | None = None
    n2: int | None = None
    tag: str | None = None

    @property
    def exceptional(self) -> bool:
        return self.tag is not None


def _moura_ok(G: FiniteGroup, N: Subgroup, N1: Subgroup, n1: int, n2: int, r: int) -> bool:
    if not (N1 < N) or n2 in N1 or n2 not in N or n1 not in N1 or n1 == 0:
        return False
    if closure_mask(G, [n2], N1.members) != N.members:
        return False
    c = G.prod(r, n2, G.inv[r], G.inv[n2])
    return c not in (0, n1)


def check_moura_data(G: FiniteGroup, N: Subgroup, r: int, data: MouraData) -> bool:
    if data.exceptional:
        return False
    return _moura_ok(G, N, data.N1, data.n1, data.n2, r)


def _index2_pre(G: FiniteGroup, N: Subgroup, r: int) -> None:
    if G.is_abelian:
        _fail("abelian", "G must be nonabelian")
    if N.parent is not G or not N.is_valid():
        _fail("not-subgroup", "N is not a subgroup of G")
    if 2 * N.order != G.order:
        _fail("index", "N must have index 2")
    els = N.elements()
    if any(G.mul[a][b] != G.mul[b][a] for a in els for b in els):
        _fail("not-abelian", "N must be abelian")
    if r in N:
        _fail("r-in-N", "r lies in N")


def moura_data(G: FiniteGroup, N: Subgroup, r: int) -> MouraData:
    """A triple with ``<N1, n2> = N`` and ``r n2 r^-1 n2^-1`` not in ``{1, n1}``.

    Maximal subgroups ``N1`` of ``N`` are tried largest first (ties by
    bitmask), then ``n2`` and ``n1`` by index. When no triple exists the
    group is dihedral of order ``2p`` or nonabelian of order 8 and the
    matching tag is returned.
    """
    _index2_pre(G, N, r)
    H, emb = N.as_group()
    for M in maximal_subgroups_of_prime_index(H):
        N1 = Subgroup.from_elements(G, (emb[i] for i in M.elements()))
        for n2 in N.elements():
            if n2 in N1:
                continue
            if closure_mask(G, [n2], N1.members) != N.members:
                continue
            c = G.prod(r, n2, G.inv[r], G.inv[n2])
            if c == 0:
                continue
            for n1 in N1.elements():
                if n1 != 0 and n1 != c:
                    return MouraData(N1, n1, n2)
    if G.order == 8:
        return MouraData(tag=ORDER_8)
    if is_prime_order(N.order):
        return MouraData(tag=DIHEDRAL_2P)
    raise AssertionError("no triple found outside the known exceptions")


def is_prime_order(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def abelian_index2_connection(G: FiniteGroup, N: Subgroup, N1: Subgroup, n1: int, n2: int, r: int, S_N1,
                              check_rigid: bool = True) -> ConnectionSet:
    """``S_N1`` plus ``n2 N1`` minus ``n2``, plus ``{r, n2 r, n1 n2 r}``."""
    _index2_pre(G, N, r)
    if G.order == 8 and G.element_orders.count(2) == 1:
        _fail("excluded-group", "the quaternion group is excluded")
    if G.order == 8 or (dihedral_data(G) is not None and is_prime_order(G.order // 2)):
        _fail("excluded-group", "dihedral groups of order 8 and 2p are excluded")
    if N1.parent is not G or not N1.is_valid():
        _fail("not-subgroup", "N1 is not a subgroup of G")
    if not _moura_ok(G, N, N1, n1, n2, r):
        _fail("moura-invariant", "(N1, n1, n2) violates the required invariants")
    m = _as_mask(G, S_N1)
    if m & ~N1.members:
        _fail("not-in-subgroup", "S_N1 is not contained in N1")
    if not in_window(m.bit_count(), N1.order):
        _fail("window", f"|S_N1| = {m.bit_count()} outside 4..{(N1.order - 6) // 2}")
    if check_rigid:
        _require_rigid(G, N1, m)
    mul = G.mul
    for g in N1.elements():
        x = mul[n2][g]
        if x != n2:
            m |= 1 << x
    n2r = mul[n2][r]
    m |= 1 << r | 1 << n2r | 1 << mul[n1][n2r]
    return ConnectionSet(G, m)
