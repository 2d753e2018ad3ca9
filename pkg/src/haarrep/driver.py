"""Inductive HGR driver and verified certificates."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from . import constructors as C
from .aut import BudgetExceeded, aut0, aut_full, is_hgr
from .groups import catalog
from .groups.core import FiniteGroup, Subgroup, bits
from .groups.named import make_named
from .groups.structure import (closure_mask, cyclic_generator, dihedral_data, is_cyclic,
                               normal_subgroups_with_simple_quotient)
from .haar import ConnectionSet, build_haar, in_window, is_connected_connection

METHODS = ("cyclic", "twogen-S1", "twogen-S2", "lift-cyclic-S1", "lift-cyclic-S2", "lift-simple",
           "abelian-index2", "search", "exceptional", "trivial")
EXHAUSTIVE_ORDER = 13
DEFAULT_SAMPLES = 20_000
WITNESS_SAMPLES = 2_000
WINDOW_CANDIDATES = 50_000


class ConstructionUnknown(RuntimeError):
    """The driver ran out of budget without a verified answer."""


@dataclass(frozen=True)
class HgrCertificate:
    group: str
    order: int
    connection_set: list[int]
    aut_order: int
    aut0_order: int
    is_hgr: bool
    method: str
    window: bool
    verified: bool

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "HgrCertificate":
        d = json.loads(text)
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})

    @property
    def rigid(self) -> bool:
        """Only the translations preserve both parts."""
        return self.aut0_order == self.order


def certify(G: FiniteGroup, S, method: str, budget: int | None = None) -> HgrCertificate:
    """Recompute both automorphism orders of ``Haar(G, S)`` from scratch."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if not isinstance(S, ConnectionSet):
        S = ConnectionSet.from_elements(G, S)
    H = build_haar(G, S)
    a0 = aut0(H, budget).order
    a = aut_full(H, budget).order
    return HgrCertificate(G.name, G.order, S.elements(), a, a0, a == G.order, method,
                          in_window(len(S), G.order), True)


def verify_certificate(cert: HgrCertificate, G: FiniteGroup | None = None, budget: int | None = None) -> bool:
    """Whether a certificate's orders and flags match a fresh computation."""
    if G is None:
        G = _group_by_name(cert.group)
    if G.order != cert.order:
        return False
    fresh = certify(G, cert.connection_set, cert.method, budget)
    return fresh == cert


def _group_by_name(name: str) -> FiniteGroup:
    try:
        return catalog.get(name)
    except ValueError:
        return make_named(name)


# ------------------------------------------------------------------ search
def _rng(seed: int, G: FiniteGroup) -> np.random.Generator:
    return np.random.default_rng([seed, G.order])


def _aut0_order(G: FiniteGroup, mask: int, budget: int | None) -> int:
    return aut0(build_haar(G, ConnectionSet(G, mask)), budget, certify=False).order


def _both_connected(G: FiniteGroup, mask: int) -> bool:
    S = ConnectionSet(G, mask)
    return is_connected_connection(G, S) and is_connected_connection(G, S.complement())


def random_search(G: FiniteGroup, want: str, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                  budget: int | None = None) -> int | None:
    """Mask of a set with ``aut0 = |G|`` (``want='rigid'``) or ``aut = |G|`` (``want='hgr'``)."""
    return _sample(G, want, samples, seed, budget)[0]


def _sample(G: FiniteGroup, want: str, samples: int, seed: int, budget) -> tuple[int | None, int | None]:
    """``(hit, best)``: the first qualifying mask and the sampled mask with the smallest ``aut0``.

    Sets always contain the identity (translations make this no loss) and
    must leave both the graph and its bipartite complement connected, since
    otherwise the stabilizer is never trivial.
    """
    n = G.order
    rng = _rng(seed, G)
    best, best_a0 = None, None
    for _ in range(samples):
        row = rng.random(n) < 0.5
        row[0] = True
        mask = int(sum(1 << int(i) for i in np.flatnonzero(row)))
        if not _both_connected(G, mask):
            continue
        try:
            a0 = _aut0_order(G, mask, budget)
            if best_a0 is None or a0 < best_a0:
                best, best_a0 = mask, a0
            if a0 != n:
                continue
            if want == "rigid" or is_hgr(G, ConnectionSet(G, mask), budget).is_hgr:
                return mask, mask
        except BudgetExceeded:
            continue
    return None, best


def _window_candidates(n: int):
    """Sizes allowed by the window, smallest first."""
    return range(4, (n - 6) // 2 + 1)


def windowed_search(G: FiniteGroup, want: str = "rigid", limit: int = WINDOW_CANDIDATES, seed: int = 0,
                    budget: int | None = None) -> int | None:
    """A windowed set with trivial stabilizer (or full HGR), exhaustive when the space is small.

    Candidates contain the identity. If the number of such windowed sets is
    at most ``limit`` they are all tried in lexicographic order, so ``None``
    is then a proof that none exists; otherwise ``limit`` random candidates
    are drawn.
    """
    from itertools import combinations

    n = G.order
    sizes = list(_window_candidates(n))
    if not sizes:
        return None
    total = sum(comb(n - 1, k - 1) for k in sizes)

    def test(mask):
        if not _both_connected(G, mask):
            return False
        try:
            if _aut0_order(G, mask, budget) != n:
                return False
            return want == "rigid" or is_hgr(G, ConnectionSet(G, mask), budget).is_hgr
        except BudgetExceeded:
            return False

    if total <= limit:
        for k in sizes:
            for rest in combinations(range(1, n), k - 1):
                mask = 1 | sum(1 << x for x in rest)
                if test(mask):
                    return mask
        return None
    rng = _rng(seed, G)
    for _ in range(limit):
        k = int(rng.choice(sizes))
        rest = rng.choice(np.arange(1, n), size=k - 1, replace=False)
        mask = 1 | int(sum(1 << int(x) for x in rest))
        if test(mask):
            return mask
    return None


# ---------------------------------------------------------- rigid recursion
def _sub(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, list[int]]:
    H, emb = N.as_group(f"sub{N.order}")
    return H, emb


def rigid_windowed(G: FiniteGroup, seed: int = 0, budget: int | None = None,
                   _depth: int = 0) -> tuple[ConnectionSet, str] | None:
    """A windowed set with ``Aut0 = G^`` together with the construction used, or ``None``.

    Follows the inductive ladder: the cyclic set, a two-generator set, a
    lift over a normal subgroup with simple quotient (recursing on the
    subgroup), and finally :func:`windowed_search`.
    """
    n = G.order
    if n < 14:
        return None
    cache = G._cache.setdefault("rigid_windowed", {})
    if seed in cache:
        return cache[seed]
    res = _rigid_windowed(G, seed, budget, _depth)
    if res is not None:
        S, _ = res
        if not in_window(len(S), n) or _aut0_order(G, S.members, budget) != n:
            raise AssertionError(f"windowed rigid set for {G.name} failed verification")
    cache[seed] = res
    return res


def _rigid_windowed(G, seed, budget, depth):
    n = G.order
    e = catalog.identify(G) if n <= 64 else None
    if e is not None and e.no_rigid:
        return None
    if is_cyclic(G) and n >= 22:
        return C.cyclic_connection(G, cyclic_generator(G)), "cyclic"
    if not G.is_abelian:
        got = _twogen(G, need_window=True)
        if got is not None:
            return got
    got = _lift(G, seed, budget, depth, want_hgr=False)
    if got is not None:
        return got
    mask = windowed_search(G, "rigid", seed=seed, budget=budget)
    return (ConnectionSet(G, mask), "search") if mask is not None else None


def _twogen(G: FiniteGroup, need_window: bool) -> tuple[ConnectionSet, str] | None:
    pair = C.find_generating_pair_high_order(G, 12)
    if pair is None:
        return None
    s, t, inverting = pair
    cyc = closure_mask(G, [s]).bit_count()
    if not inverting:
        if need_window and G.order // cyc <= 2:
            return None
        return C.twogen_connection(G, s, t, 1), "twogen-S1"
    if dihedral_data(G) is not None:
        if need_window and G.element_orders[s] < 14:
            return None
        return C.twogen_connection(G, s, t, 2), "twogen-S2"
    return None


def _lift(G: FiniteGroup, seed: int, budget, depth: int, want_hgr: bool) -> tuple[ConnectionSet, str] | None:
    """Lift a windowed rigid set of a maximal normal subgroup; ``want_hgr`` also demands ``Aut = G^``."""
    n = G.order
    for N, Q, proj in normal_subgroups_with_simple_quotient(G):
        if N.order < 14:
            continue
        H, emb = _sub(G, N)
        got = rigid_windowed(H, seed, budget, depth + 1)
        if got is None:
            continue
        S_N = [emb[x] for x in got[0].elements()]
        if Q.is_abelian:
            r = min(g for g in range(n) if g not in N and closure_mask(G, [g], N.members).bit_count() == n)
            variant = 1 if Q.order >= 3 else 2
            S = C.lift_cyclic_quotient(G, N, S_N, r, variant, check_rigid=False)
            method = f"lift-cyclic-S{variant}"
            if want_hgr and not is_hgr(G, S, budget).is_hgr:
                alt = _moura_route(G, N, r, seed, budget, depth) if Q.order == 2 else None
                if alt is None:
                    continue
                S, method = alt
        else:
            pick = _simple_choice(G, N, proj, Q)
            if pick is None:
                continue
            r1, r2, n1 = pick
            S = C.lift_simple_quotient(G, N, S_N, r1, r2, n1, check_rigid=False)
            method = "lift-simple"
        return S, method
    return None


def _simple_choice(G: FiniteGroup, N: Subgroup, proj, Q: FiniteGroup) -> tuple[int, int, int] | None:
    """Lowest-index ``(r1, r2, n1)`` meeting the simple-quotient lift's hypotheses."""
    n = G.order
    qo = Q.element_orders
    n1 = min(x for x in N.elements() if x != 0)
    for r2 in range(n):
        if qo[proj(r2)] < 5:
            continue
        r2i = G.inv[r2]
        bad = {0, proj(r2), proj(r2i)}
        for r1 in range(n):
            if proj(r1) in bad or proj(G.mul[r2][r1]) in bad:
                continue
            if closure_mask(G, [r1, r2], N.members).bit_count() == n:
                return r1, r2, n1
    return None


def _moura_route(G, N, r, seed, budget, depth) -> tuple[ConnectionSet, str] | None:
    H, emb = _sub(G, N)
    if not H.is_abelian or G.is_abelian:
        return None
    md = C.moura_data(G, N, r)
    if md.exceptional:
        return None
    H1, emb1 = _sub(G, md.N1)
    got = rigid_windowed(H1, seed, budget, depth + 1)
    if got is None:
        return None
    S_N1 = [emb1[x] for x in got[0].elements()]
    try:
        S = C.abelian_index2_connection(G, N, md.N1, md.n1, md.n2, r, S_N1, check_rigid=False)
    except C.ConstructionError:
        return None
    return S, "abelian-index2"


# ------------------------------------------------------------------ driver
def construct_hgr(G: FiniteGroup, seed: int = 0, budget: int | None = None,
                  samples: int = DEFAULT_SAMPLES) -> HgrCertificate:
    """Verified certificate for ``G``.

    Nonabelian groups aim at an HGR; abelian groups, which never have one,
    aim at a set whose bipartition-preserving group is exactly the
    translations. Raises :class:`ConstructionUnknown` when no verdict is
    reached within budget.
    """
    n = G.order
    if n <= 2:
        return certify(G, list(range(n)), "trivial", budget)
    entry = catalog.identify(G) if n <= 64 else None
    want_hgr = not G.is_abelian

    if n <= EXHAUSTIVE_ORDER:
        return _exhaustive(G, budget)

    if entry is not None and (entry.no_rigid or (want_hgr and entry.no_hgr)):
        return _exceptional(G, entry, seed, budget)

    if is_cyclic(G) and n >= 12:
        return _final(G, C.cyclic_connection(G, cyclic_generator(G)), "cyclic", budget, want_hgr)

    if want_hgr:
        got = _twogen(G, need_window=False)
        if got is not None:
            cert = _final(G, got[0], got[1], budget, want_hgr, strict=False)
            if cert is not None:
                return cert

    got = _lift(G, seed, budget, 0, want_hgr)
    if got is not None:
        cert = _final(G, got[0], got[1], budget, want_hgr, strict=False)
        if cert is not None:
            return cert

    mask = random_search(G, "hgr" if want_hgr else "rigid", samples, seed, budget)
    if mask is None:
        raise ConstructionUnknown(f"no certificate for {G.name} within {samples} samples")
    return _final(G, ConnectionSet(G, mask), "search", budget, want_hgr)


def _success(cert: HgrCertificate, want_hgr: bool) -> bool:
    return cert.is_hgr if want_hgr else cert.rigid


def _final(G, S, method, budget, want_hgr, strict: bool = True) -> HgrCertificate | None:
    cert = certify(G, S, method, budget)
    if _success(cert, want_hgr):
        return cert
    if strict:
        raise AssertionError(f"{method} set for {G.name} failed verification: {cert}")
    return None


def _exhaustive(G: FiniteGroup, budget) -> HgrCertificate:
    from .classify import YES, classify_group

    rep = classify_group(G, budget, max_order=EXHAUSTIVE_ORDER)
    if not rep.exhaustive:
        raise ConstructionUnknown(f"exhaustive classification of {G.name} hit the budget")
    if rep.hgr_witness is not None:
        return certify(G, rep.hgr_witness, "search", budget)
    if G.is_abelian and rep.rigid_witness is not None:
        return certify(G, rep.rigid_witness, "search", budget)
    if rep.admits_rigid_bipartition == YES:
        return certify(G, rep.rigid_witness, "exceptional", budget)
    best = min(rep.records, key=lambda r: (r.aut0_order, r.mask))
    return certify(G, bits(best.mask), "exceptional", budget)


def _exceptional(G: FiniteGroup, entry, seed, budget) -> HgrCertificate:
    """Catalog-listed exception.

    Carries a rigid witness when a short search finds one, and otherwise
    the sampled set with the smallest bipartition-preserving group.
    """
    hit, best = _sample(G, "rigid", WITNESS_SAMPLES, seed, budget)
    return certify(G, bits(hit if hit is not None else best or 0), "exceptional", budget)
