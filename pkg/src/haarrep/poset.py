"""Two-layer posets from Haar graphs, their automorphisms and ideal counts."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .aut import Graph, automorphism_group
from .groups.core import FiniteGroup, bits
from .haar import ConnectionSet, HaarGraph, build_haar, in_window

MAX_TOP = 24
_CHUNK_BITS = 20


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    """Finite poset on ``0..size-1``; ``down[i]`` is the bitset of elements ``<= i``."""

    size: int
    down: tuple[int, ...]

    @classmethod
    def from_relations(cls, size: int, strict) -> "Poset":
        down = [1 << i for i in range(size)]
        for a, b in strict:
            down[b] |= 1 << a
        return cls(size, tuple(down))

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def strict_relations(self) -> list[tuple[int, int]]:
        return [(a, b) for b in range(self.size) for a in bits(self.down[b]) if a != b]

    def is_reflexive(self) -> bool:
        return all(self.down[i] >> i & 1 for i in range(self.size))

    def is_antisymmetric(self) -> bool:
        return all(not (a != b and self.leq(b, a)) for a, b in self.strict_relations())

    def is_transitive(self) -> bool:
        d = self.down
        return all(d[a] & ~d[b] == 0 for a, b in self.strict_relations())

    def is_valid(self) -> bool:
        return self.is_reflexive() and self.is_antisymmetric() and self.is_transitive()

    def height(self) -> int:
        """Number of elements in a longest chain."""
        memo: dict[int, int] = {}

        def h(b):
            if b not in memo:
                memo[b] = 1 + max((h(a) for a in bits(self.down[b]) if a != b), default=0)
            return memo[b]

        return max((h(b) for b in range(self.size)), default=0)

    def layers(self) -> tuple[list[int], list[int]]:
        """``(bottom, top)`` for a height-two poset: top elements have something strictly below."""
        top = [b for b in range(self.size) if self.down[b] != 1 << b]
        tops = set(top)
        bottom = [b for b in range(self.size) if b not in tops]
        return bottom, top

    def cover_relations(self) -> list[tuple[int, int]]:
        out = []
        for a, b in self.strict_relations():
            if not any(c not in (a, b) and self.leq(a, c) for c in bits(self.down[b])):
                out.append((a, b))
        return out

    def to_json(self) -> str:
        return json.dumps({"elements": self.size, "strict": [list(p) for p in self.strict_relations()]})

    @classmethod
    def from_json(cls, text: str) -> "Poset":
        d = json.loads(text)
        return cls.from_relations(d["elements"], d["strict"])

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        lines += [f"  p{i};" for i in range(self.size)]
        lines += [f"  p{a} -> p{b};" for a, b in self.cover_relations()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def haar_to_poset(H: HaarGraph) -> Poset:
    """Lower part below upper part along the edges."""
    n = H.n
    down = [1 << i for i in range(2 * n)]
    for y in range(n):
        down[n + y] |= H.adj[n + y]
    return Poset(2 * n, tuple(down))


@dataclass(frozen=True)
class PosetReport:
    aut_order: int
    semiregular: bool
    orbit_count: int
    orbit_sizes: tuple[int, ...]


def _comparability_graph(P: Poset) -> Graph:
    return Graph.from_edges(P.size, P.strict_relations())


def poset_automorphism_group(P: Poset):
    """Order automorphisms of a height-two poset, via the graph engine."""
    if P.height() > 2:
        raise PosetError("only posets of height at most two are supported")
    bottom, top = P.layers()
    if not top:
        raise PosetError("no strict relations: the layers cannot be told apart")
    # with the layers coloured apart, graph automorphisms are exactly order automorphisms
    return automorphism_group(_comparability_graph(P), [bottom, top], certify=True)


def poset_representation_report(P: Poset) -> PosetReport:
    A = poset_automorphism_group(P)
    orbits = A.orbits()
    sizes = tuple(sorted(len(o) for o in orbits))
    for o in orbits:
        st = A.point_stabilizer(o[0]).order
        if st * len(o) != A.order:
            raise AssertionError("orbit-stabilizer mismatch")
    semiregular = all(s == A.order for s in sizes)
    return PosetReport(A.order, semiregular, len(orbits), sizes)


# ------------------------------------------------------------------ ideals
def count_ideals(P: Poset) -> int:
    """Number of down-closed subsets of a height-two poset.

    Sum over subsets ``B`` of the top layer of ``2^(free bottom elements)``,
    where the bottom elements below ``B`` are forced. Union masks of all top
    subsets are built by doubling in numpy and tallied by popcount.
    """
    if P.height() > 2:
        raise PosetError("ideal counting needs height at most two")
    bottom, top = P.layers()
    if len(top) > MAX_TOP:
        raise PosetError(f"top layer larger than {MAX_TOP}")
    if len(bottom) > 63:
        raise PosetError("bottom layer too large for 64-bit masks")
    bpos = {b: i for i, b in enumerate(bottom)}
    below = []
    for t in top:
        m = 0
        for a in bits(P.down[t]):
            if a != t:
                m |= 1 << bpos[a]
        below.append(m)
    nb = len(bottom)
    head, tail = below[:_CHUNK_BITS], below[_CHUNK_BITS:]
    unions = np.zeros(1, dtype=np.uint64)
    for m in head:
        unions = np.concatenate([unions, unions | np.uint64(m)])
    tally = np.zeros(nb + 1, dtype=np.int64)
    for k in range(1 << len(tail)):
        extra = 0
        for i, m in enumerate(tail):
            if k >> i & 1:
                extra |= m
        pc = np.bitwise_count(unions | np.uint64(extra)).astype(np.int64)
        tally += np.bincount(pc, minlength=nb + 1)
    return sum(int(c) << (nb - k) for k, c in enumerate(tally.tolist()))


def count_ideals_brute(P: Poset) -> int:
    """Enumerate every subset (any height); for small posets only."""
    if P.size > 22:
        raise PosetError("brute force is limited to 22 elements")
    d = P.down
    total = 0
    for sub in range(1 << P.size):
        ok = True
        x = sub
        while x:
            low = x & -x
            i = low.bit_length() - 1
            if d[i] & ~sub:
                ok = False
                break
            x ^= low
        total += ok
    return total


@dataclass(frozen=True)
class LatticeBound:
    ideal_count: int
    bound_log2: Fraction
    within: bool
    premise: bool | None
    decomposition_holds: bool | None
    degenerate: bool

    @property
    def bound(self) -> float:
        return 2.0 ** float(self.bound_log2)


def _at_most_power(x: int, log2: Fraction) -> bool:
    """``x <= 2^log2`` exactly for a half-integer exponent."""
    num, den = log2.numerator, log2.denominator
    if den == 1:
        return x <= (1 << num) if num >= 0 else x <= 0
    # den == 2: compare squares
    return x <= 0 or x * x <= 2 ** num


def lattice_bound_check(G: FiniteGroup, S) -> LatticeBound:
    """Ideal count of the poset of ``Haar(G, G minus S)`` against ``2^(3|G|/2)``.

    When ``S`` lies in the window every upper element has at least
    ``|G|/2 + 3`` lower neighbours; that premise is checked, and with it the
    finer three-term bound ``2 + (2^n - 1) + (2^n - 1) 2^(n/2 - 3)``. The
    case ``S = G`` (an antichain) is reported as degenerate.
    """
    if not isinstance(S, ConnectionSet):
        S = ConnectionSet.from_elements(G, S)
    n = G.order
    if n > 16:
        raise PosetError("the lattice check is capped at order 16")
    T = S.complement()
    P = haar_to_poset(build_haar(G, T))
    count = count_ideals(P)
    log2 = Fraction(3 * n, 2)
    within = _at_most_power(count, log2)
    degenerate = len(T) == 0
    premise = decomposition = None
    if in_window(len(S), n):
        need = Fraction(n, 2) + 3
        premise = all(P.down[n + y].bit_count() - 1 >= need for y in range(n))
        if premise:
            rest = count - (2 + (1 << n) - 1)
            # rest <= (2^n - 1) * 2^(n/2 - 3)
            rhs_sq = Fraction(((1 << n) - 1) ** 2) * Fraction(2) ** (n - 6)
            decomposition = rest <= 0 or rest * rest <= rhs_sq
    return LatticeBound(count, log2, within, premise, decomposition, degenerate)
