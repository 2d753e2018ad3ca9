"""Haar graphs of groups.

Vertex ``x`` is ``(x, -1)`` and vertex ``n + x`` is ``(x, +1)``; the pair
``(g,-1) ~ (h,+1)`` is an edge when ``h g^-1`` lies in the connection set.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groups.core import FiniteGroup, GroupError, Subgroup, bits
from .groups.structure import closure_mask


@dataclass(frozen=True)
class ConnectionSet:
    parent: FiniteGroup = field(repr=False, compare=False)
    members: int

    @classmethod
    def from_elements(cls, G: FiniteGroup, elts: Iterable[int]) -> "ConnectionSet":
        m = 0
        for e in elts:
            if not 0 <= e < G.order:
                raise GroupError(f"element {e} out of range for order {G.order}")
            m |= 1 << e
        return cls(G, m)

    def __post_init__(self):
        if self.members >> self.parent.order:
            raise GroupError("connection set has members outside the group")

    def __len__(self) -> int:
        return self.members.bit_count()

    def __contains__(self, g: int) -> bool:
        return bool(self.members >> g & 1)

    def __iter__(self):
        return iter(bits(self.members))

    def elements(self) -> list[int]:
        return bits(self.members)

    def complement(self) -> "ConnectionSet":
        return ConnectionSet(self.parent, ((1 << self.parent.order) - 1) & ~self.members)

    def in_window(self) -> bool:
        """``4 <= |S| <= (|R|-6)/2``."""
        return 4 <= len(self) and 2 * len(self) <= self.parent.order - 6


def in_window(size: int, order: int) -> bool:
    return 4 <= size and 2 * size <= order - 6


class HaarGraph:
    """Bipartite graph on ``2n`` vertices with neighbour bitsets."""

    def __init__(self, G: FiniteGroup, S: ConnectionSet):
        if S.parent is not G:
            raise GroupError("connection set belongs to a different group")
        self.group = G
        self.conn = S
        n = G.order
        self.n = n
        self.nv = 2 * n
        elts = S.elements()
        mul = G.mul
        adj = [0] * (2 * n)
        for g in range(n):
            m = 0
            row = [mul[s][g] for s in elts]   # h = s g
            for h in row:
                m |= 1 << (n + h)
            adj[g] = m
        for g in range(n):
            for hv in bits(adj[g]):
                adj[hv] |= 1 << g
        self.adj = adj

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u])]

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj[: self.n])

    def adjacency_lists(self) -> list[list[int]]:
        return [bits(a) for a in self.adj]

    def is_connected(self) -> bool:
        """Breadth-first connectivity (independent of the group structure)."""
        if self.nv == 0:
            return True
        seen = 1
        queue = deque([0])
        while queue:
            v = queue.popleft()
            new = self.adj[v] & ~seen
            seen |= new
            queue.extend(bits(new))
        return seen.bit_count() == self.nv

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        adj = self.adj
        for u in range(self.n):
            pu = perm[u]
            target = 0
            for v in bits(adj[u]):
                target |= 1 << perm[v]
            if adj[pu] != target:
                return False
        # only edges from the lower part were checked; perm may swap parts
        return sorted(perm) == list(range(self.nv))

    def to_json(self) -> dict:
        return {"n": self.n, "S": self.conn.elements(), "edges": [list(e) for e in self.edges()]}

    def to_dot(self) -> str:
        G = self.group
        lines = ["graph haar {", "  rankdir=TB;"]
        lines.append("  { rank=same; " + " ".join(f"v{x};" for x in range(self.n)) + " }")
        lines.append("  { rank=same; " + " ".join(f"v{self.n + x};" for x in range(self.n)) + " }")
        for x in range(self.n):
            lines.append(f'  v{x} [label="({G.labels[x]},-1)"];')
            lines.append(f'  v{self.n + x} [label="({G.labels[x]},1)"];')
        for u, v in self.edges():
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"HaarGraph({self.group.name or '?'}, |S|={len(self.conn)})"


def build_haar(G: FiniteGroup, S: ConnectionSet | Iterable[int]) -> HaarGraph:
    if not isinstance(S, ConnectionSet):
        S = ConnectionSet.from_elements(G, S)
    return HaarGraph(G, S)


def is_connected_connection(G: FiniteGroup, S: ConnectionSet) -> bool:
    """Whether ``S^-1 S`` generates the group (equivalently, the Haar graph is connected)."""
    els = S.elements()
    if not els:
        return False
    s0inv = G.inv[els[0]]
    # <S^-1 S> = <s0^-1 s : s in S>
    gens = [G.mul[s0inv][s] for s in els]
    return closure_mask(G, gens).bit_count() == G.order


def bipartite_complement(G: FiniteGroup, S: ConnectionSet) -> ConnectionSet:
    return ConnectionSet(G, ((1 << G.order) - 1) & ~S.members)


def rho(G: FiniteGroup, g: int) -> tuple[int, ...]:
    """Right translation ``(x, e) -> (xg, e)``."""
    n = G.order
    col = [G.mul[x][g] for x in range(n)]
    return tuple(col + [n + y for y in col])


def iota(G: FiniteGroup) -> tuple[int, ...]:
    """``(x, e) -> (x^-1, -e)``."""
    n = G.order
    return tuple([n + G.inv[x] for x in range(n)] + [G.inv[x] for x in range(n)])


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Apply ``p`` then ``q``."""
    return tuple(q[i] for i in p)


def induced_coset_subgraph(H: HaarGraph, N: Subgroup, r: int = 0) -> HaarGraph:
    """The subgraph induced on ``Nr x {-1, 1}``, relabelled as a Haar graph over ``N``.

    ``(x r, e)`` becomes ``(x, e)``. Edges ``(x r,-1) ~ (y r,+1)`` need
    ``y r (x r)^-1 = y x^-1`` in ``S``, so the result is ``Haar(N, S & N)``
    for every ``r``.
    """
    G = H.group
    if N.parent is not G or not N.is_valid():
        raise GroupError("not a subgroup of the graph's group")
    sub, emb = N.as_group(G.name and f"sub({G.name})")
    n = H.n
    pos = {g: i for i, g in enumerate(emb)}
    coset = [G.mul[x][r] for x in emb]
    S_sub = ConnectionSet.from_elements(sub, (pos[s] for s in H.conn.elements() if s in N))
    out = HaarGraph(sub, S_sub)
    # cross-check against the actual induced subgraph
    for i, xr in enumerate(coset):
        expect = 0
        for j, yr in enumerate(coset):
            if H.adj[xr] >> (n + yr) & 1:
                expect |= 1 << (len(emb) + j)
        if expect != out.adj[i]:
            raise AssertionError("induced subgraph does not match Haar(N, S & N)")
    return out


def graph_to_json(H: HaarGraph) -> str:
    return json.dumps(H.to_json())
