"""Finite groups stored as dense multiplication tables.

Elements are the integers ``0..n-1`` and ``0`` is always the identity.
Products follow the usual left-to-right convention: ``G.mul[a][b]`` is
``a*b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

MAX_ORDER = 4096


class GroupError(ValueError):
    """Raised for invalid group data or unsupported constructions."""


class FiniteGroup:
    """A finite group given by its full Cayley table.

    Instances are treated as immutable; derived data (orders, classes, ...)
    is cached on first use.
    """

    def __init__(self, mul: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 name: str = "", check: bool = True):
        n = len(mul)
        if n < 1:
            raise GroupError("a group needs at least one element")
        if n > MAX_ORDER:
            raise GroupError(f"order {n} exceeds the table cap {MAX_ORDER}")
        self._cache: dict = {}
        self.mul: list[list[int]] = [list(row) for row in mul]
        self.order = n
        self.name = name
        self.labels: list[str] = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise GroupError("label count does not match the order")
        if check:
            self._check_table()
        self.inv: list[int] = [row.index(0) for row in self.mul]
        if check:
            self._check_axioms()

    identity = 0

    # ------------------------------------------------------------------ checks
    def _check_table(self) -> None:
        n = self.order
        full = set(range(n))
        for g, row in enumerate(self.mul):
            if len(row) != n or set(row) != full:
                raise GroupError(f"row {g} is not a permutation of 0..{n - 1}")
        for h in range(n):
            if {self.mul[g][h] for g in range(n)} != full:
                raise GroupError(f"column {h} is not a permutation of 0..{n - 1}")
        if self.mul[0] != list(range(n)) or [row[0] for row in self.mul] != list(range(n)):
            raise GroupError("element 0 is not the identity")

    def _check_axioms(self, seed: int = 0) -> None:
        n = self.order
        t = self.table
        if n <= 64:
            left = t[t, :]                       # (a*b)*c  indexed [a, b, c]
            right = t[:, t]                      # a*(b*c)  indexed [a, b, c]
            ok = bool(np.array_equal(left, right))
        else:
            rng = np.random.default_rng(seed)
            m = 10 * n * n
            ok = True
            chunk = 1 << 22
            for lo in range(0, m, chunk):
                k = min(chunk, m - lo)
                a, b, c = (rng.integers(0, n, size=k) for _ in range(3))
                if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                    ok = False
                    break
        if not ok:
            raise GroupError("multiplication is not associative")

    # ------------------------------------------------------------- accessors
    @property
    def table(self) -> np.ndarray:
        if "table" not in self._cache:
            self._cache["table"] = np.asarray(self.mul, dtype=np.int32)
        return self._cache["table"]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def prod(self, *elts: int) -> int:
        x = 0
        for e in elts:
            x = self.mul[x][e]
        return x

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        x, base = 0, g
        while k:
            if k & 1:
                x = self.mul[x][base]
            base = self.mul[base][base]
            k >>= 1
        return x

    def conj(self, g: int, h: int) -> int:
        """``g^h = h^-1 g h``."""
        return self.mul[self.mul[self.inv[h]][g]][h]

    def commutator(self, g: int, h: int) -> int:
        """``[g, h] = g^-1 h^-1 g h``."""
        m, inv = self.mul, self.inv
        return m[m[m[inv[g]][inv[h]]][g]][h]

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    @property
    def element_orders(self) -> list[int]:
        if "orders" not in self._cache:
            out = [0] * self.order
            for g in range(self.order):
                k, x = 1, g
                while x != 0:
                    x = self.mul[x][g]
                    k += 1
                out[g] = k
            self._cache["orders"] = out
        return self._cache["orders"]

    @property
    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            t = self.table
            self._cache["abelian"] = bool(np.array_equal(t, t.T))
        return self._cache["abelian"]

    # --------------------------------------------------------- constructors
    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], op: Callable, name: str = "",
                      labels: Sequence[str] | None = None, check: bool = True) -> "FiniteGroup":
        """Tabulate a group given its elements (identity first) and product."""
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise GroupError("duplicate elements")
        try:
            mul = [[index[op(a, b)] for b in elements] for a in elements]
        except KeyError as exc:
            raise GroupError(f"product leaves the element set: {exc}") from None
        return cls(mul, labels=labels, name=name, check=check)

    def relabeled(self, order: Sequence[int], name: str | None = None) -> "FiniteGroup":
        """Renumber so that new element ``i`` is old element ``order[i]``."""
        if order[0] != 0:
            raise GroupError("identity must stay at index 0")
        pos = {g: i for i, g in enumerate(order)}
        mul = [[pos[self.mul[a][b]] for b in order] for a in order]
        return FiniteGroup(mul, [self.labels[g] for g in order],
                           name=self.name if name is None else name, check=False)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup recorded as a bitmask over the parent's elements."""

    parent: FiniteGroup = field(repr=False, compare=False)
    members: int

    @classmethod
    def from_elements(cls, G: FiniteGroup, elts: Iterable[int]) -> "Subgroup":
        m = 0
        for e in elts:
            m |= 1 << e
        return cls(G, m)

    @property
    def order(self) -> int:
        return self.members.bit_count()

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: int) -> bool:
        return bool(self.members >> g & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.members & ~other.members == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.members != other.members

    def elements(self) -> list[int]:
        return bits(self.members)

    def is_valid(self) -> bool:
        G, els = self.parent, self.elements()
        if not self.members & 1:
            return False
        return all(G.mul[a][b] in self for a in els for b in els) and all(G.inv[a] in self for a in els)

    def right_coset(self, r: int) -> list[int]:
        """``N r`` as a list (ordered like the subgroup's elements)."""
        row = [self.parent.mul[n][r] for n in self.elements()]
        return row

    def left_coset(self, r: int) -> list[int]:
        return [self.parent.mul[r][n] for n in self.elements()]

    def as_group(self, name: str = "") -> tuple[FiniteGroup, list[int]]:
        """Return ``(H, emb)`` with ``emb[i]`` the parent element for ``H``'s element ``i``."""
        els = self.elements()
        pos = {g: i for i, g in enumerate(els)}
        mul = [[pos[self.parent.mul[a][b]] for b in els] for a in els]
        H = FiniteGroup(mul, [self.parent.labels[g] for g in els], name=name, check=False)
        return H, els


@dataclass(frozen=True)
class GroupHom:
    """A map between groups given element by element."""

    source: FiniteGroup = field(repr=False, compare=False)
    target: FiniteGroup = field(repr=False, compare=False)
    image: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.image[g]

    def is_homomorphism(self) -> bool:
        S, T, im = self.source, self.target, self.image
        if len(im) != S.order:
            return False
        return all(im[S.mul[a][b]] == T.mul[im[a]][im[b]] for a in range(S.order) for b in range(S.order))

    def is_bijective(self) -> bool:
        return len(set(self.image)) == self.target.order == self.source.order

    def kernel(self) -> Subgroup:
        return Subgroup.from_elements(self.source, (g for g, x in enumerate(self.image) if x == 0))

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target.order


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out

