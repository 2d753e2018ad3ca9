"""Constructors for the group families used throughout the package.

Dihedral groups are indexed by their order (``dihedral(12)`` has order 12).
"""

from __future__ import annotations

import itertools
import re
from math import gcd, prod
from typing import Sequence

from .core import FiniteGroup, GroupError

DEFAULT_CAP = 10_000


def _power_label(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else f"{sym}^{k}"


def _word(*parts: str) -> str:
    w = "".join(p for p in parts if p)
    return w or "1"


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise GroupError(f"relation check failed: {what}")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    G = FiniteGroup(mul, [_word(_power_label("s", k)) for k in range(n)], name=f"C{n}", check=False)
    _require(n == 1 or G.element_orders[1] == n, "s has full order")
    return G


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """``G x H`` with ``(g, h)`` stored at index ``g*|H| + h``."""
    m = H.order
    n = G.order * m
    gm, hm = G.mul, H.mul
    mul = [[gm[a // m][b // m] * m + hm[a % m][b % m] for b in range(n)] for a in range(n)]
    labels = []
    for g in range(G.order):
        for h in range(m):
            parts = [x for x in (G.labels[g], H.labels[h]) if x != "1"]
            labels.append(",".join(parts) if parts else "1")
    if name is None:
        name = f"{G.name}x{H.name}"
    return FiniteGroup(mul, labels, name=name, check=False)


def abelian(*orders: int) -> FiniteGroup:
    """Direct product of cyclic groups with the given orders."""
    if not orders:
        return cyclic(1)
    G = cyclic(orders[0])
    for k in orders[1:]:
        G = direct_product(G, cyclic(k))
    return G.relabeled(range(G.order), name=_abelian_name(orders))


def _abelian_name(orders: Sequence[int]) -> str:
    parts = []
    for k, grp in itertools.groupby(orders):
        e = len(list(grp))
        parts.append(f"C{k}" if e == 1 else f"C{k}^{e}")
    return "x".join(parts)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order.

    Index ``k`` is ``s^k`` and index ``m + k`` is ``s^k t`` where ``m = order/2``.
    """
    if order < 2 or order % 2:
        raise GroupError("dihedral order must be even and at least 2")
    m = order // 2

    def split(x):
        return (x % m, x // m)

    mul = []
    for x in range(order):
        a, e = split(x)
        row = []
        for y in range(order):
            b, f = split(y)
            c = (a + (b if e == 0 else -b)) % m
            row.append(c + m * ((e + f) % 2))
        mul.append(row)
    labels = [_word(_power_label("s", k % m), "t" if k >= m else "") for k in range(order)]
    G = FiniteGroup(mul, labels, name=f"D{order}", check=False)
    if m > 1:
        s, t = 1, m
        _require(G.element_orders[s] == m, "s^m = 1")
        _require(G.element_orders[t] == 2, "t^2 = 1")
        _require(G.conj(s, t) == G.inv[s], "s^t = s^-1")
    return G


def semidirect(m: int, l: int, k: int, name: str | None = None) -> FiniteGroup:
    """``<x, y | x^m = y^l = 1, y^-1 x y = x^k>``, elements ``x^a y^b`` at index ``a + m*b``."""
    if m < 1 or l < 1:
        raise GroupError("orders must be positive")
    k %= m
    if gcd(k, m) != 1 or pow(k, l, m) != 1 % m:
        raise GroupError(f"exponent {k} does not define an action of C{l} on C{m}")
    kinv = pow(k, -1, m) if m > 1 else 0
    # y^b x^a y^-b = x^(a * kinv^b)
    tw = [pow(kinv, b, m) if m > 1 else 0 for b in range(l)]
    n = m * l
    mul = []
    for x1 in range(n):
        a1, b1 = x1 % m, x1 // m
        row = []
        for x2 in range(n):
            a2, b2 = x2 % m, x2 // m
            row.append((a1 + a2 * tw[b1]) % m + m * ((b1 + b2) % l))
        mul.append(row)
    labels = [_word(_power_label("x", i % m), _power_label("y", i // m)) for i in range(n)]
    G = FiniteGroup(mul, labels, name=name or f"C{m}:{k}C{l}", check=False)
    if m > 1 and l > 1:
        x, y = 1, m
        _require(G.element_orders[x] == m and G.element_orders[y] == l, "generator orders")
        _require(G.conj(x, y) == G.power(x, k), "x^y = x^k")
    return G


def dicyclic(order: int) -> FiniteGroup:
    """``<x, y | x^(2m) = 1, x^m = y^2, y^-1 x y = x^-1>`` of order ``4m``.

    Elements ``x^a y^b`` (``0 <= a < 2m``, ``b in {0,1}``) at index ``a + 2m*b``.
    ``dicyclic(8)`` is the quaternion group.
    """
    if order < 4 or order % 4:
        raise GroupError("dicyclic order must be a multiple of 4")
    m2 = order // 2
    m = m2 // 2

    def mult(u, v):
        a1, b1 = u
        a2, b2 = v
        # y x^a = x^-a y, y^2 = x^m
        a = (a1 + (a2 if b1 == 0 else -a2)) % m2
        b = b1 + b2
        if b == 2:
            a, b = (a + m) % m2, 0
        return a, b

    elems = [(a, b) for b in range(2) for a in range(m2)]
    labels = [_word(_power_label("x", a), _power_label("y", b)) for a, b in elems]
    name = "Q8" if order == 8 else f"Dic{order}"
    G = FiniteGroup.from_elements(elems, mult, name=name, labels=labels, check=False)
    x, y = 1, m2
    _require(G.element_orders[x] == m2, "x^(2m) = 1")
    _require(G.power(x, m) == G.power(y, 2), "x^m = y^2")
    _require(G.conj(x, y) == G.inv[x], "x^y = x^-1")
    return G


def quaternion() -> FiniteGroup:
    return dicyclic(8)


def generalized_dihedral(A: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """``A : <x>`` with ``x`` of order 2 inverting the abelian group ``A``."""
    if not A.is_abelian:
        raise GroupError("generalized dihedral needs an abelian base")
    n = A.order
    elems = [(a, e) for e in range(2) for a in range(n)]

    def mult(u, v):
        a, e = u
        b, f = v
        return A.mul[a][b if e == 0 else A.inv[b]], (e + f) % 2

    labels = [_word("" if a == 0 else A.labels[a], "x" if e else "") for a, e in elems]
    G = FiniteGroup.from_elements(elems, mult, name=name or f"Dih({A.name})", labels=labels, check=False)
    x = n
    _require(G.element_orders[x] == 2, "x^2 = 1")
    _require(all(G.conj(a, x) == G.inv[a] for a in range(n)), "a^x = a^-1")
    return G


def order18_exceptional() -> FiniteGroup:
    """``<e1, e2, x | e1^3 = e2^3 = x^2 = [e1,e2] = 1, e1^x = e1^-1, e2^x = e2^-1>``."""
    A = abelian(3, 3)
    A.labels = [_word(_power_label("e1", i // 3), _power_label("e2", i % 3)) for i in range(9)]
    return generalized_dihedral(A, name="C3^2:C2")


# ---------------------------------------------------------------- permutations
def _compose(p: tuple, q: tuple) -> tuple:
    """Apply ``p`` then ``q`` (right action)."""
    return tuple(q[i] for i in p)


def group_from_generators(degree: int, gens: Sequence[Sequence[int]], cap: int = DEFAULT_CAP,
                          name: str = "") -> FiniteGroup:
    """Abstract group of the permutation closure of ``gens``.

    Permutations act on the right, so the product ``a*b`` means "apply ``a``
    then ``b``". Elements are numbered in breadth-first order from the
    identity.
    """
    ident = tuple(range(degree))
    perms = []
    for g in gens:
        g = tuple(g)
        if sorted(g) != list(ident):
            raise GroupError(f"not a permutation of 0..{degree - 1}: {g}")
        perms.append(g)
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in perms:
            y = _compose(x, g)
            if y not in index:
                if len(elems) >= cap:
                    raise GroupError(f"closure exceeds the cap of {cap} elements")
                index[y] = len(elems)
                elems.append(y)
        i += 1
    n = len(elems)
    mul = [[index[_compose(a, b)] for b in elems] for a in elems]
    labels = [_cycle_label(p) for p in elems]
    return FiniteGroup(mul, labels, name=name, check=n <= 64)


def _cycle_label(p: Sequence[int]) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def cycles_to_perm(degree: int, cycles: Sequence[Sequence[int]]) -> tuple[int, ...]:
    p = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            p[a] = b
    return tuple(p)


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("degree must be positive")
    if n < 3:
        return group_from_generators(n, [], name=f"Alt({n})")
    gens = [cycles_to_perm(n, [[0, 1, 2]])]
    if n > 3:
        # (0 1 2) with an n- or (n-1)-cycle of even sign generates Alt(n)
        long = list(range(n)) if n % 2 else list(range(1, n))
        gens.append(cycles_to_perm(n, [long]))
    G = group_from_generators(n, gens, name=f"Alt({n})")
    _require(G.order == prod(range(1, n + 1)) // 2, "order n!/2")
    return G


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("degree must be positive")
    gens = [] if n == 1 else [cycles_to_perm(n, [[0, 1]]), cycles_to_perm(n, [list(range(n))])]
    G = group_from_generators(n, gens, name=f"Sym({n})")
    _require(G.order == prod(range(1, n + 1)), "order n!")
    return G


# ------------------------------------------------------------------ descriptors
FAMILIES = {
    "cyclic": cyclic,
    "abelian": abelian,
    "dihedral": dihedral,
    "dicyclic": dicyclic,
    "quaternion": quaternion,
    "semidirect": semidirect,
    "alternating": alternating,
    "symmetric": symmetric,
    "order18": order18_exceptional,
}


def make_named(spec) -> FiniteGroup:
    """Build a group from a descriptor.

    ``spec`` is either a mapping ``{"family": ..., "params": [...]}`` (with
    optional ``"factors"``: a list of descriptors to multiply directly), or a
    short name such as ``"D12"``, ``"C4xC2"``, ``"C3^2"``, ``"Q8"``,
    ``"Dic12"``, ``"Alt(5)"``, ``"C13:3C3"`` or ``"Q8xC2"``.
    """
    if isinstance(spec, str):
        return parse_name(spec)
    if "factors" in spec:
        facs = [make_named(f) for f in spec["factors"]]
        if not facs:
            raise GroupError("empty factor list")
        G = facs[0]
        for H in facs[1:]:
            G = direct_product(G, H)
        if spec.get("name"):
            G.name = spec["name"]
        return G
    family = spec.get("family")
    if family not in FAMILIES:
        raise GroupError(f"unsupported family: {family!r}")
    try:
        G = FAMILIES[family](*spec.get("params", []))
    except TypeError as exc:
        raise GroupError(f"bad parameters for {family}: {exc}") from None
    if spec.get("name"):
        G.name = spec["name"]
    return G


_TOKEN = re.compile(r"""
    C(?P<cyc>\d+)(?:\^(?P<exp>\d+))?
  | D(?P<dih>\d+)
  | Q(?P<q>8)
  | Dic(?P<dic>\d+)
  | (?:Alt|A)\((?P<alt>\d+)\) | A(?P<alt2>\d+)
  | (?:Sym|S)\((?P<sym>\d+)\) | S(?P<sym2>\d+)
""", re.VERBOSE)


def _parse_factor(tok: str) -> FiniteGroup:
    m = re.fullmatch(r"C(\d+):(\d+)C(\d+)", tok)
    if m:
        a, k, b = map(int, m.groups())
        return semidirect(a, b, k, name=tok)
    if tok in ("C3^2:C2", "Dih(C3^2)"):
        return order18_exceptional()
    m = _TOKEN.fullmatch(tok)
    if not m:
        raise GroupError(f"cannot parse group name {tok!r}")
    g = m.groupdict()
    if g["cyc"]:
        k, e = int(g["cyc"]), int(g["exp"] or 1)
        return cyclic(k) if e == 1 else abelian(*([k] * e))
    if g["dih"]:
        return dihedral(int(g["dih"]))
    if g["q"]:
        return quaternion()
    if g["dic"]:
        return dicyclic(int(g["dic"]))
    if g["alt"] or g["alt2"]:
        return alternating(int(g["alt"] or g["alt2"]))
    return symmetric(int(g["sym"] or g["sym2"]))


def parse_name(name: str) -> FiniteGroup:
    """Parse a product of factors separated by ``x``."""
    toks = [t.strip() for t in re.split(r"x(?![^(]*\))", name) if t.strip()]
    if not toks:
        raise GroupError("empty group name")
    facs = [_parse_factor(t) for t in toks]
    if all(f.is_abelian and f.name.startswith("C") and ":" not in f.name for f in facs):
        orders = []
        for t in toks:
            m = re.fullmatch(r"C(\d+)(?:\^(\d+))?", t)
            orders += [int(m.group(1))] * int(m.group(2) or 1)
        G = abelian(*orders)
    else:
        G = facs[0]
        for H in facs[1:]:
            G = direct_product(G, H)
    G.name = name
    return G
