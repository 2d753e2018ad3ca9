import pytest

from haarrep.aut import aut0, is_hgr
from haarrep.constructors import (DIHEDRAL_2P, ORDER_8, ConstructionError, abelian_index2_connection,
                                  check_moura_data, cyclic_connection, find_generating_pair_high_order,
                                  lift_cyclic_quotient, lift_simple_quotient, moura_data, twogen_connection)
from haarrep.groups import catalog
from haarrep.groups.core import Subgroup
from haarrep.groups.named import cyclic, dihedral, direct_product
from haarrep.driver import _simple_choice
from haarrep.groups.structure import center, closure, dihedral_data, quotient
from haarrep.haar import ConnectionSet, build_haar


def reason(exc_info):
    return exc_info.value.reason


# ------------------------------------------------------------------ cyclic
def test_cyclic_connection_c12():
    G = cyclic(12)
    S = cyclic_connection(G, 1)
    assert len(S) == 8 and S.elements() == [0, 1, 2, 3, 4, 5, 6, 8]
    assert aut0(build_haar(G, S)).order == 12


def test_cyclic_connection_window_from_22():
    G = cyclic(22)
    S = cyclic_connection(G, 1)
    assert S.in_window() and 2 * 8 <= 22 - 6
    assert not cyclic_connection(cyclic(20), 1).in_window()


def test_cyclic_connection_order_too_small():
    with pytest.raises(ConstructionError) as e:
        cyclic_connection(cyclic(11), 1)
    assert reason(e) == "order-too-small"


# ----------------------------------------------------------------- twogen
def test_twogen_c13_3c3():
    G = catalog.get("C13:3C3")
    pair = find_generating_pair_high_order(G, 12)
    assert G.element_order(pair.s) == 13 and G.element_order(pair.t) == 3 and not pair.inverting
    S = twogen_connection(G, pair.s, pair.t, 1)
    assert len(S) == 10
    assert is_hgr(G, S).is_hgr


def test_twogen_dihedral_s2():
    G = dihedral(28)
    pair = find_generating_pair_high_order(G, 12)
    assert pair.inverting and G.element_order(pair.s) == 14
    S = twogen_connection(G, pair.s, pair.t, 2)
    assert len(S) == 11 and S.in_window()
    assert is_hgr(G, S).is_hgr


def test_twogen_errors():
    G = dihedral(24)
    s, t = dihedral_data(G)
    with pytest.raises(ConstructionError) as e:
        twogen_connection(G, s, t, 1)
    assert reason(e) == "inverting"
    C = cyclic(24)
    with pytest.raises(ConstructionError) as e:
        twogen_connection(C, 1, 2, 1)
    assert reason(e) == "commuting"
    with pytest.raises(ConstructionError) as e:
        twogen_connection(G, s, G.power(s, 2), 1)
    assert reason(e) == "not-generating"
    with pytest.raises(ConstructionError) as e:
        twogen_connection(dihedral(20), *dihedral_data(dihedral(20)))
    assert reason(e) == "order-too-small"
    H = catalog.get("C13:3C3")
    pair = find_generating_pair_high_order(H, 12)
    with pytest.raises(ConstructionError) as e:
        twogen_connection(H, pair.s, pair.t, 2)
    assert reason(e) == "not-dihedral"


def test_find_generating_pair():
    assert find_generating_pair_high_order(catalog.get("Alt(4)"), 12) is None
    assert find_generating_pair_high_order(cyclic(30), 12) is None
    G = dihedral(28)
    p = find_generating_pair_high_order(G, 12)
    assert G.conj(p.s, p.t) == G.inv[p.s]


# ------------------------------------------------------------ cyclic lifts
def _c22_inside(G, gen):
    N = closure(G, [gen])
    assert N.order == 22
    return N, cyclic_connection(G, gen)


def test_lift_cyclic_variant1_c66():
    G = cyclic(66)
    N, S_N = _c22_inside(G, 3)
    S = lift_cyclic_quotient(G, N, S_N, 1, 1)
    assert len(S) == len(S_N) + N.order - 1 == 29
    assert S.in_window()
    assert aut0(build_haar(G, S)).order == 66


def test_lift_cyclic_variant2_c44():
    G = cyclic(44)
    N, S_N = _c22_inside(G, 2)
    S = lift_cyclic_quotient(G, N, S_N, 1, 2)
    assert len(S) == G.order - len(S_N) - N.order + 1 == 15
    assert S.in_window()
    assert aut0(build_haar(G, S)).order == 44


def test_lift_cyclic_errors():
    G = cyclic(66)
    N, S_N = _c22_inside(G, 3)
    with pytest.raises(ConstructionError) as e:
        lift_cyclic_quotient(G, N, S_N.elements()[:3], 1, 1)
    assert reason(e) == "window"
    with pytest.raises(ConstructionError) as e:
        lift_cyclic_quotient(G, N, S_N, 3, 1)
    assert reason(e) == "r-in-N"
    with pytest.raises(ConstructionError) as e:
        lift_cyclic_quotient(G, N, S_N, 1, 2)
    assert reason(e) == "window"
    # a windowed set that is not bipartition-rigid
    with pytest.raises(ConstructionError) as e:
        lift_cyclic_quotient(G, N, [0, 3, 6, 9, 12, 15, 18, 21], 1, 1)
    assert reason(e) == "not-rigid"
    with pytest.raises(ConstructionError) as e:
        lift_cyclic_quotient(G, Subgroup(G, 0b101), S_N, 1, 1)
    assert reason(e) == "not-subgroup"
    D = dihedral(44)
    s, t = dihedral_data(D)
    H = closure(D, [t, D.power(s, 2)])
    with pytest.raises(ConstructionError):
        lift_cyclic_quotient(D, H, [0, 1, 2, 3], s, 2)


# ----------------------------------------------------------- simple lifts
@pytest.fixture(scope="module")
def c22_a5():
    return catalog.get("C22xAlt(5)")


def test_lift_simple_errors():
    C14A5 = direct_product(cyclic(14), catalog.get("Alt(5)"))
    N14 = center(C14A5)
    assert N14.order == 14
    # the window for |N| = 14 allows only |S_N| = 4, so an 8-element base is refused
    with pytest.raises(ConstructionError) as e:
        lift_simple_quotient(C14A5, N14, N14.elements()[:8], 1, 2, N14.elements()[1], check_rigid=False)
    assert reason(e) == "window"
    C66 = cyclic(66)
    N, S_N = _c22_inside(C66, 3)
    with pytest.raises(ConstructionError) as e:
        lift_simple_quotient(C66, N, S_N, 1, 1, 3)
    assert reason(e) == "not-simple-quotient"


def test_simple_lift_size_formula(c22_a5):
    G = c22_a5
    N = center(G)
    Q, proj = quotient(G, N)
    gen = next(g for g in N.elements() if G.element_order(g) == 22)
    S_N = cyclic_connection(G, gen)
    r1, r2, n1 = _simple_choice(G, N, proj, Q)
    S = lift_simple_quotient(G, N, S_N, r1, r2, n1)
    assert len(S) == len(S_N) + 2 * N.order - 1 == 51
    assert S.in_window()
    with pytest.raises(ConstructionError) as e:
        lift_simple_quotient(G, N, S_N, r1, r2, 0)
    assert reason(e) == "bad-n1"
    low = next(g for g in range(G.order) if Q.element_orders[proj(g)] == 3)
    with pytest.raises(ConstructionError) as e:
        lift_simple_quotient(G, N, S_N, r1, low, n1)
    assert reason(e) in ("quotient-order", "not-generating")


# ---------------------------------------------------------- index 2 abelian
def test_moura_data_exceptions():
    D8 = catalog.get("D8")
    s, t = dihedral_data(D8)
    assert moura_data(D8, closure(D8, [s]), t).tag == ORDER_8
    Q8 = catalog.get("Q8")
    i = next(g for g in range(8) if Q8.element_order(g) == 4)
    j = next(g for g in range(8) if Q8.element_order(g) == 4 and g not in closure(Q8, [i]))
    assert moura_data(Q8, closure(Q8, [i]), j).tag == ORDER_8
    D22 = catalog.get("D22")
    s, t = dihedral_data(D22)
    md = moura_data(D22, closure(D22, [s]), t)
    assert md.tag == DIHEDRAL_2P and md.exceptional


def test_moura_data_d24():
    G = dihedral(24)
    s, t = dihedral_data(G)
    N = closure(G, [s])
    md = moura_data(G, N, t)
    assert not md.exceptional
    assert md.N1.members == closure(G, [G.power(s, 2)]).members
    assert md.n2 in N and md.n2 not in md.N1
    assert md.n1 in md.N1 and md.n1 != 0
    assert closure(G, md.N1.elements() + [md.n2]).members == N.members
    c = G.prod(t, md.n2, G.inv[t], G.inv[md.n2])
    assert c not in (0, md.n1)
    assert check_moura_data(G, N, t, md)


def test_abelian_index2_order88():
    G = catalog.get("C44:21C2")
    x = next(g for g in range(G.order) if G.element_order(g) == 44)
    N = closure(G, [x])
    r = next(g for g in range(G.order) if g not in N and G.element_order(g) == 2)
    md = moura_data(G, N, r)
    assert not md.exceptional and md.N1.order == 22
    S_N1 = cyclic_connection(G, next(g for g in md.N1.elements() if G.element_order(g) == 22))
    S = abelian_index2_connection(G, N, md.N1, md.n1, md.n2, r, S_N1)
    assert len(S) == len(S_N1) + md.N1.order + 2 == 32
    assert S.in_window()
    assert is_hgr(G, S).is_hgr


def test_abelian_index2_errors():
    Q8 = catalog.get("Q8")
    i = next(g for g in range(8) if Q8.element_order(g) == 4)
    j = next(g for g in range(8) if Q8.element_order(g) == 4 and g not in closure(Q8, [i]))
    N = closure(Q8, [i])
    with pytest.raises(ConstructionError) as e:
        abelian_index2_connection(Q8, N, closure(Q8, [Q8.power(i, 2)]), Q8.power(i, 2), i, j, [0])
    assert reason(e) == "excluded-group"
    G = catalog.get("C44:21C2")
    x = next(g for g in range(G.order) if G.element_order(g) == 44)
    N = closure(G, [x])
    r = next(g for g in range(G.order) if g not in N)
    md = moura_data(G, N, r)
    with pytest.raises(ConstructionError) as e:
        abelian_index2_connection(G, N, md.N1, md.n1, md.n2, r, md.N1.elements()[:3])
    assert reason(e) == "window"
    with pytest.raises(ConstructionError) as e:
        abelian_index2_connection(G, N, md.N1, 0, md.n2, r, md.N1.elements()[:8])
    assert reason(e) == "moura-invariant"
    with pytest.raises(ConstructionError) as e:
        moura_data(cyclic(12), closure(cyclic(12), [2]), 1)
    assert reason(e) == "abelian"
