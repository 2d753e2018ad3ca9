import os
import random
import subprocess
import sys

import pytest

from oracles import naive_aut_order
from haarrep.aut import (BudgetExceeded, Graph, PermGroupDescriptor, _refine_py, aut0, aut_full,
                         automorphism_group, find_regular_subgroup, induced_group_automorphism, is_hgr,
                         perm_compose, point_stabilizer, refine)
from haarrep.classify import enumerate_connection_classes
from haarrep.constructors import cyclic_connection
from haarrep.groups import catalog
from haarrep.groups.named import cyclic
from haarrep.haar import ConnectionSet, build_haar, compose, iota, is_connected_connection, rho

try:
    from haarrep.aut import _refine as _refine_c
except ImportError:  # pragma: no cover - fallback-only installs
    _refine_c = None


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def knn(n):
    return Graph.from_edges(2 * n, [(i, n + j) for i in range(n) for j in range(n)])


def c12_cyclic():
    G = cyclic(12)
    return G, build_haar(G, cyclic_connection(G, 1))


# ------------------------------------------------------------------ refine
def test_refine_examples():
    assert refine(cycle(6), [list(range(6))]) == [list(range(6))]
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    cells = refine(path, [[0, 1, 2]])
    assert sorted(map(sorted, cells)) == [[0, 2], [1]]
    G, H = c12_cyclic()
    assert len(refine(H, [list(range(12)), list(range(12, 24))])) == 2


def _random_graph(rng, nv, p):
    return Graph.from_edges(nv, [(u, v) for u in range(nv) for v in range(u + 1, nv) if rng.random() < p])


def _first_path(mod, g, cells):
    k_off, k_adj = mod.graph_arrays(g.off, g.adj)
    st = mod.PartitionState(g.nv, cells)
    trace = [st.refine(k_off, k_adj, st.cell_starts())]
    while not st.is_discrete():
        s = st.individualize(st.cell(st.target_cell())[0])
        trace.append(st.refine(k_off, k_adj, [s]))
    return st.leaf(), trace


@pytest.mark.skipif(_refine_c is None, reason="compiled kernel not built")
def test_compiled_and_python_kernels_agree():
    rng = random.Random(2)
    for _ in range(60):
        nv = rng.randint(2, 30)
        g = _random_graph(rng, nv, rng.choice([0.1, 0.3, 0.5]))
        k = rng.randint(1, 3)
        cells = [[v for v in range(nv) if v % k == i] for i in range(k)]
        assert _first_path(_refine_py, g, cells) == _first_path(_refine_c, g, cells)
        perm = list(range(nv))
        rng.shuffle(perm)
        a = _refine_py.graph_arrays(g.off, g.adj)
        b = _refine_c.graph_arrays(g.off, g.adj)
        assert _refine_py.is_automorphism(*a, perm) == _refine_c.is_automorphism(*b, perm)


def test_python_backend_gives_same_generators():
    code = ("from haarrep.aut import aut_full, BACKEND; from haarrep.groups import catalog;"
            "from haarrep.haar import build_haar;"
            "G = catalog.get('D12'); P = aut_full(build_haar(G, [0, 1, 3, 6, 7, 9]));"
            "print(BACKEND, P.order, P.generators)")
    outs = []
    for kernel in ("python", "auto"):
        env = dict(os.environ, HAARREP_KERNEL=kernel)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.append(res.stdout.split(" ", 1))
    assert outs[0][0] == "python"
    assert outs[0][1] == outs[1][1]


# --------------------------------------------------------------- examples
def test_automorphism_group_examples():
    assert automorphism_group(knn(3)).order == 72
    assert automorphism_group(cycle(8)).order == 16
    _, H = c12_cyclic()
    assert aut_full(H).order == 24
    assert aut0(H).order == 12


def test_aut0_examples():
    G = cyclic(6)
    assert aut0(build_haar(G, [0])).order > 6
    rng = random.Random(4)
    for name in ("D10", "Q8", "C3^2", "Alt(4)"):
        G = catalog.get(name)
        S = [g for g in range(G.order) if rng.random() < 0.5]
        o = aut0(build_haar(G, S)).order
        assert o >= G.order and o % G.order == 0


def test_point_stabilizer_examples():
    P = automorphism_group(cycle(8))
    assert all(point_stabilizer(P, v).order == 2 for v in range(8))
    G, H = c12_cyclic()
    assert point_stabilizer(aut0(H), 0).order == 1
    R = PermGroupDescriptor.from_generators(24, [rho(G, 1)])
    assert all(point_stabilizer(R, v).order == 1 for v in range(24))
    with pytest.raises(ValueError):
        point_stabilizer(P, 8)


def test_regular_subgroup_examples():
    reg = find_regular_subgroup(automorphism_group(cycle(8)))
    assert reg is not None
    assert PermGroupDescriptor.from_generators(8, reg).order == 8
    assert find_regular_subgroup(automorphism_group(petersen())) is None
    for n in (2, 3, 4):
        P = automorphism_group(knn(n))
        reg = find_regular_subgroup(P)
        R = PermGroupDescriptor.from_generators(2 * n, reg)
        assert R.order == 2 * n and R.is_transitive()


def test_petersen_has_no_regular_subgroup_by_brute_force():
    # oracle: scan every subgroup generated by at most two elements of order dividing 10
    P = automorphism_group(petersen())
    assert P.order == 120
    elems = list(P.chain.elements())
    ident = tuple(range(10))
    for a in elems:
        for b in elems:
            grp = {ident}
            frontier = [ident]
            while frontier and len(grp) <= 10:
                x = frontier.pop()
                for g in (a, b):
                    y = perm_compose(x, g)
                    if y not in grp:
                        grp.add(y)
                        frontier.append(y)
            if len(grp) == 10:
                assert any(p[0] == 0 for p in grp if p != ident)


def test_is_hgr_examples():
    rng = random.Random(9)
    for name in ("C6xC2", "C3^2", "C8"):
        G = catalog.get(name)
        for _ in range(10):
            assert not is_hgr(G, [g for g in range(G.order) if rng.random() < 0.5]).is_hgr
    D6 = catalog.get("D6")
    assert not any(is_hgr(D6, [g for g in range(6) if m >> g & 1]).is_hgr for m in range(64))
    G, _ = c12_cyclic()
    chk = is_hgr(G, cyclic_connection(G, 1))
    assert not chk.is_hgr and chk.aut0_order == 12 and chk.aut_order == 24


def test_budget_is_explicit_failure():
    with pytest.raises(BudgetExceeded):
        automorphism_group(Graph.from_edges(12, []), budget=3)


def test_induced_group_automorphism():
    G, H = c12_cyclic()
    hom, x = induced_group_automorphism(H, iota(G))
    assert [hom(r) for r in range(12)] == G.inv and x == 0
    # iota followed by a translation, renormalised to send (1,-1) to (1,1)
    rng = random.Random(1)
    for _ in range(5):
        g = rng.randrange(12)
        phi = compose(iota(G), rho(G, g))
        shift = G.inv[phi[0] - 12]
        phi = compose(phi, rho(G, shift))
        hom, x = induced_group_automorphism(H, phi)
        assert all(phi[r] == 12 + hom(r) for r in range(12))
    with pytest.raises(ValueError):
        induced_group_automorphism(build_haar(cyclic(12), [0, 2, 4, 6]), iota(G))


# ------------------------------------------------------------- soundness
def test_oracle_agreement_random_graphs():
    rng = random.Random(12345)
    for _ in range(200):
        nv = rng.randint(1, 10)
        p = rng.choice([0.2, 0.4, 0.6, 0.8])
        edges = [(u, v) for u in range(nv) for v in range(u + 1, nv) if rng.random() < p]
        assert automorphism_group(Graph.from_edges(nv, edges)).order == naive_aut_order(nv, edges)


def test_oracle_agreement_random_haar_graphs():
    rng = random.Random(54321)
    names = catalog.names(max_order=8, min_order=2)
    for _ in range(50):
        G = catalog.get(rng.choice(names))
        n = G.order
        S = [g for g in range(n) if rng.random() < 0.5]
        H = build_haar(G, S)
        edges = H.edges()
        assert aut_full(H).order == naive_aut_order(2 * n, edges)
        assert aut0(H).order == naive_aut_order(2 * n, edges, [0] * n + [1] * n)


def test_generators_preserve_edges_and_closure():
    rng = random.Random(8)
    for name in ("D12", "Q8", "C4xC2", "Alt(4)"):
        G = catalog.get(name)
        H = build_haar(G, [g for g in range(G.order) if rng.random() < 0.5])
        P = aut_full(H)
        assert all(H.is_automorphism(g) for g in P.generators)
        gens = P.generators
        for _ in range(10):
            if gens:
                assert P.contains(perm_compose(rng.choice(gens), rng.choice(gens)))
        from math import prod
        assert prod(P.orbit_sizes) == P.order


def test_translations_inside_aut0_inside_aut():
    rng = random.Random(21)
    for name in ("C6", "D8", "Q8", "D10", "Alt(4)", "Dic12"):
        G = catalog.get(name)
        for _ in range(8):
            S = ConnectionSet.from_elements(G, [g for g in range(G.order) if rng.random() < 0.5])
            H = build_haar(G, S)
            A0, A = aut0(H), aut_full(H)
            assert all(A0.contains(rho(G, g)) for g in range(G.order))
            assert all(A.contains(p) for p in A0.generators)
            if len(S) and is_connected_connection(G, S):
                assert A.order // A0.order in (1, 2) and A.order % A0.order == 0


def test_disconnected_graphs_have_large_aut0():
    """Whenever the graph or its bipartite complement is disconnected, Aut0 exceeds the translations."""
    checked = 0
    for name in catalog.names(max_order=10, min_order=3):
        G = catalog.get(name)
        for S in enumerate_connection_classes(G):
            if is_connected_connection(G, S) and is_connected_connection(G, S.complement()):
                continue
            assert aut0(build_haar(G, S)).order > G.order
            checked += 1
    assert checked > 50


def test_stabilizers_fixing_neighbourhoods_force_rigidity():
    """Connected graph, stabilizers of (1,-1) and (1,1) fix S x {1} and S^-1 x {-1}: then Aut0 = translations."""
    hits = 0
    for name in ("C7", "D8", "C3^2", "D10", "C12", "Alt(4)", "D12"):
        G = catalog.get(name)
        n = G.order
        for S in enumerate_connection_classes(G):
            if not is_connected_connection(G, S):
                continue
            A0 = aut0(build_haar(G, S))
            st_low, st_up = A0.point_stabilizer(0), A0.point_stabilizer(n)
            fix_up = all(g[n + s] == n + s for g in st_low.generators for s in S)
            fix_low = all(g[G.inv[s]] == G.inv[s] for g in st_up.generators for s in S)
            if fix_up and fix_low:
                hits += 1
                assert A0.order == n
    assert hits > 10


def test_determinism():
    G = catalog.get("Dic12")
    S = [0, 1, 3, 6, 7, 9]
    a = aut_full(build_haar(G, S))
    b = aut_full(build_haar(G, S))
    assert a.generators == b.generators and a.base == b.base
