import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import bfs_connected
from haarrep.aut import aut0
from haarrep.constructors import cyclic_connection
from haarrep.groups import catalog
from haarrep.groups.core import GroupError, Subgroup
from haarrep.groups.iso import automorphisms
from haarrep.groups.named import cyclic, dihedral
from haarrep.groups.structure import closure, dihedral_data
from haarrep.haar import (ConnectionSet, bipartite_complement, build_haar, compose, graph_to_json,
                          induced_coset_subgraph, iota, is_connected_connection, rho)

SMALL = catalog.names(max_order=16, min_order=1)


def random_set(rng, G):
    return ConnectionSet.from_elements(G, [g for g in range(G.order) if rng.random() < 0.5])


def test_full_and_empty():
    G = cyclic(5)
    K = build_haar(G, range(5))
    assert K.edge_count == 25
    E = build_haar(G, [])
    assert E.edge_count == 0 and E.nv == 10


def test_c4_01_is_the_8_cycle():
    H = build_haar(cyclic(4), [0, 1])
    assert all(len(H.neighbors(v)) == 2 for v in range(8))
    # walk the cycle
    seen, prev, cur = [0], None, 0
    while True:
        nxt = [w for w in H.neighbors(cur) if w != prev][0]
        if nxt == 0:
            break
        seen.append(nxt)
        prev, cur = cur, nxt
    assert len(seen) == 8


def test_edge_rule_and_degrees():
    G = catalog.get("D12")
    rng = random.Random(1)
    for _ in range(20):
        S = random_set(rng, G)
        H = build_haar(G, S)
        n = G.order
        for g in range(n):
            for h in range(n):
                assert H.has_edge(g, n + h) == (G.mul[h][G.inv[g]] in S)
            assert len(H.neighbors(g)) == len(S) == len(H.neighbors(n + g))
        assert H.edge_count == n * len(S)
        assert all(u < n <= v for u, v in H.edges())


def test_mismatched_parent_rejected():
    G, K = cyclic(6), cyclic(6)
    with pytest.raises(GroupError):
        build_haar(G, ConnectionSet(K, 3))
    with pytest.raises(GroupError):
        ConnectionSet.from_elements(G, [6])


def test_connectivity_examples():
    C6 = cyclic(6)
    assert not is_connected_connection(C6, ConnectionSet.from_elements(C6, [0]))
    assert not is_connected_connection(C6, ConnectionSet(C6, 0))
    C12 = cyclic(12)
    assert is_connected_connection(C12, cyclic_connection(C12, 1))
    D6 = catalog.get("D6")
    _, t = dihedral_data(D6)
    assert not is_connected_connection(D6, ConnectionSet.from_elements(D6, [0, t]))


def test_connectivity_matches_bfs_on_500_random_pairs():
    rng = random.Random(7)
    for k in range(500):
        G = catalog.get(rng.choice(SMALL))
        S = random_set(rng, G) if rng.random() < 0.6 else ConnectionSet.from_elements(
            G, rng.sample(range(G.order), min(G.order, rng.randint(0, 3))))
        H = build_haar(G, S)
        expect = bfs_connected(H.nv, H.edges()) if len(S) else False
        assert is_connected_connection(G, S) == expect == (H.is_connected() if len(S) else False)


def test_bipartite_complement():
    G = cyclic(12)
    S = ConnectionSet.from_elements(G, range(8))
    assert len(bipartite_complement(G, S)) == 4
    assert bipartite_complement(G, ConnectionSet(G, 0)).members == (1 << 12) - 1
    assert bipartite_complement(G, ConnectionSet(G, (1 << 12) - 1)).members == 0


def test_rho_homomorphism_and_invariance():
    G = dihedral(24)
    n = G.order
    assert rho(G, 0) == tuple(range(2 * n))
    rng = random.Random(3)
    for _ in range(100):
        g, h = rng.randrange(n), rng.randrange(n)
        assert compose(rho(G, g), rho(G, h)) == rho(G, G.mul[g][h])
    H = build_haar(G, random_set(rng, G))
    edges = H.edges()
    for g in rng.sample(range(n), 20):
        p = rho(G, g)
        for u, v in rng.sample(edges, min(100, len(edges))):
            assert H.has_edge(p[u], p[v])
        assert H.is_automorphism(p)


def test_iota_on_abelian_graphs():
    G = cyclic(12)
    H = build_haar(G, cyclic_connection(G, 1))
    assert H.is_automorphism(iota(G))
    rng = random.Random(5)
    A = catalog.get("C6xC2")
    for _ in range(20):
        assert build_haar(A, random_set(rng, A)).is_automorphism(iota(A))


def _is_isomorphism(H1, H2, phi):
    return sorted(phi) == list(range(H1.nv)) and all(H2.has_edge(phi[u], phi[v]) for u, v in H1.edges()) \
        and H1.edge_count == H2.edge_count


def test_translation_and_automorphism_equivalence():
    rng = random.Random(11)
    names = [nm for nm in catalog.names(max_order=12, min_order=3)]
    for _ in range(100):
        G = catalog.get(rng.choice(names))
        n = G.order
        S = random_set(rng, G)
        g, h = rng.randrange(n), rng.randrange(n)
        T = ConnectionSet.from_elements(G, (G.prod(g, s, h) for s in S))
        phi = [G.mul[G.inv[h]][x] for x in range(n)] + [n + G.mul[g][y] for y in range(n)]
        assert _is_isomorphism(build_haar(G, S), build_haar(G, T), phi)
        autos = list(automorphisms(G))
        a = rng.choice(autos)
        U = ConnectionSet.from_elements(G, (a[s] for s in S))
        psi = [a[x] for x in range(n)] + [n + a[y] for y in range(n)]
        assert _is_isomorphism(build_haar(G, S), build_haar(G, U), psi)


@pytest.mark.parametrize("name", ["C6", "D8", "Q8", "C3^2", "D10"])
def test_complement_shares_aut0(name):
    G = catalog.get(name)
    rng = random.Random(len(name))
    for _ in range(30):
        S = random_set(rng, G)
        assert aut0(build_haar(G, S)).order == aut0(build_haar(G, S.complement())).order


def test_induced_coset_subgraph():
    G = cyclic(6)
    H = build_haar(G, [0, 1, 3])
    full = induced_coset_subgraph(H, Subgroup(G, (1 << 6) - 1))
    assert full.adj == H.adj
    triv = induced_coset_subgraph(H, Subgroup(G, 1), 4)
    assert triv.nv == 2 and triv.edge_count == 1
    G66 = cyclic(66)
    N = closure(G66, [3])
    emb = N.elements()
    S_N = cyclic_connection(G66, 3)
    H66 = build_haar(G66, S_N.elements() + [g for g in range(66) if g % 3 == 1 and g != 1])
    sub = induced_coset_subgraph(H66, N)
    H22, emb22 = N.as_group()
    pos = {g: i for i, g in enumerate(emb22)}
    direct = build_haar(H22, [pos[s] for s in S_N.elements()])
    assert sub.adj == direct.adj and len(emb) == 22
    for r in (1, 2):
        assert induced_coset_subgraph(H66, N, r).adj == direct.adj
    with pytest.raises(GroupError):
        induced_coset_subgraph(H, Subgroup(G, 0b11))


def test_json_and_dot_export():
    G = cyclic(4)
    H = build_haar(G, [0, 1])
    d = json.loads(graph_to_json(H))
    assert d["n"] == 4 and d["S"] == [0, 1] and len(d["edges"]) == 8
    dot = H.to_dot()
    assert dot.count("rank=same") == 2 and dot.count(" -- ") == 8


@given(st.sampled_from(["C5", "D6", "C8", "Q8", "D10", "C12", "Alt(4)"]), st.integers(0, 2 ** 12 - 1))
def test_degree_regularity_property(name, bitsrc):
    G = catalog.get(name)
    S = ConnectionSet(G, bitsrc & ((1 << G.order) - 1))
    H = build_haar(G, S)
    assert all(len(H.neighbors(v)) == len(S) for v in range(H.nv))
