import json

import pytest

from haarrep.aut import aut_full
from haarrep.constructors import cyclic_connection, lift_cyclic_quotient
from haarrep.driver import (METHODS, ConstructionUnknown, HgrCertificate, certify, construct_hgr, random_search,
                            rigid_windowed, verify_certificate, windowed_search)
from haarrep.groups import catalog
from haarrep.groups.named import cyclic, dihedral
from haarrep.groups.structure import closure
from haarrep.haar import build_haar

CERT_KEYS = {"group", "order", "connection_set", "aut_order", "aut0_order", "is_hgr", "method", "window",
             "verified"}


def test_certificate_json_round_trip():
    G = catalog.get("D16")
    cert = construct_hgr(G)
    d = json.loads(cert.to_json())
    assert set(d) == CERT_KEYS
    back = HgrCertificate.from_json(cert.to_json())
    assert back == cert
    assert verify_certificate(back)


def test_tampered_certificates_fail_verification():
    G = catalog.get("D16")
    cert = construct_hgr(G)
    d = json.loads(cert.to_json())
    for key, val in [("aut_order", 32), ("aut0_order", 8), ("is_hgr", False), ("window", True)]:
        bad = HgrCertificate.from_json(json.dumps(dict(d, **{key: val})))
        assert not verify_certificate(bad, G)
    bad = HgrCertificate.from_json(json.dumps(dict(d, connection_set=[0, 1])))
    assert not verify_certificate(bad, G)


def test_d6_is_exhaustively_exceptional():
    cert = construct_hgr(catalog.get("D6"))
    assert cert.method == "exceptional" and not cert.is_hgr and cert.verified


def test_c22_uses_the_cyclic_set():
    cert = construct_hgr(catalog.get("C22"))
    assert cert.method == "cyclic" and cert.aut_order == 44 and cert.aut0_order == 22 and cert.window


def test_order88_group():
    cert = construct_hgr(catalog.get("C44:21C2"))
    assert cert.method in ("abelian-index2", "twogen-S1", "twogen-S2")
    assert cert.is_hgr and cert.aut_order == 88 and cert.verified


def test_trivial_groups():
    for name in ("C1", "C2"):
        cert = construct_hgr(catalog.get(name))
        assert cert.method == "trivial"


def test_construct_is_deterministic():
    for name in ("D16", "C14", "Q8xC2", "Sym(4)"):
        G = catalog.get(name)
        assert construct_hgr(G).to_json() == construct_hgr(G).to_json()


def test_method_tags_and_window_flag():
    G = cyclic(12)
    cert = certify(G, cyclic_connection(G, 1), "cyclic")
    assert not cert.window and cert.rigid
    with pytest.raises(ValueError):
        certify(G, [0, 1], "magic")
    assert "lift-simple" in METHODS and "trivial" in METHODS


def test_window_consistency_on_driver_output():
    for name in catalog.names(min_order=14, max_order=48):
        cert = construct_hgr(catalog.get(name))
        n = cert.order
        assert cert.window == (4 <= len(cert.connection_set) and 2 * len(cert.connection_set) <= n - 6)
        if cert.method in ("lift-cyclic-S1", "lift-cyclic-S2", "lift-simple", "abelian-index2") or (
                cert.method == "cyclic" and n >= 22):
            assert cert.window


@pytest.mark.parametrize("order,sub_gen,variant", [(66, 3, 1), (44, 2, 2)])
def test_part_swaps_of_cyclic_lifts(order, sub_gen, variant):
    """Every automorphism sending (1,-1) to (1,1) sends (r,1) to (r^-1,-1)."""
    G = cyclic(order)
    N = closure(G, [sub_gen])
    r = 1
    S = lift_cyclic_quotient(G, N, cyclic_connection(G, sub_gen), r, variant)
    H = build_haar(G, S)
    A = aut_full(H)
    n = G.order
    swaps = list(A.chain.coset_elements(0, n))
    assert swaps and A.order == 2 * n
    for g in swaps:
        assert g[n + r] == G.inv[r]
        assert all((g[x] - n if g[x] >= n else g[x]) in N for x in N.elements())


def test_random_search_is_reproducible():
    G = catalog.get("C14")
    a = random_search(G, "rigid", 500, seed=3)
    b = random_search(G, "rigid", 500, seed=3)
    assert a == b and a is not None


def test_exhausted_search_is_unknown_not_exceptional():
    with pytest.raises(ConstructionUnknown):
        construct_hgr(catalog.get("D16"), samples=0)


def test_rigid_windowed():
    G = catalog.get("C14")
    S, how = rigid_windowed(G)
    assert S.in_window()
    assert certify(G, S, "search").rigid
    assert rigid_windowed(catalog.get("C13")) is None
    assert rigid_windowed(catalog.get("C2^4")) is None
    hit = windowed_search(catalog.get("D16"))
    assert hit is not None


def test_verify_certificate_rejects_order_mismatch():
    cert = construct_hgr(catalog.get("C14"))
    d = json.loads(cert.to_json())
    bad = HgrCertificate.from_json(json.dumps(dict(d, order=15)))
    assert not verify_certificate(bad, catalog.get("C14"))
