"""Compare the compiled refinement kernel with the pure-Python fallback.

Two measurements per backend:
  * equitable refinement of the two-part partition of a few Haar graphs;
  * the full bipartition-preserving automorphism group of the same graphs,
    run in a child process so the backend is chosen at import time.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time

from haarrep.aut import _refine_py
from haarrep.aut.graph import Graph
from haarrep.constructors import cyclic_connection
from haarrep.groups import catalog
from haarrep.groups.named import cyclic, dihedral
from haarrep.haar import build_haar

try:
    from haarrep.aut import _refine as _refine_c
except ImportError:
    _refine_c = None


def cases():
    C40 = cyclic(40)
    D60 = dihedral(60)
    yield "C40 cyclic set", C40, cyclic_connection(C40, 1)
    yield "D60 window set", D60, [0, 1, 2, 3, 5, 7, 11, 13]
    G = catalog.get("C13:3C3")
    yield "C13:3C3 first half", G, list(range(G.order // 2))


def _arrays(mod, H):
    g = Graph.from_haar(H)
    off = [0]
    flat = []
    for v in range(g.nv):
        flat.extend(g.nbrs[v])
        off.append(len(flat))
    return mod.graph_arrays(off, flat)


def time_refine(mod, H, repeat):
    k_off, k_adj = _arrays(mod, H)
    n = H.n
    cells = [list(range(n)), list(range(n, 2 * n))]
    start = time.perf_counter()
    for _ in range(repeat):
        # one root-to-leaf path: refine, then individualize and refine until discrete
        st = mod.PartitionState(2 * n, cells)
        st.refine(k_off, k_adj, st.cell_starts())
        while not st.is_discrete():
            s = st.individualize(st.cell(st.target_cell())[0])
            st.refine(k_off, k_adj, [s])
    return (time.perf_counter() - start) / repeat


CHILD = """
import json, sys, time
from haarrep.aut import aut0
from haarrep.aut.kernels import BACKEND
from haarrep.haar import build_haar
sys.path.insert(0, {here!r})
from bench_kernels import cases
out = {{"backend": BACKEND}}
for name, G, S in cases():
    H = build_haar(G, S)
    t = time.perf_counter()
    order = aut0(H).order
    out[name] = [time.perf_counter() - t, order]
print(json.dumps(out))
"""


def time_full(kernel):
    env = dict(os.environ, HAARREP_KERNEL=kernel)
    code = CHILD.format(here=os.path.dirname(os.path.abspath(__file__)))
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if _refine_c is None:
        print("compiled kernel not built; only the Python fallback is timed")
    print(f"{'case':24} {'refine py (ms)':>15} {'refine c (ms)':>14} {'speedup':>8}")
    for name, G, S in cases():
        H = build_haar(G, S)
        tp = time_refine(_refine_py, H, args.repeat) * 1e3
        if _refine_c is not None:
            tc = time_refine(_refine_c, H, args.repeat) * 1e3
            print(f"{name:24} {tp:15.3f} {tc:14.3f} {tp / tc:8.1f}")
        else:
            print(f"{name:24} {tp:15.3f} {'-':>14} {'-':>8}")
    full = {k: time_full(k) for k in ("python", "auto")}
    print(f"\n{'case':24} {'aut0 py (s)':>12} {'aut0 ' + full['auto']['backend'] + ' (s)':>16} {'order':>6}")
    for name, _, _ in cases():
        (tp, op), (tc, oc) = full["python"][name], full["auto"][name]
        if op != oc:
            raise SystemExit(f"backends disagree on {name}: {op} vs {oc}")
        print(f"{name:24} {tp:12.3f} {tc:16.3f} {oc:6d}")


if __name__ == "__main__":
    main()
