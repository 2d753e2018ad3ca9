"""Command-line entry point (``haarrep``).

Exit codes: 0 success or a positive answer, 1 a verified negative answer,
2 a computation that ran out of budget, 64 a usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .aut import BudgetExceeded, aut0, aut_full
from .classify import (NO, UNKNOWN, YES, classify_group, every_haar_is_cayley, reproduce_tables, rows_to_csv,
                       rows_to_json)
from .driver import ConstructionUnknown, HgrCertificate, _group_by_name, construct_hgr, verify_certificate
from .groups import catalog
from .groups.core import FiniteGroup, GroupError
from .groups.io import load_group
from .groups.structure import structure_queries
from .haar import ConnectionSet, build_haar, graph_to_json
from .poset import PosetError, haar_to_poset, lattice_bound_check, poset_representation_report

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64
CAYLEY_DEFAULT_MAX = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("HAAR_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"HAAR_BUDGET must be an integer, got {env!r}") from None
    return None


def _group(source: str) -> FiniteGroup:
    """Catalog name, family name such as ``D30``, or a group JSON file."""
    p = Path(source)
    if source.endswith(".json") or p.is_file():
        return load_group(p)
    try:
        return catalog.get(source)
    except GroupError:
        pass
    try:
        return _group_by_name(source)
    except (GroupError, ValueError) as exc:
        raise UsageError(f"unknown group {source!r}: {exc}") from None


def _parse_set(G: FiniteGroup, text: str) -> ConnectionSet:
    text = text.strip()
    if not text:
        return ConnectionSet(G, 0)
    try:
        elts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--set expects comma-separated element indices, got {text!r}") from None
    return ConnectionSet.from_elements(G, elts)


def _orders(text: str) -> tuple[int, int]:
    a, sep, b = text.partition("..")
    try:
        lo, hi = int(a), int(b if sep else a)
    except ValueError:
        raise UsageError(f"--orders expects a..b, got {text!r}") from None
    if lo > hi:
        raise UsageError("empty order range")
    return lo, hi


def _load_certificate(path: str) -> HgrCertificate:
    text = Path(path).read_text()
    try:
        return HgrCertificate.from_json(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{path}: not a certificate ({exc})") from None


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ------------------------------------------------------------------ commands
def cmd_group_show(args) -> int:
    G = _group(args.group)
    st = structure_queries(G)
    orders = sorted(G.element_order(g) for g in range(G.order))
    _emit(args, _dump({"name": G.name, "order": G.order, "abelian": st.is_abelian,
                       "center_order": st.center.order, "derived_order": st.derived.order,
                       "element_orders": orders, "labels": G.labels}))
    return EXIT_OK


def cmd_haar_build(args) -> int:
    G = _group(args.group)
    H = build_haar(G, _parse_set(G, args.set))
    _emit(args, H.to_dot() if args.format == "dot" else graph_to_json(H))
    return EXIT_OK


def cmd_haar_aut(args) -> int:
    G = _group(args.group)
    H = build_haar(G, _parse_set(G, args.set))
    budget = _budget(args)
    a0 = aut0(H, budget).order
    a = aut_full(H, budget).order
    _emit(args, _dump({"group": G.name, "order": G.order, "connection_set": H.conn.elements(),
                       "aut0_order": a0, "aut_order": a, "is_hgr": a == G.order,
                       "rigid": a0 == G.order}))
    return EXIT_OK if a == G.order else EXIT_NO


def cmd_construct(args) -> int:
    G = _group(args.group)
    cert = construct_hgr(G, seed=args.seed, budget=_budget(args))
    _emit(args, cert.to_json())
    return EXIT_NO if cert.method == "exceptional" else EXIT_OK


def cmd_classify(args) -> int:
    budget = _budget(args)
    if (args.group is None) == (args.orders is None):
        raise UsageError("give exactly one of a group or --orders a..b")
    if args.group is not None:
        groups = [_group(args.group)]
    else:
        lo, hi = _orders(args.orders)
        groups = [catalog.get(nm) for nm in catalog.names(max_order=hi, min_order=lo)]
    reports = [classify_group(G, budget, args.workers) for G in groups]
    if args.format == "csv":
        lines = ["order,group,admits_hgr,admits_rigid_bipartition,class_count,exhaustive"]
        lines += [f"{r.order},{r.group},{r.admits_hgr},{r.admits_rigid_bipartition},{r.class_count},"
                  f"{'yes' if r.exhaustive else 'no'}" for r in reports]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, _dump([r.to_dict() for r in reports]))
    if any(r.admits_hgr == UNKNOWN for r in reports):
        return EXIT_UNKNOWN
    if args.group is not None and reports[0].admits_hgr == NO:
        return EXIT_NO
    return EXIT_OK


def cmd_tables(args) -> int:
    rows = reproduce_tables(args.max_order, budget=_budget(args), workers=args.workers)
    _emit(args, rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows))
    if any(UNKNOWN in (r.computed_hgr, r.computed_rigid) for r in rows):
        return EXIT_UNKNOWN
    return EXIT_OK if all(r.match for r in rows) else EXIT_NO


def cmd_cayley_check(args) -> int:
    G = _group(args.group)
    if G.order > CAYLEY_DEFAULT_MAX and not args.long:
        raise UsageError(f"order {G.order} exceeds {CAYLEY_DEFAULT_MAX}; pass --long to run it anyway")
    rep = every_haar_is_cayley(G, _budget(args), args.workers)
    if args.format == "json":
        _emit(args, _dump({"group": rep.group, "verdict": rep.verdict, "witness": rep.witness,
                           "class_count": rep.class_count, "decided": rep.decided,
                           "undecided": rep.undecided}))
    elif rep.verdict == YES:
        _emit(args, f"{G.name}: all Haar graphs Cayley ({rep.class_count} classes)")
    elif rep.verdict == NO:
        _emit(args, f"{G.name}: non-Cayley Haar graph for S = {rep.witness}")
    else:
        _emit(args, f"{G.name}: undecided, {rep.decided}/{rep.class_count} classes decided")
    return {YES: EXIT_OK, NO: EXIT_NO}.get(rep.verdict, EXIT_UNKNOWN)


def _cert_graph(path: str):
    cert = _load_certificate(path)
    G = _group_by_name(cert.group)
    if G.order != cert.order:
        raise UsageError(f"{path}: group {cert.group} has order {G.order}, certificate says {cert.order}")
    return cert, G


def cmd_poset(args) -> int:
    cert, G = _cert_graph(args.certificate)
    P = haar_to_poset(build_haar(G, cert.connection_set))
    if args.format == "dot":
        _emit(args, P.to_dot())
        return EXIT_OK
    rep = poset_representation_report(P)
    out = {"group": cert.group, "order": cert.order, "elements": P.size, "aut_order": rep.aut_order,
           "semiregular": rep.semiregular, "orbit_count": rep.orbit_count}
    if args.format == "poset":
        out = json.loads(P.to_json())
    _emit(args, _dump(out))
    return EXIT_OK if rep.semiregular and rep.orbit_count == 2 else EXIT_NO


def cmd_ideals(args) -> int:
    cert, G = _cert_graph(args.certificate)
    lb = lattice_bound_check(G, cert.connection_set)
    _emit(args, _dump({"group": cert.group, "order": cert.order, "ideal_count": lb.ideal_count,
                       "bound_log2": str(lb.bound_log2), "within": lb.within, "premise": lb.premise,
                       "decomposition_holds": lb.decomposition_holds, "degenerate": lb.degenerate}))
    return EXIT_OK if lb.within else EXIT_NO


def cmd_verify(args) -> int:
    cert, G = _cert_graph(args.certificate)
    ok = verify_certificate(cert, G, _budget(args))
    _emit(args, f"{args.certificate}: {'valid' if ok else 'INVALID'}")
    return EXIT_OK if ok else EXIT_NO


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None, help="search-node budget (env HAAR_BUDGET)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--output", "-o", default=None)

    p = _Parser(prog="haarrep", description="Haar graphical representations of finite groups")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("group", help="group queries")
    gsub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = gsub.add_parser("show", parents=[common])
    s.add_argument("group")
    s.set_defaults(func=cmd_group_show)

    h = sub.add_parser("haar", help="Haar graph construction and automorphisms")
    hsub = h.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = hsub.add_parser("build", parents=[common])
    b.add_argument("group")
    b.add_argument("--set", required=True, help="comma-separated element indices")
    b.add_argument("--format", choices=["json", "dot"], default="json")
    b.set_defaults(func=cmd_haar_build)
    a = hsub.add_parser("aut", parents=[common])
    a.add_argument("group")
    a.add_argument("--set", required=True)
    a.set_defaults(func=cmd_haar_aut)

    c = sub.add_parser("construct", parents=[common], help="emit a verified certificate")
    c.add_argument("group")
    c.set_defaults(func=cmd_construct)

    cl = sub.add_parser("classify", parents=[common], help="exhaustive classification")
    cl.add_argument("group", nargs="?")
    cl.add_argument("--orders", default=None, help="order range a..b over the catalog")
    cl.add_argument("--format", choices=["json", "csv"], default="json")
    cl.set_defaults(func=cmd_classify)

    t = sub.add_parser("tables", parents=[common], help="compare with the exceptional tables")
    t.add_argument("--max-order", type=int, default=12)
    t.add_argument("--format", choices=["json", "csv"], default="csv")
    t.set_defaults(func=cmd_tables)

    k = sub.add_parser("cayley-check", parents=[common], help="are all Haar graphs Cayley graphs")
    k.add_argument("group")
    k.add_argument("--long", action="store_true", help=f"allow orders above {CAYLEY_DEFAULT_MAX}")
    k.add_argument("--format", choices=["text", "json"], default="text")
    k.set_defaults(func=cmd_cayley_check)

    po = sub.add_parser("poset", parents=[common], help="two-layer poset of a certificate")
    po.add_argument("certificate")
    po.add_argument("--format", choices=["json", "poset", "dot"], default="json")
    po.set_defaults(func=cmd_poset)

    i = sub.add_parser("ideals", parents=[common], help="ideal count against the lattice bound")
    i.add_argument("certificate")
    i.set_defaults(func=cmd_ideals)

    v = sub.add_parser("verify", parents=[common], help="recompute a certificate")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)
    return p


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GroupError, PosetError, FileNotFoundError) as exc:
        print(f"haarrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, ConstructionUnknown) as exc:
        print(f"haarrep: unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
