"""Exhaustive classification of small groups over connection-set classes."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .aut import BudgetExceeded, aut0, aut_full
from .cayley import haar_cayley_status
from .groups import catalog
from .groups.core import FiniteGroup, GroupError, bits
from .groups.iso import automorphism_generators, generating_sequence
from .haar import ConnectionSet, build_haar

EXHAUSTIVE_MAX_ORDER = 16
YES, NO, UNKNOWN = "yes", "no", "unknown"


def _element_perms(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Permutations of elements whose action on subsets preserves the Haar graph up to isomorphism."""
    gens = generating_sequence(G) if G.order > 1 else []
    mul = G.mul
    perms = [tuple(mul[g][x] for x in range(G.order)) for g in gens]
    perms += [tuple(mul[x][g] for x in range(G.order)) for g in gens]
    perms += list(automorphism_generators(G))
    return perms


def connection_class_orbits(G: FiniteGroup, max_order: int = EXHAUSTIVE_MAX_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """``(representatives, orbit_sizes)``: minimal masks of the subset orbits, ascending."""
    n = G.order
    if n > max_order:
        raise GroupError(f"exhaustive enumeration is capped at order {max_order}")
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    rows, cols = [], []
    for p in _element_perms(G):
        img = np.zeros(size, dtype=np.int64)
        for i in range(n):
            img |= ((masks >> i) & 1) << p[i]
        rows.append(masks)
        cols.append(img)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(size, size)).tocsr()
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = masks.copy()
    # masks equal node indices, so the first index of each label is the orbit minimum
    uniq, first, counts = np.unique(labels, return_index=True, return_counts=True)
    order = np.argsort(first)
    return masks[first[order]], counts[order]


def enumerate_connection_classes(G: FiniteGroup, max_order: int = EXHAUSTIVE_MAX_ORDER):
    """Yield one :class:`ConnectionSet` per orbit under translations and automorphisms."""
    reps, _ = connection_class_orbits(G, max_order)
    for m in reps:
        yield ConnectionSet(G, int(m))


@dataclass
class ClassRecord:
    mask: int
    orbit_size: int
    aut0_order: int | None
    aut_order: int | None


@dataclass
class ClassificationReport:
    group: str
    order: int
    admits_hgr: str
    admits_rigid_bipartition: str
    every_haar_is_cayley: str = UNKNOWN
    hgr_witness: list[int] | None = None
    rigid_witness: list[int] | None = None
    cayley_witness: list[int] | None = None
    class_count: int = 0
    exhaustive: bool = False
    records: list[ClassRecord] = field(default_factory=list, repr=False)

    def to_dict(self, with_records: bool = False) -> dict:
        d = asdict(self)
        if not with_records:
            d.pop("records")
        return d


def _measure(G: FiniteGroup, mask: int, budget: int | None) -> tuple[int | None, int | None]:
    """``(aut0, aut)``; the full group is only computed when ``aut0 = |G|``."""
    H = build_haar(G, ConnectionSet(G, mask))
    try:
        a0 = aut0(H, budget, certify=False).order
        a = aut_full(H, budget, certify=False).order if a0 == G.order else None
    except BudgetExceeded:
        return None, None
    return a0, a


def _measure_chunk(args):
    G, masks, budget = args
    return [_measure(G, m, budget) for m in masks]


def _parallel_map(G: FiniteGroup, masks: list[int], fn, budget, workers: int) -> list:
    if workers <= 1 or len(masks) < 2 * workers:
        return fn((G, masks, budget))
    chunks = [masks[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(workers) as ex:
        parts = list(ex.map(fn, [(G, c, budget) for c in chunks]))
    out = [None] * len(masks)
    for i, part in enumerate(parts):
        out[i::workers] = part
    return out


def classify_group(G: FiniteGroup, budget: int | None = None, workers: int = 1,
                   max_order: int = EXHAUSTIVE_MAX_ORDER) -> ClassificationReport:
    """HGR and rigid-bipartition verdicts from every subset class."""
    reps, sizes = connection_class_orbits(G, max_order)
    masks = [int(m) for m in reps]
    results = _parallel_map(G, masks, _measure_chunk, budget, workers)
    n = G.order
    records = [ClassRecord(m, int(k), a0, a) for m, k, (a0, a) in zip(masks, sizes, results)]
    undecided = any(r.aut0_order is None for r in records)
    hgr = next((r for r in records if r.aut_order == n), None)
    rigid = next((r for r in records if r.aut0_order == n), None)
    rep = ClassificationReport(
        group=G.name, order=n,
        admits_hgr=YES if hgr else (UNKNOWN if undecided else NO),
        admits_rigid_bipartition=YES if rigid else (UNKNOWN if undecided else NO),
        hgr_witness=bits(hgr.mask) if hgr else None,
        rigid_witness=bits(rigid.mask) if rigid else None,
        class_count=len(records), exhaustive=not undecided, records=records)
    if hgr:
        _reverify(G, hgr.mask, n, n)
    if rigid:
        _reverify(G, rigid.mask, n, None)
    return rep


def _reverify(G: FiniteGroup, mask: int, want_aut0: int, want_aut: int | None) -> None:
    """Re-derive witness orders from a JSON round trip, with certified stabilizer chains."""
    S = json.loads(json.dumps(bits(mask)))
    H = build_haar(G, S)
    if aut0(H).order != want_aut0 or (want_aut is not None and aut_full(H).order != want_aut):
        raise AssertionError(f"witness {S} for {G.name} failed re-verification")


@dataclass
class CayleyReport:
    group: str
    verdict: str
    witness: list[int] | None
    class_count: int
    decided: int
    undecided: list[list[int]] = field(default_factory=list)

    @property
    def decided_fraction(self) -> float:
        return self.decided / self.class_count if self.class_count else 1.0


def _cayley_chunk(args):
    G, masks, budget = args
    return [haar_cayley_status(G, ConnectionSet(G, m), budget).verdict for m in masks]


def every_haar_is_cayley(G: FiniteGroup, budget: int | None = None, workers: int = 1,
                         max_order: int = EXHAUSTIVE_MAX_ORDER, stop_at_witness: bool = True) -> CayleyReport:
    """Whether every Haar graph of ``G`` is a Cayley graph.

    With ``stop_at_witness`` the scan ends at the first non-Cayley class
    (classes are visited in ascending mask order, so the witness is
    deterministic).
    """
    reps, _ = connection_class_orbits(G, max_order)
    masks = [int(m) for m in reps]
    if stop_at_witness and workers <= 1:
        verdicts = []
        for m in masks:
            v = haar_cayley_status(G, ConnectionSet(G, m), budget).verdict
            verdicts.append(v)
            if v == NO:
                break
    else:
        verdicts = _parallel_map(G, masks, _cayley_chunk, budget, workers)
    witness = next((m for m, v in zip(masks, verdicts) if v == NO), None)
    undecided = [bits(m) for m, v in zip(masks, verdicts) if v == UNKNOWN]
    if witness is not None:
        verdict = NO
    elif undecided:
        verdict = UNKNOWN
    else:
        verdict = YES
    decided = sum(1 for v in verdicts if v != UNKNOWN)
    return CayleyReport(G.name, verdict, bits(witness) if witness is not None else None, len(masks),
                        decided, undecided)


# ------------------------------------------------------------------ tables
@dataclass
class TableRow:
    order: int
    group: str
    expected_hgr: str
    computed_hgr: str
    expected_rigid: str
    computed_rigid: str

    @property
    def match(self) -> bool:
        return self.expected_hgr == self.computed_hgr and self.expected_rigid == self.computed_rigid


def _classify_named(args):
    name, budget = args
    return classify_group(catalog.get(name), budget)


def expected_verdicts(name: str) -> tuple[str, str]:
    """Table-derived ``(hgr, rigid)`` answers for a catalog group; abelian groups never have an HGR."""
    e = catalog.entry(name)
    G = catalog.get(name)
    hgr = NO if (e.no_hgr or G.is_abelian) else YES
    rigid = NO if e.no_rigid else YES
    return hgr, rigid


def reproduce_tables(max_order: int = 12, min_order: int = 3, budget: int | None = None,
                     workers: int = 1) -> list[TableRow]:
    names = catalog.names(max_order=max_order, min_order=min_order)
    args = [(nm, budget) for nm in names]
    if workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(workers) as ex:
            reports = list(ex.map(_classify_named, args))
    else:
        reports = [_classify_named(a) for a in args]
    rows = []
    for nm, rep in zip(names, reports):
        eh, er = expected_verdicts(nm)
        rows.append(TableRow(rep.order, nm, eh, rep.admits_hgr, er, rep.admits_rigid_bipartition))
    return rows


def rows_to_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["order", "group", "expected_hgr", "computed_hgr", "expected_rigid", "computed_rigid", "match"])
    for r in rows:
        w.writerow([r.order, r.group, r.expected_hgr, r.computed_hgr, r.expected_rigid, r.computed_rigid,
                    "yes" if r.match else "no"])
    return buf.getvalue()


def rows_to_json(rows: list[TableRow]) -> str:
    return json.dumps([dict(asdict(r), match=r.match) for r in rows], indent=2, sort_keys=True)
