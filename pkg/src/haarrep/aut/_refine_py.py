"""Pure-Python partition refinement kernel.

Must produce bit-identical partitions and trace hashes to the compiled
kernel in ``_refine.pyx``; the test-suite compares the two.
"""

from __future__ import annotations

FNV_OFFSET = 14695981039346656037
FNV_PRIME = 1099511628211
MASK = (1 << 64) - 1

BACKEND = "python"


def mix(h: int, x: int) -> int:
    return ((h ^ x) * FNV_PRIME) & MASK


def graph_arrays(off, adj):
    return list(map(int, off)), list(map(int, adj))


class PartitionState:
    """Ordered partition stored nauty-style.

    ``lab`` lists vertices by position, ``pos`` is its inverse, ``cellof[v]``
    is the start position of the cell holding ``v`` and ``cellend[s]`` the
    end (exclusive) of the cell starting at ``s``.
    """

    __slots__ = ("nv", "lab", "pos", "cellof", "cellend", "ncells")

    def __init__(self, nv: int, cells=None):
        self.nv = nv
        if cells is None:
            return
        lab = [v for c in cells for v in c]
        if sorted(lab) != list(range(nv)):
            raise ValueError("cells must partition the vertex set")
        self.lab = lab
        self.pos = [0] * nv
        self.cellof = [0] * nv
        self.cellend = [0] * nv
        i = 0
        ncells = 0
        for c in cells:
            if not c:
                continue
            s = i
            for v in c:
                self.pos[v] = i
                self.cellof[v] = s
                i += 1
            self.cellend[s] = i
            ncells += 1
        self.ncells = ncells

    def copy(self) -> "PartitionState":
        st = PartitionState(self.nv)
        st.lab = self.lab[:]
        st.pos = self.pos[:]
        st.cellof = self.cellof[:]
        st.cellend = self.cellend[:]
        st.ncells = self.ncells
        return st

    def leaf(self) -> list[int]:
        return self.lab[:]

    def cell_starts(self) -> list[int]:
        out = []
        i = 0
        while i < self.nv:
            out.append(i)
            i = self.cellend[i]
        return out

    def cells(self) -> list[list[int]]:
        return [self.lab[s:self.cellend[s]] for s in self.cell_starts()]

    def cell(self, s: int) -> list[int]:
        return self.lab[s:self.cellend[s]]

    def is_discrete(self) -> bool:
        return self.ncells == self.nv

    def target_cell(self) -> int:
        """Start of the first smallest non-singleton cell, or -1."""
        best, best_size = -1, self.nv + 1
        i = 0
        cellend = self.cellend
        while i < self.nv:
            e = cellend[i]
            size = e - i
            if 1 < size < best_size:
                best, best_size = i, size
                if size == 2:
                    break
            i = e
        return best

    def individualize(self, v: int) -> int:
        """Split ``v`` off as a singleton at the front of its cell; return its start."""
        lab, pos, cellof, cellend = self.lab, self.pos, self.cellof, self.cellend
        s = cellof[v]
        e = cellend[s]
        if e - s < 2:
            raise ValueError("vertex is already a singleton")
        i = pos[v]
        w = lab[s]
        lab[s], lab[i] = v, w
        pos[v], pos[w] = s, i
        cellend[s] = s + 1
        cellend[s + 1] = e
        for k in range(s + 1, e):
            cellof[lab[k]] = s + 1
        self.ncells += 1
        return s

    def refine(self, off, adj, queue) -> int:
        """Equitable refinement driven by the splitter cells in ``queue``; returns the trace hash."""
        nv = self.nv
        lab, pos, cellof, cellend = self.lab, self.pos, self.cellof, self.cellend
        inq = bytearray(nv)
        q = list(queue)
        for s in q:
            inq[s] = 1
        head = 0
        count = [0] * nv
        h = FNV_OFFSET
        ncells = self.ncells
        while head < len(q) and ncells < nv:
            w = q[head]
            head += 1
            inq[w] = 0
            wend = cellend[w]
            touched = []
            for i in range(w, wend):
                v = lab[i]
                for k in range(off[v], off[v + 1]):
                    u = adj[k]
                    if count[u] == 0:
                        touched.append(u)
                    count[u] += 1
            tcells = sorted({cellof[u] for u in touched})
            for c in tcells:
                cend = cellend[c]
                size = cend - c
                if size == 1:
                    continue
                seg = lab[c:cend]
                keys = [count[v] for v in seg]
                kmin = min(keys)
                if kmin == max(keys):
                    continue
                order = sorted(range(size), key=keys.__getitem__)
                h = mix(mix(h, w), c)
                frags = []
                fs = c
                prev = keys[order[0]]
                for j, idx in enumerate(order):
                    v = seg[idx]
                    p = c + j
                    lab[p] = v
                    pos[v] = p
                    key = keys[idx]
                    if key != prev:
                        frags.append((fs, p, prev))
                        fs = p
                        prev = key
                frags.append((fs, cend, prev))
                for fs, fe, key in frags:
                    h = mix(mix(h, key), fe - fs)
                    cellend[fs] = fe
                    for p in range(fs, fe):
                        cellof[lab[p]] = fs
                ncells += len(frags) - 1
                if inq[c]:
                    for fs, fe, key in frags[1:]:
                        q.append(fs)
                        inq[fs] = 1
                else:
                    big = frags[0]
                    for f in frags[1:]:
                        if f[1] - f[0] > big[1] - big[0]:
                            big = f
                    for f in frags:
                        if f is not big:
                            q.append(f[0])
                            inq[f[0]] = 1
            for u in touched:
                count[u] = 0
        self.ncells = ncells
        return mix(h, ncells)


def is_automorphism(off, adj, perm) -> bool:
    nv = len(perm)
    mark = [0] * nv
    stamp = 0
    for v in range(nv):
        pv = perm[v]
        d = off[v + 1] - off[v]
        if off[pv + 1] - off[pv] != d:
            return False
        stamp += 1
        for k in range(off[pv], off[pv + 1]):
            mark[adj[k]] = stamp
        for k in range(off[v], off[v + 1]):
            if mark[perm[adj[k]]] != stamp:
                return False
    return True
