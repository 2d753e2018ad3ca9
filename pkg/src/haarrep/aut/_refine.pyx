# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled partition refinement kernel (same semantics as ``_refine_py``)."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, qsort
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

BACKEND = "cython"

cdef uint64_t FNV_OFFSET = 14695981039346656037ULL
cdef uint64_t FNV_PRIME = 1099511628211ULL


cdef inline uint64_t _mix(uint64_t h, uint64_t x) nogil:
    return (h ^ x) * FNV_PRIME


def mix(h, x):
    return int(_mix(<uint64_t>h, <uint64_t>x))


def graph_arrays(off, adj):
    return (np.ascontiguousarray(off, dtype=np.int32), np.ascontiguousarray(adj, dtype=np.int32))


cdef int _cmp_i64(const void *a, const void *b) noexcept nogil:
    cdef int64_t x = (<int64_t*>a)[0]
    cdef int64_t y = (<int64_t*>b)[0]
    return (x > y) - (x < y)


cdef int _cmp_i32(const void *a, const void *b) noexcept nogil:
    cdef int x = (<int*>a)[0]
    cdef int y = (<int*>b)[0]
    return (x > y) - (x < y)


cdef class PartitionState:
    cdef public int nv
    cdef public int ncells
    cdef cnp.ndarray _lab, _pos, _cellof, _cellend
    cdef int[::1] lab
    cdef int[::1] pos
    cdef int[::1] cellof
    cdef int[::1] cellend

    def __init__(self, int nv, cells=None):
        self.nv = nv
        self.ncells = 0
        if cells is None:
            return
        flat = [v for c in cells for v in c]
        if sorted(flat) != list(range(nv)):
            raise ValueError("cells must partition the vertex set")
        self._alloc()
        cdef int i = 0, s, v
        for c in cells:
            if not c:
                continue
            s = i
            for v in c:
                self.lab[i] = v
                self.pos[v] = i
                self.cellof[v] = s
                i += 1
            self.cellend[s] = i
            self.ncells += 1

    cdef _alloc(self):
        self._lab = np.zeros(self.nv, dtype=np.int32)
        self._pos = np.zeros(self.nv, dtype=np.int32)
        self._cellof = np.zeros(self.nv, dtype=np.int32)
        self._cellend = np.zeros(self.nv + 1, dtype=np.int32)
        self.lab = self._lab
        self.pos = self._pos
        self.cellof = self._cellof
        self.cellend = self._cellend

    def copy(self):
        cdef PartitionState st = PartitionState.__new__(PartitionState)
        st.nv = self.nv
        st.ncells = self.ncells
        st._lab = self._lab.copy()
        st._pos = self._pos.copy()
        st._cellof = self._cellof.copy()
        st._cellend = self._cellend.copy()
        st.lab = st._lab
        st.pos = st._pos
        st.cellof = st._cellof
        st.cellend = st._cellend
        return st

    def leaf(self):
        return self._lab.tolist()

    def cell_starts(self):
        out = []
        cdef int i = 0
        while i < self.nv:
            out.append(i)
            i = self.cellend[i]
        return out

    def cells(self):
        return [self._lab[s:self.cellend[s]].tolist() for s in self.cell_starts()]

    def cell(self, int s):
        return self._lab[s:self.cellend[s]].tolist()

    def is_discrete(self):
        return self.ncells == self.nv

    def target_cell(self):
        cdef int best = -1, best_size = self.nv + 1, i = 0, e, size
        while i < self.nv:
            e = self.cellend[i]
            size = e - i
            if 1 < size < best_size:
                best = i
                best_size = size
                if size == 2:
                    break
            i = e
        return best

    def individualize(self, int v):
        cdef int s = self.cellof[v]
        cdef int e = self.cellend[s]
        cdef int i, w, k
        if e - s < 2:
            raise ValueError("vertex is already a singleton")
        i = self.pos[v]
        w = self.lab[s]
        self.lab[s] = v
        self.lab[i] = w
        self.pos[v] = s
        self.pos[w] = i
        self.cellend[s] = s + 1
        self.cellend[s + 1] = e
        for k in range(s + 1, e):
            self.cellof[self.lab[k]] = s + 1
        self.ncells += 1
        return s

    def refine(self, const int[::1] off, const int[::1] adj, queue):
        cdef int nv = self.nv
        cdef int[::1] lab = self.lab
        cdef int[::1] pos = self.pos
        cdef int[::1] cellof = self.cellof
        cdef int[::1] cellend = self.cellend
        cdef int qcap = nv + 1
        cdef int *q = <int*>malloc(qcap * sizeof(int))
        cdef char *inq = <char*>malloc(nv)
        cdef int *count = <int*>malloc(nv * sizeof(int))
        cdef int *touched = <int*>malloc(nv * sizeof(int))
        cdef int *tcells = <int*>malloc(nv * sizeof(int))
        cdef char *cmark = <char*>malloc(nv)
        cdef int *seg = <int*>malloc(nv * sizeof(int))
        cdef int *keys = <int*>malloc(nv * sizeof(int))
        cdef int64_t *packed = <int64_t*>malloc(nv * sizeof(int64_t))
        cdef int *fstart = <int*>malloc((nv + 1) * sizeof(int))
        cdef int *fkey = <int*>malloc((nv + 1) * sizeof(int))
        cdef int *bucket = <int*>malloc(65 * sizeof(int))
        cdef int qhead = 0, qlen = 0
        cdef int i, j, k, v, u, w, wend, c, cend, size, ntouched, ntc, kmin, kmax, nfrag, fs, fe, p, big, bsize
        cdef int ncells = self.ncells
        cdef uint64_t h = FNV_OFFSET
        try:
            for i in range(nv):
                inq[i] = 0
                count[i] = 0
                cmark[i] = 0
            for s in queue:
                q[(qhead + qlen) % qcap] = s
                qlen += 1
                inq[<int>s] = 1
            while qlen > 0 and ncells < nv:
                w = q[qhead]
                qhead = (qhead + 1) % qcap
                qlen -= 1
                inq[w] = 0
                wend = cellend[w]
                ntouched = 0
                ntc = 0
                for i in range(w, wend):
                    v = lab[i]
                    for k in range(off[v], off[v + 1]):
                        u = adj[k]
                        if count[u] == 0:
                            touched[ntouched] = u
                            ntouched += 1
                            c = cellof[u]
                            if not cmark[c]:
                                cmark[c] = 1
                                tcells[ntc] = c
                                ntc += 1
                        count[u] += 1
                qsort(tcells, ntc, sizeof(int), _cmp_i32)
                for j in range(ntc):
                    c = tcells[j]
                    cmark[c] = 0
                    cend = cellend[c]
                    size = cend - c
                    if size == 1:
                        continue
                    kmin = count[lab[c]]
                    kmax = kmin
                    for i in range(size):
                        seg[i] = lab[c + i]
                        keys[i] = count[seg[i]]
                        if keys[i] < kmin:
                            kmin = keys[i]
                        if keys[i] > kmax:
                            kmax = keys[i]
                    if kmin == kmax:
                        continue
                    h = _mix(_mix(h, w), c)
                    # stable sort by key
                    if kmax - kmin < 64:
                        for i in range(kmax - kmin + 1):
                            bucket[i] = 0
                        for i in range(size):
                            bucket[keys[i] - kmin] += 1
                        p = 0
                        for i in range(kmax - kmin + 1):
                            k = bucket[i]
                            bucket[i] = p
                            p += k
                        for i in range(size):
                            k = keys[i] - kmin
                            packed[bucket[k]] = (<int64_t>keys[i] << 32) | i
                            bucket[k] += 1
                    else:
                        for i in range(size):
                            packed[i] = (<int64_t>keys[i] << 32) | i
                        qsort(packed, size, sizeof(int64_t), _cmp_i64)
                    nfrag = 0
                    for i in range(size):
                        k = <int>(packed[i] >> 32)
                        v = seg[<int>(packed[i] & 0xffffffff)]
                        p = c + i
                        lab[p] = v
                        pos[v] = p
                        if i == 0 or k != fkey[nfrag - 1]:
                            fstart[nfrag] = p
                            fkey[nfrag] = k
                            nfrag += 1
                    fstart[nfrag] = cend
                    for i in range(nfrag):
                        fs = fstart[i]
                        fe = fstart[i + 1]
                        h = _mix(_mix(h, fkey[i]), fe - fs)
                        cellend[fs] = fe
                        for p in range(fs, fe):
                            cellof[lab[p]] = fs
                    ncells += nfrag - 1
                    if inq[c]:
                        for i in range(1, nfrag):
                            fs = fstart[i]
                            q[(qhead + qlen) % qcap] = fs
                            qlen += 1
                            inq[fs] = 1
                    else:
                        big = 0
                        bsize = fstart[1] - fstart[0]
                        for i in range(1, nfrag):
                            if fstart[i + 1] - fstart[i] > bsize:
                                big = i
                                bsize = fstart[i + 1] - fstart[i]
                        for i in range(nfrag):
                            if i != big:
                                fs = fstart[i]
                                q[(qhead + qlen) % qcap] = fs
                                qlen += 1
                                inq[fs] = 1
                for i in range(ntouched):
                    count[touched[i]] = 0
            self.ncells = ncells
            return int(_mix(h, ncells))
        finally:
            free(q); free(inq); free(count); free(touched); free(tcells); free(cmark)
            free(seg); free(keys); free(packed); free(fstart); free(fkey); free(bucket)


def is_automorphism(const int[::1] off, const int[::1] adj, perm):
    cdef int nv = len(perm)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] parr = np.ascontiguousarray(perm, dtype=np.int32)
    cdef int[::1] pm = parr
    cdef int *mark = <int*>malloc(nv * sizeof(int))
    cdef int v, pv, k, stamp = 0
    cdef bint ok = True
    try:
        for v in range(nv):
            mark[v] = 0
        for v in range(nv):
            pv = pm[v]
            if off[pv + 1] - off[pv] != off[v + 1] - off[v]:
                ok = False
                break
            stamp += 1
            for k in range(off[pv], off[pv + 1]):
                mark[adj[k]] = stamp
            for k in range(off[v], off[v + 1]):
                if mark[pm[adj[k]]] != stamp:
                    ok = False
                    break
            if not ok:
                break
        return ok
    finally:
        free(mark)
