# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hypercube kernels: machine-word twins of `_purecore`.

Callers guarantee that scaled values (and their 4-term combinations) fit in
int64; `subgadgets.kernels` enforces that before dispatching here.
"""

from libc.stdint cimport int64_t, int32_t, uint8_t
from libc.stdlib cimport malloc, free

BACKEND_NAME = "compiled"


def scan_submodularity(int64_t[::1] values, int k):
    cdef Py_ssize_t n = 1 << k
    cdef Py_ssize_t s
    cdef int i, j
    cdef int64_t bi, bj, slack
    out = []
    for s in range(n):
        for i in range(k):
            bi = 1 << i
            if s & bi:
                continue
            for j in range(i + 1, k):
                bj = 1 << j
                if s & bj:
                    continue
                slack = (values[s] - values[s | bi] - values[s | bj]
                         + values[s | bi | bj])
                if slack > 0:
                    out.append((s, i, j, slack))
    return out


def sorted_distance_rows(int k, points):
    cdef Py_ssize_t n = 1 << k
    cdef Py_ssize_t m = len(points)
    cdef Py_ssize_t x, t, a
    cdef int64_t c, v
    cdef int d
    cdef int64_t *pts = <int64_t *> malloc(m * sizeof(int64_t))
    cdef uint8_t *row = <uint8_t *> malloc(m if m else 1)
    cdef int counts[32]
    if pts == NULL or row == NULL:
        free(pts)
        free(row)
        raise MemoryError()
    try:
        for t in range(m):
            pts[t] = points[t]
        rows = []
        for x in range(n):
            for d in range(k + 1):
                counts[d] = 0
            for t in range(m):
                v = x ^ pts[t]
                d = 0
                while v:
                    v &= v - 1
                    d += 1
                counts[d] += 1
            a = 0
            for d in range(k + 1):
                for t in range(counts[d]):
                    row[a] = <uint8_t> d
                    a += 1
            rows.append((<char *> row)[:m])
        return rows
    finally:
        free(pts)
        free(row)


def reduced_constraint_rows(int32_t[::1] orbit_ids, int k):
    cdef Py_ssize_t n = 1 << k
    cdef Py_ssize_t s
    cdef int i, j
    cdef int64_t bi, bj, mask
    cdef int32_t op, oq, om, on, tmp
    seen = set()
    for i in range(k):
        bi = 1 << i
        for j in range(i + 1, k):
            bj = 1 << j
            mask = bi | bj
            for s in range(n):
                if s & mask:
                    continue
                op = orbit_ids[s]
                oq = orbit_ids[s | mask]
                if op > oq:
                    tmp = op
                    op = oq
                    oq = tmp
                om = orbit_ids[s | bi]
                on = orbit_ids[s | bj]
                if om > on:
                    tmp = om
                    om = on
                    on = tmp
                if op == om and oq == on:
                    continue
                seen.add((op, oq, om, on))
    return sorted(seen)
