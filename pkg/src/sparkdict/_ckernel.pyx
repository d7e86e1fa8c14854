# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-search kernel; same contract as ``_pykernel.search_level``.

Entries are 64-bit.  The caller only dispatches here when the Hadamard bound
on every minor keeps intermediate products below 2**62.
"""

from libc.stdlib cimport malloc, free


cdef int _reduce(const long long[:, ::1] vecs, Py_ssize_t j, long long* rows,
                 int* pivcols, long long* pivvals, int depth, Py_ssize_t d,
                 long long* out) noexcept nogil:
    cdef Py_ssize_t col
    cdef int s
    cdef long long prev = 1, p, c
    cdef long long* row
    for col in range(d):
        out[col] = vecs[j, col]
    for s in range(depth):
        p = pivvals[s]
        c = out[pivcols[s]]
        row = rows + s * d
        if c != 0:
            for col in range(d):
                out[col] = (p * out[col] - c * row[col]) / prev
        elif p != prev:
            for col in range(d):
                out[col] = p * out[col] / prev
        prev = p
    for col in range(d):
        if out[col] != 0:
            return <int>col
    return -1


def search_level(const long long[:, ::1] vecs, int k, Py_ssize_t first_lo, Py_ssize_t first_hi):
    cdef Py_ssize_t n = vecs.shape[0], d = vecs.shape[1]
    cdef long long examined = 0
    cdef int depth = 0, pc, status = 0
    if k < 1 or k > n:
        return 0, None, 0
    if first_hi > n - k + 1:
        first_hi = n - k + 1
    cdef long long* rows = <long long*>malloc(k * d * sizeof(long long))
    cdef int* pivcols = <int*>malloc(k * sizeof(int))
    cdef long long* pivvals = <long long*>malloc(k * sizeof(long long))
    cdef Py_ssize_t* idx = <Py_ssize_t*>malloc(k * sizeof(Py_ssize_t))
    if not rows or not pivcols or not pivvals or not idx:
        free(rows); free(pivcols); free(pivvals); free(idx)
        raise MemoryError()
    try:
        with nogil:
            idx[0] = first_lo
            while True:
                if idx[depth] > n - (k - depth) or (depth == 0 and idx[0] >= first_hi):
                    if depth == 0:
                        status = 0
                        break
                    depth -= 1
                    idx[depth] += 1
                    continue
                pc = _reduce(vecs, idx[depth], rows, pivcols, pivvals, depth, d, rows + depth * d)
                if depth == k - 1:
                    examined += 1
                    if pc < 0:
                        status = 1
                        break
                    idx[depth] += 1
                    continue
                if pc < 0:
                    status = -2
                    break
                pivcols[depth] = pc
                pivvals[depth] = rows[depth * d + pc]
                depth += 1
                idx[depth] = idx[depth - 1] + 1
        if status == 0:
            return 0, None, examined
        return status, tuple(idx[i] for i in range(depth + 1)), examined
    finally:
        free(rows); free(pivcols); free(pivvals); free(idx)
