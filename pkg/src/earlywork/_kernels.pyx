# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the two hot kernels.

Mirrors :mod:`earlywork._kernels_py` exactly; see that module for the
contract of each function.  State encoding for the DP: a state vector
(E_1, ..., E_m) with coordinates in 0..capacity is flattened in row-major
order, machine 0 most significant.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

BACKEND_NAME = "compiled"


cdef void _search(
    int j, int n, int m, long long d,
    long long* p, long long* loads, long long value,
    unsigned char* assign, long long* best, unsigned char* best_assign,
) noexcept:
    cdef int i
    cdef long long before, after, capped_before, capped_after
    if j == n:
        if value > best[0]:
            best[0] = value
            memcpy(best_assign, assign, n)
        return
    for i in range(m):
        before = loads[i]
        after = before + p[j]
        capped_before = before if before < d else d
        capped_after = after if after < d else d
        loads[i] = after
        assign[j] = i
        _search(j + 1, n, m, d, p, loads, value + capped_after - capped_before,
                assign, best, best_assign)
        loads[i] = before


def best_assignment(sizes, int machine_count, long long due_date):
    cdef int n = len(sizes)
    cdef int m = machine_count
    if m < 1:
        raise ValueError("best_assignment needs at least one machine")
    if n == 0:
        return 0, []
    cdef long long* p = <long long*> malloc(n * sizeof(long long))
    cdef long long* loads = <long long*> malloc(m * sizeof(long long))
    cdef unsigned char* assign = <unsigned char*> malloc(n)
    cdef unsigned char* best_assign = <unsigned char*> malloc(n)
    if p == NULL or loads == NULL or assign == NULL or best_assign == NULL:
        free(p); free(loads); free(assign); free(best_assign)
        raise MemoryError()
    cdef long long best = -1
    cdef int j
    try:
        for j in range(n):
            p[j] = sizes[j]
        memset(loads, 0, m * sizeof(long long))
        _search(0, n, m, due_date, p, loads, 0, assign, &best, best_assign)
        return int(best), [best_assign[j] for j in range(n)]
    finally:
        free(p); free(loads); free(assign); free(best_assign)


def dp_fill(sizes, int machine_count, long long capacity, bint keep_tables=False):
    cdef int m = machine_count
    if m < 1:
        raise ValueError("dp_fill needs at least one machine")
    cdef long long grid = capacity + 1
    state_count = (int(capacity) + 1) ** int(m)  # Python int: overflow-safe size check
    if state_count > (1 << 31):
        raise ValueError(f"state space too large for the DP kernel ({state_count} states)")
    cdef Py_ssize_t S = state_count
    cdef Py_ssize_t* stride = <Py_ssize_t*> malloc(m * sizeof(Py_ssize_t))
    cdef long long* prev = <long long*> malloc(S * sizeof(long long))
    cdef long long* cur = <long long*> malloc(S * sizeof(long long))
    if stride == NULL or prev == NULL or cur == NULL:
        free(stride); free(prev); free(cur)
        raise MemoryError()

    cdef int i
    cdef Py_ssize_t s, t
    cdef long long e, shrunk, gain, cand, best_v, p
    cdef int best_i
    cdef long long* tmp
    cdef unsigned char[:] chv
    choices = []
    tables = [] if keep_tables else None
    try:
        stride[m - 1] = 1
        for i in range(m - 2, -1, -1):
            stride[i] = stride[i + 1] * grid
        memset(prev, 0, S * sizeof(long long))
        if keep_tables:
            tables.append([prev[t] for t in range(S)])
        for size in sizes:
            p = size
            ch = bytearray(S)
            chv = ch
            for s in range(S):
                best_v = -1
                best_i = 0
                for i in range(m):
                    e = (s // stride[i]) % grid
                    shrunk = e - p if e > p else 0
                    gain = p if p < e else e
                    cand = prev[s - (e - shrunk) * stride[i]] + gain
                    if cand > best_v:
                        best_v = cand
                        best_i = i
                cur[s] = best_v
                chv[s] = best_i
            tmp = prev; prev = cur; cur = tmp
            choices.append(ch)
            if keep_tables:
                tables.append([prev[t] for t in range(S)])
        return int(prev[S - 1]), choices, tables
    finally:
        free(stride); free(prev); free(cur)
