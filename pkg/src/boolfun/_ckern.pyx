# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Walsh-Hadamard butterflies, brute-force triangle
counting, the erasure-norm recursion, and block-sensitivity search.

Keep every routine numerically interchangeable with boolfun._pykern: same
operations, same order.
"""

from libc.math cimport fabs
from libc.stdlib cimport free, malloc

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long x) nogil

IMPLEMENTATION = "compiled"


def wht_i64(cnp.ndarray[cnp.int64_t, ndim=1] a):
    cdef long size = a.shape[0]
    cdef long h = 1, base, j
    cdef cnp.int64_t x, y
    cdef cnp.int64_t[:] v = a
    with nogil:
        while h < size:
            base = 0
            while base < size:
                for j in range(base, base + h):
                    x = v[j]
                    y = v[j + h]
                    v[j] = x + y
                    v[j + h] = x - y
                base += 2 * h
            h <<= 1
    return a


def wht_f64(cnp.ndarray[cnp.float64_t, ndim=1] a):
    cdef long size = a.shape[0]
    cdef long h = 1, base, j
    cdef double x, y
    cdef double[:] v = a
    with nogil:
        while h < size:
            base = 0
            while base < size:
                for j in range(base, base + h):
                    x = v[j]
                    y = v[j + h]
                    v[j] = x + y
                    v[j + h] = x - y
                base += 2 * h
            h <<= 1
    return a


def triangle_pairs(const cnp.uint8_t[:] member, const cnp.int64_t[:] elements):
    cdef long m = elements.shape[0]
    cdef long i, j
    cdef long long total = 0
    cdef long long x
    cdef const cnp.uint8_t[:] mem = member
    cdef const cnp.int64_t[:] el = elements
    with nogil:
        for i in range(m):
            x = el[i]
            for j in range(m):
                total += mem[x ^ el[j]]
    return int(total)


cdef double _erasure_rec(const double* t, int m, double half_p, double rest,
                         double* scratch) noexcept nogil:
    cdef long h, j
    cdef double r0, r1, r2
    if m == 0:
        return fabs(t[0])
    h = 1 << (m - 1)
    r0 = _erasure_rec(t, m - 1, half_p, rest, scratch)
    r1 = _erasure_rec(t + h, m - 1, half_p, rest, scratch)
    for j in range(h):
        scratch[j] = 0.5 * (t[j] + t[j + h])
    r2 = _erasure_rec(scratch, m - 1, half_p, rest, scratch + h)
    return half_p * (r0 + r1) + rest * r2


def erasure_expectation(const cnp.float64_t[:] table, double p):
    cdef long size = table.shape[0]
    cdef int n = 0
    while (<long>1 << n) < size:
        n += 1
    cdef double* scratch = <double*>malloc(size * sizeof(double))
    if scratch == NULL:
        raise MemoryError()
    cdef const double[:] t = table
    cdef double out
    try:
        with nogil:
            out = _erasure_rec(&t[0], n, 0.5 * p, 1.0 - p, scratch)
    finally:
        free(scratch)
    return out


cdef int _pack_dfs(long long* blocks, int* sizes, long long* rest_union,
                   int m, int i, long long used, int count, int best) noexcept nogil:
    cdef long long avail, b
    if count > best:
        best = count
    if i == m:
        return best
    avail = rest_union[i] & ~used
    if count + __builtin_popcountll(avail) / sizes[i] <= best:
        return best
    b = blocks[i]
    if not (b & used):
        best = _pack_dfs(blocks, sizes, rest_union, m, i + 1, used | b,
                         count + 1, best)
    return _pack_dfs(blocks, sizes, rest_union, m, i + 1, used, count, best)


def block_sensitivity(const cnp.int8_t[:] table, int n):
    cdef long size = 1 << n
    cdef long x, bmask, step
    cdef int i, best, fx, cnt, nblocks
    cdef const cnp.int8_t[:] tab = table
    cdef cnp.uint8_t* sens = <cnp.uint8_t*>malloc(size)
    cdef cnp.uint8_t* has = <cnp.uint8_t*>malloc(size)
    cdef cnp.uint8_t* proper = <cnp.uint8_t*>malloc(size)
    cdef long long* blocks = <long long*>malloc(size * sizeof(long long))
    cdef long long* rest_union = <long long*>malloc((size + 1) * sizeof(long long))
    cdef int* sizes = <int*>malloc(size * sizeof(int))
    if sens == NULL or has == NULL or proper == NULL or blocks == NULL \
            or rest_union == NULL or sizes == NULL:
        free(sens); free(has); free(proper); free(blocks); free(rest_union); free(sizes)
        raise MemoryError()
    best = 0
    try:
        with nogil:
            # floor: max point sensitivity (singletons pack trivially)
            for x in range(size):
                cnt = 0
                for i in range(n):
                    if tab[x] != tab[x ^ (<long>1 << i)]:
                        cnt += 1
                if cnt > best:
                    best = cnt
            for x in range(size):
                fx = tab[x]
                for bmask in range(size):
                    sens[bmask] = 1 if tab[bmask ^ x] != fx else 0
                sens[0] = 0
                for bmask in range(size):
                    has[bmask] = sens[bmask]
                for i in range(n):
                    step = <long>1 << i
                    for bmask in range(size):
                        if bmask & step:
                            has[bmask] |= has[bmask ^ step]
                for bmask in range(size):
                    proper[bmask] = 0
                for i in range(n):
                    step = <long>1 << i
                    for bmask in range(size):
                        if bmask & step:
                            proper[bmask] |= has[bmask ^ step]
                nblocks = 0
                for bmask in range(size):
                    if sens[bmask] and not proper[bmask]:
                        blocks[nblocks] = bmask
                        nblocks += 1
                if nblocks <= best:
                    continue
                # sort ascending by popcount (insertion sort; lists are short)
                for i in range(nblocks):
                    sizes[i] = __builtin_popcountll(blocks[i])
                _sort_by_size(blocks, sizes, nblocks)
                rest_union[nblocks] = 0
                for i in range(nblocks - 1, -1, -1):
                    rest_union[i] = rest_union[i + 1] | blocks[i]
                cnt = _pack_dfs(blocks, sizes, rest_union, nblocks, 0, 0, 0, best)
                if cnt > best:
                    best = cnt
    finally:
        free(sens); free(has); free(proper); free(blocks); free(rest_union); free(sizes)
    return best


cdef void _sort_by_size(long long* blocks, int* sizes, int m) noexcept nogil:
    cdef int i, j, sz
    cdef long long b
    for i in range(1, m):
        b = blocks[i]
        sz = sizes[i]
        j = i - 1
        while j >= 0 and sizes[j] > sz:
            blocks[j + 1] = blocks[j]
            sizes[j + 1] = sizes[j]
            j -= 1
        blocks[j + 1] = b
        sizes[j + 1] = sz
