# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in _pykernels."""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef int64_t _binom[66][66]


cdef void _init_binom():
    cdef int n, k
    for n in range(66):
        for k in range(66):
            _binom[n][k] = 0
        _binom[n][0] = 1
        for k in range(1, n + 1):
            _binom[n][k] = _binom[n - 1][k - 1] + (_binom[n - 1][k] if k <= n - 1 else 0)


_init_binom()


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _pop(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef int64_t _powmod(int64_t b, int64_t e, int64_t p) nogil:
    cdef int64_t r = 1
    b %= p
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def popcount(uint64_t mask):
    return _pop(mask)


def wedge_sign(uint64_t a, uint64_t b):
    cdef uint64_t low
    cdef int n = 0
    if a & b:
        return 0
    while b:
        low = b & (~b + 1)
        n += _pop(a & ~((low << 1) - 1))
        b ^= low
    return -1 if n & 1 else 1


def bits_below(uint64_t mask, int i):
    return _pop(mask & ((<uint64_t>1 << i) - 1))


def mask_rank(uint64_t mask):
    cdef int64_t r = 0
    cdef int j = 1, i = 0
    while mask:
        if mask & 1:
            r += _binom[i][j]
            j += 1
        mask >>= 1
        i += 1
    return r


def rank_mod_p(rows, int ncols, int64_t p):
    cdef int nrows = len(rows)
    cdef int64_t *m
    cdef int r, c, j, piv, rank = 0
    cdef int64_t inv, f, v
    if nrows == 0 or ncols == 0:
        return 0
    m = <int64_t *> malloc(nrows * ncols * sizeof(int64_t))
    if not m:
        raise MemoryError()
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                m[r * ncols + c] = row[c] % p
        for c in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if m[r * ncols + c]:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(ncols):
                    v = m[piv * ncols + j]
                    m[piv * ncols + j] = m[rank * ncols + j]
                    m[rank * ncols + j] = v
            inv = _powmod(m[rank * ncols + c], p - 2, p)
            for j in range(c, ncols):
                m[rank * ncols + j] = m[rank * ncols + j] * inv % p
            for r in range(rank + 1, nrows):
                f = m[r * ncols + c]
                if f:
                    for j in range(c, ncols):
                        m[r * ncols + j] = (m[r * ncols + j] - f * m[rank * ncols + j]) % p
                        if m[r * ncols + j] < 0:
                            m[r * ncols + j] += p
            rank += 1
            if rank == nrows:
                break
    finally:
        free(m)
    return rank
