"""Pure-Python versions of the hot loops; same API as the compiled module."""
from __future__ import annotations

from math import comb

_BINOM = [[comb(n, k) for k in range(66)] for n in range(66)]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def wedge_sign(a: int, b: int) -> int:
    """Sign of e^A ^ e^B relative to e^(A|B); 0 when the index sets meet.

    The sign is (-1)^N with N the number of pairs i in A, j in B with i > j.
    """
    if a & b:
        return 0
    n = 0
    while b:
        low = b & -b
        # bits of a above this bit of b
        n += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if n & 1 else 1


def bits_below(mask: int, i: int) -> int:
    return bin(mask & ((1 << i) - 1)).count("1")


def mask_rank(mask: int) -> int:
    """Position of a k-subset in colexicographic order (combinatorial number system)."""
    r = 0
    j = 1
    i = 0
    while mask:
        if mask & 1:
            r += _BINOM[i][j]
            j += 1
        mask >>= 1
        i += 1
    return r


def rank_mod_p(rows: list[list[int]], ncols: int, p: int) -> int:
    """Rank of an integer matrix over GF(p), p a prime below 2^31."""
    m = [[v % p for v in row] for row in rows]
    rank = 0
    nrows = len(m)
    for c in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if m[r][c]:
                piv = r
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[c], p - 2, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank
