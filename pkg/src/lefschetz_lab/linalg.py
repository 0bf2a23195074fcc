"""Sparse exact linear algebra over any field of ``fieldcore``.

Vectors are dicts ``{column: nonzero scalar}``.  The workhorse is
``Echelon``, an incrementally built reduced row echelon basis that can also
remember how each of its rows was obtained from the vectors fed to it.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from . import kernels
from .fieldcore import FieldError, RatFunc, inv, specialize

SparseVec = dict


class LinAlgError(ArithmeticError):
    pass


class SingularMatrix(LinAlgError):
    pass


def _axpy(target: dict, coef, src: dict):
    """target += coef * src, dropping zeros."""
    for key, v in src.items():
        nv = target.get(key, 0) + coef * v
        if nv == 0:
            target.pop(key, None)
        else:
            target[key] = nv


def sparse(seq: Sequence) -> dict:
    return {i: v for i, v in enumerate(seq) if v != 0}


def dense(vec: dict, n: int) -> list:
    out = [Fraction(0)] * n
    for i, v in vec.items():
        out[i] = v
    return out


class Echelon:
    """Reduced row echelon basis of the span of the inserted vectors.

    With ``track=True`` every row carries a combination ``{label: coef}``
    of the inserted vectors producing it, which turns reduction into a
    linear solver.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, dict] = {}  # pivot column -> row with pivot 1
        self.tags: dict[int, dict] = {}
        self.track = track

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict, tag: dict | None = None):
        """Return (remainder, combo) with vec = remainder - sum combo[l] * input_l."""
        v = dict(vec)
        t = {} if tag is None else dict(tag)
        for c in sorted(c for c in v if c in self.rows):
            coef = v.get(c)
            if coef is None:
                continue
            _axpy(v, -coef, self.rows[c])
            if self.track:
                _axpy(t, -coef, self.tags[c])
        return v, t

    def insert(self, vec: dict, label: Hashable = None):
        """Add a vector; returns None if it was independent, else the dependency.

        The dependency is a combination of labels summing to zero (only
        meaningful when tracking).
        """
        tag = {label: Fraction(1)} if self.track else None
        v, t = self.reduce(vec, tag)
        if not v:
            return t if self.track else {}
        piv = min(v)
        s = inv(v[piv])
        if s != 1:
            v = {c: x * s for c, x in v.items()}
            if self.track:
                t = {c: x * s for c, x in t.items()}
        for pc, row in self.rows.items():
            coef = row.get(piv)
            if coef is not None:
                _axpy(row, -coef, v)
                if self.track:
                    _axpy(self.tags[pc], -coef, t)
        self.rows[piv] = v
        if self.track:
            self.tags[piv] = t
        return None

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def solve(self, vec: dict):
        """Combination of inputs equal to vec, or None."""
        if not self.track:
            raise LinAlgError("solve needs a tracking echelon")
        v, t = self.reduce(vec)
        if v:
            return None
        return {k: -x for k, x in t.items()}

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[c] for c in sorted(self.rows)]

    def copy(self) -> "Echelon":
        e = Echelon(self.track)
        e.rows = {c: dict(r) for c, r in self.rows.items()}
        e.tags = {c: dict(t) for c, t in self.tags.items()}
        return e


class Subspace:
    """A subspace of F^n stored as its canonical reduced row echelon basis."""

    __slots__ = ("dim_ambient", "rows", "pivots")

    def __init__(self, dim_ambient: int, vectors: Iterable[Sequence] = ()):
        ech = Echelon()
        for v in vectors:
            if len(v) != dim_ambient:
                raise LinAlgError("vector length does not match the ambient dimension")
            ech.insert(sparse(v))
        self.dim_ambient = dim_ambient
        self.pivots = tuple(ech.pivots())
        self.rows = tuple(tuple(dense(ech.rows[c], dim_ambient)) for c in self.pivots)

    @classmethod
    def from_sparse(cls, dim_ambient: int, vectors: Iterable[dict]) -> "Subspace":
        return cls(dim_ambient, [dense(v, dim_ambient) for v in vectors])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[tuple]:
        return list(self.rows)

    def _echelon(self) -> Echelon:
        ech = Echelon()
        for p, r in zip(self.pivots, self.rows):
            ech.rows[p] = sparse(r)
        return ech

    def contains(self, v: Sequence) -> bool:
        return self._echelon().contains(sparse(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        ech = self._echelon()
        return all(ech.contains(sparse(r)) for r in other.rows)

    def coords(self, v: Sequence) -> list:
        """Coordinates of v in the echelon basis (v must lie in the subspace)."""
        if not self.contains(v):
            raise LinAlgError("vector is not in the subspace")
        return [v[p] for p in self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.dim_ambient, list(self.rows) + list(other.rows))

    def intersection(self, other: "Subspace") -> "Subspace":
        # u in self, u in other: solve sum a_i s_i - sum b_j o_j = 0
        ech = Echelon(track=True)
        for i, r in enumerate(self.rows):
            ech.insert(sparse(r), ("s", i))
        out = []
        for j, r in enumerate(other.rows):
            dep = ech.insert(sparse(r), ("o", j))
            if dep is not None:
                vec = {}
                for (side, idx), c in dep.items():
                    if side == "o":
                        _axpy(vec, c, sparse(other.rows[idx]))
                out.append(vec)
        return Subspace.from_sparse(self.dim_ambient, out)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.dim_ambient == other.dim_ambient and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim_ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.dim_ambient})"


def kernel(columns: Sequence[dict]) -> list[dict]:
    """Basis of {x : sum_j x_j columns[j] = 0}, as sparse vectors indexed by j."""
    ech = Echelon(track=True)
    out = []
    for j, col in enumerate(columns):
        dep = ech.insert(col, j)
        if dep is not None:
            out.append(dep)
    return out


def rank(vectors: Iterable[dict]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    return len(ech)


def rank_dense(rows: Sequence[Sequence]) -> int:
    return rank(sparse(r) for r in rows)


def column_vectors(matrix: Sequence[Sequence]) -> list[dict]:
    if not matrix:
        return []
    return [{i: row[j] for i, row in enumerate(matrix) if row[j] != 0} for j in range(len(matrix[0]))]


# --------------------------------------------------------------------------
# dense matrices (lists of rows)


def identity(n: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list]:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * n
        for k, x in enumerate(row):
            if x != 0:
                for j, y in enumerate(b[k]):
                    if y != 0:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v) if x != 0 and y != 0), Fraction(0)) for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def mat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in r] for r in a]


def mat_inverse(a: Sequence[Sequence]) -> list[list]:
    """Gauss-Jordan inverse; raises SingularMatrix."""
    n = len(a)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        s = inv(m[c][c])
        m[c] = [x * s for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def mat_power(a, e: int):
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = matmul(result, base)
        e >>= 1
        if e:
            base = matmul(base, base)
    return result


def is_zero_matrix(a) -> bool:
    return all(x == 0 for r in a for x in r)


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free rank of an integer (or rational) matrix."""
    if not rows:
        return 0
    # clear denominators row by row
    m = []
    for r in rows:
        den = 1
        for x in r:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        m.append([int(Fraction(x) * den) for x in r])
    nr, nc = len(m), len(m[0])
    rank, prev = 0, 1
    for c in range(nc):
        piv = next((r for r in range(rank, nr) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, nr):
            for j in range(c + 1, nc):
                m[r][j] = (m[rank][c] * m[r][j] - m[r][c] * m[rank][j]) // prev
            m[r][c] = 0
        prev = m[rank][c]
        rank += 1
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# --------------------------------------------------------------------------
# modular cross-check


_PRIME = 2147483629  # largest prime below 2^31


def _mod_p(x: Fraction, p: int) -> int:
    return x.numerator % p * pow(x.denominator % p, p - 2, p) % p


def specialized_rank(vectors: Sequence[dict], ncols: int, names: tuple[str, ...] = (), seed: int = 0, p: int = _PRIME) -> int | None:
    """Rank after substituting random rationals for the indeterminates, mod p.

    This is a lower bound for the symbolic rank and is only ever used as a
    consistency check.  Returns None for quadratic entries or when the
    specialization hits a pole or a bad prime.
    """
    rng = random.Random(seed)
    values = {n: Fraction(rng.randrange(2, 10**6), rng.randrange(1, 10**3)) for n in names}
    rows = []
    try:
        for v in vectors:
            row = [0] * ncols
            for j, x in v.items():
                if isinstance(x, RatFunc):
                    x = x.evaluate(values)
                elif not isinstance(x, (int, Fraction)):
                    return None
                if Fraction(x).denominator % p == 0:
                    return None
                row[j] = _mod_p(Fraction(x), p)
            rows.append(row)
    except (ZeroDivisionError, KeyError, FieldError):
        return None
    return kernels.rank_mod_p(rows, ncols, p) if rows and ncols else 0


__all__ = [
    "Echelon", "Subspace", "LinAlgError", "SingularMatrix", "kernel", "rank", "rank_dense", "sparse", "dense",
    "identity", "zeros", "matmul", "matvec", "transpose", "mat_add", "mat_scale", "mat_inverse", "mat_power",
    "is_zero_matrix", "bareiss_rank", "specialized_rank", "column_vectors", "specialize",
]
