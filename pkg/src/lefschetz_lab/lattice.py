"""Certificates for the lattice criterion of almost nilpotent groups.

A group R x_D N with a codimension one nilpotent ideal has a lattice when
there is a t0 and a rational basis of the ideal in which exp(t0 D) is an
integer matrix.  We only certify a supplied witness: the derivation is
given as a block decomposition whose scaled blocks already encode
exp(t0 * lambda) = alpha^m with alpha a root of x^2 - k x + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .fieldcore import Quad, alpha_field, is_integer, is_rational, quadratic_root
from .lefschetz import NotUnimodular
from .liealg import LieAlgebra, is_nilpotent, is_unimodular, subalgebra
from .linalg import (
    Echelon, SingularMatrix, Subspace, identity, is_zero_matrix, mat_add, mat_inverse, mat_power, mat_scale,
    matmul, sparse, zeros,
)


class LatticeError(ValueError):
    pass


class WrongCodimension(LatticeError):
    pass


class BlockSpecError(LatticeError):
    pass


@dataclass(frozen=True)
class Block:
    kind: str  # "nilpotent" | "scaled"
    N: tuple
    m: int = 0

    @property
    def size(self) -> int:
        return len(self.N)

    @classmethod
    def nilpotent(cls, N: Sequence[Sequence]) -> "Block":
        return cls("nilpotent", _freeze(N))

    @classmethod
    def scaled(cls, m: int, N: Sequence[Sequence] | None = None, size: int = 1) -> "Block":
        if N is None:
            N = [[0] * size for _ in range(size)]
        return cls("scaled", _freeze(N), int(m))


def _freeze(N) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in N)


def jordan_nilpotent(n: int) -> list[list]:
    """Ones on the subdiagonal: e_i -> e_(i+1)."""
    return [[Fraction(int(i == j + 1)) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class DerivationBlockSpec:
    blocks: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if self.k < 3:
            raise BlockSpecError("k must be at least 3")
        for b in self.blocks:
            if b.kind not in ("nilpotent", "scaled"):
                raise BlockSpecError(f"unknown block kind {b.kind!r}")
            if any(len(r) != b.size for r in b.N):
                raise BlockSpecError("block matrices must be square")
            if not is_zero_matrix(mat_power([list(r) for r in b.N], b.size)):
                raise BlockSpecError("block matrix is not nilpotent")

    @property
    def size(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def alpha(self) -> Quad:
        return quadratic_root(self.k)

    def log_matrix(self, t) -> list[list]:
        """The derivation itself with t standing for t0 * log-parameter."""
        n = self.size
        out = zeros(n, n)
        off = 0
        for b in self.blocks:
            for i in range(b.size):
                for j in range(b.size):
                    v = b.N[i][j]
                    if b.kind == "scaled" and i == j:
                        v = v + b.m * t
                    out[off + i][off + j] = v
            off += b.size
        return out


def _exp_nilpotent(N: Sequence[Sequence]) -> list[list]:
    n = len(N)
    out = identity(n)
    term = identity(n)
    for j in range(1, n):
        term = matmul(term, N)
        if is_zero_matrix(term):
            break
        out = mat_add(out, mat_scale(Fraction(1, factorial(j)), term))
    return out


def exact_exp(spec: DerivationBlockSpec) -> list[list]:
    """exp(t0 D) over Q(alpha), assembled block by block."""
    alpha = spec.alpha
    n = spec.size
    out = zeros(n, n)
    off = 0
    for b in spec.blocks:
        E = _exp_nilpotent([list(r) for r in b.N])
        if b.kind == "scaled":
            E = mat_scale(alpha ** b.m, E)
        for i in range(b.size):
            for j in range(b.size):
                out[off + i][off + j] = E[i][j]
        off += b.size
    return out


def companion_matrix(coeffs: Sequence[int]) -> list[list]:
    """Companion matrix of the monic x^n + c_(n-1) x^(n-1) + ... + c_0.

    ``coeffs`` lists c_0 .. c_(n-1); column j is the image of e_j.
    """
    n = len(coeffs)
    out = zeros(n, n)
    for j in range(n - 1):
        out[j + 1][j] = Fraction(1)
    for i in range(n):
        out[i][n - 1] = Fraction(-coeffs[i])
    return out


def poly_power_coeffs(base: Sequence[int], e: int) -> list[int]:
    """Coefficients (low degree first) of base^e."""
    out = [1]
    for _ in range(e):
        nxt = [0] * (len(out) + len(base) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(base):
                nxt[i + j] += a * b
        out = nxt
    return out


# --------------------------------------------------------------------------


def _ideal_echelon(basis: Sequence[Sequence]) -> Echelon:
    ech = Echelon(track=True)
    for i, v in enumerate(basis):
        if ech.insert(sparse(v), i) is not None:
            raise LatticeError("ideal basis is linearly dependent")
    return ech


def verify_nilpotent_ideal(g: LieAlgebra, ideal: Subspace | Sequence[Sequence]) -> bool:
    if not isinstance(ideal, Subspace):
        ideal = Subspace(g.dim, ideal)
    if ideal.dim != g.dim - 1:
        raise WrongCodimension(f"ideal has dimension {ideal.dim}, expected {g.dim - 1}")
    ech = Echelon()
    for p, r in zip(ideal.pivots, ideal.rows):
        ech.rows[p] = sparse(r)
    for i in range(g.dim):
        for r in ideal.rows:
            br = g.bracket_sparse({i: Fraction(1)}, sparse(r))
            if br and not ech.contains(br):
                return False
    return is_nilpotent(subalgebra(g, [list(r) for r in ideal.rows]))


def ideal_structure_constants(g: LieAlgebra, basis: Sequence[Sequence]) -> dict:
    """{(i, j): {k: c}} for [b_i, b_j] = sum_k c b_k."""
    ech = _ideal_echelon(basis)
    out = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            br = g.bracket_sparse(sparse(basis[i]), sparse(basis[j]))
            if not br:
                continue
            sol = ech.solve(br)
            if sol is None:
                raise LatticeError("span of the basis is not closed under the bracket")
            out[(i, j)] = sol
    return out


@dataclass
class LatticeCertificate:
    algebra_id: str
    ideal_basis: list
    candidate: list
    ideal_nilpotent: bool
    rational_basis_ok: bool
    structure_constants: dict
    exp_matrix: list
    integral_ok: bool
    irrational_constants: list = field(default_factory=list)
    offending_entries: list = field(default_factory=list)
    derivation_matches: bool | None = None

    @property
    def valid(self) -> bool:
        return self.ideal_nilpotent and self.rational_basis_ok and self.integral_ok


def lattice_check(g: LieAlgebra, ideal: Sequence[Sequence], spec: DerivationBlockSpec, candidate: Sequence[Sequence],
                  transversal: Sequence | None = None, algebra_id: str = "") -> LatticeCertificate:
    """Certify that ``candidate`` is a rational basis in which exp(t0 D) is integral.

    ``ideal`` lists the ideal basis as vectors of g; ``candidate`` is the
    square matrix whose column j gives the j-th new basis vector in ideal
    coordinates.  With ``transversal`` the derivation ad_x restricted to
    the ideal is compared against the block spec, t0 being the algebra's
    indeterminate.
    """
    if not is_unimodular(g):
        raise NotUnimodular("non-unimodular groups have no lattices")
    basis = [list(v) for v in ideal]
    n = len(basis)
    if spec.size != n:
        raise BlockSpecError(f"block spec covers {spec.size} indices, ideal has {n}")
    if len(candidate) != n or any(len(r) != n for r in candidate):
        raise LatticeError("candidate must be a square matrix on the ideal")
    nil = verify_nilpotent_ideal(g, basis)
    P = [list(r) for r in candidate]
    try:
        Pinv = mat_inverse(P)
    except SingularMatrix as exc:
        raise LatticeError("candidate basis is singular") from exc

    consts = ideal_structure_constants(g, basis)
    cols = [[P[r][j] for r in range(n)] for j in range(n)]
    new_consts = {}
    irrational = []
    for i in range(n):
        for j in range(i + 1, n):
            # [c_i, c_j] in ideal coordinates, then in candidate coordinates
            acc = [Fraction(0)] * n
            for (r, s), vec in consts.items():
                coef = cols[i][r] * cols[j][s] - cols[i][s] * cols[j][r]
                if coef != 0:
                    for t, c in vec.items():
                        acc[t] = acc[t] + coef * c
            if not any(x != 0 for x in acc):
                continue
            coords = [sum((Pinv[a][b] * acc[b] for b in range(n) if acc[b] != 0), Fraction(0)) for a in range(n)]
            vec = {k: c for k, c in enumerate(coords) if c != 0}
            new_consts[(i, j)] = vec
            irrational.extend((i, j, k) for k, c in vec.items() if not is_rational(c))

    E = exact_exp(spec)
    conj = matmul(Pinv, matmul(E, P))
    offending = [(i, j) for i in range(n) for j in range(n) if not is_integer(conj[i][j])]

    matches = None
    if transversal is not None:
        matches = _derivation_matches(g, basis, spec, transversal)

    return LatticeCertificate(
        algebra_id, basis, P, nil, not irrational, new_consts, conj, not offending, irrational, offending, matches,
    )


def _derivation_matches(g: LieAlgebra, basis, spec: DerivationBlockSpec, x: Sequence) -> bool:
    if len(g.field.vars) != 1:
        return False
    t = g.field.var(g.field.vars[0])
    ech = _ideal_echelon(basis)
    n = len(basis)
    D = zeros(n, n)
    for j, b in enumerate(basis):
        br = g.bracket_sparse(sparse(x), sparse(b))
        sol = ech.solve(br) if br else {}
        if sol is None:
            return False
        for i, c in sol.items():
            D[i][j] = c
    return D == spec.log_matrix(t)


# --------------------------------------------------------------------------


@dataclass
class BGSolutionSpace:
    k: int
    matrix: list
    rank_of_M: int
    kernel_dim: int
    parametrization_ok: bool
    p: object
    q: object


def bg_matrix(k: int) -> list[list[int]]:
    return [
        [0, 1, k * k - 1, k * (k * k - 2)],
        [1, k, k, k * k - 1],
        [k, k * k - 1, 1, k],
        [k * k - 1, k * (k * k - 2), 0, 1],
    ]


def bg_parametrization(k: int, u, v) -> tuple:
    """(p1, p2, q1, q2) as functions of (u, v)."""
    s = Fraction(1, k * k - 1)
    w = k * (k * k - 2)
    return (-w * s * u - s * v, Fraction(u), -s * u - w * s * v, Fraction(v))


def bg_solution_space(k: int) -> BGSolutionSpace:
    if k < 3:
        raise ValueError("k must be at least 3")
    from .linalg import bareiss_rank

    M = bg_matrix(k)
    rk = bareiss_rank(M)
    ok = True
    for u, v in ((1, 0), (0, 1)):
        vec = bg_parametrization(k, u, v)
        if any(sum((Fraction(a) * b for a, b in zip(row, vec)), Fraction(0)) != 0 for row in M):
            ok = False
    # the two parametrization vectors must span the whole kernel
    ok = ok and rk == 2
    alpha = quadratic_root(k)
    p1, p2, q1, q2 = bg_parametrization(k, 0, 1 - k * k)
    return BGSolutionSpace(k, M, rk, 4 - rk, ok, p1 + p2 * alpha, q1 + q2 * alpha)


__all__ = [
    "Block", "DerivationBlockSpec", "LatticeCertificate", "LatticeError", "WrongCodimension", "NotUnimodular",
    "BlockSpecError", "exact_exp", "lattice_check", "verify_nilpotent_ideal", "bg_solution_space", "bg_matrix",
    "bg_parametrization", "companion_matrix", "poly_power_coeffs", "jordan_nilpotent", "ideal_structure_constants",
    "BGSolutionSpace", "alpha_field",
]
