"""Chevalley-Eilenberg cohomology by exact elimination."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .exterior import KForm, monomial_masks, sparse_coords, sparse_coords_form
from .kernels import mask_rank
from .liealg import LieAlgebra, ce_d
from .linalg import Echelon, Subspace, dense, rank, specialized_rank


class NotClosed(ValueError):
    def __init__(self, form: KForm, differential: KForm):
        self.form = form
        self.differential = differential
        super().__init__("form is not closed")


def d_columns(g: LieAlgebra, k: int) -> list[dict]:
    """Sparse columns of the matrix of d: Lambda^k -> Lambda^(k+1)."""
    if k >= g.dim:
        return [{} for _ in monomial_masks(g.dim, k)] if k == g.dim else []
    return [{mask_rank(m): c for m, c in g.d_monomial(mask).items()} for mask in monomial_masks(g.dim, k)]


def d_matrix(g: LieAlgebra, k: int) -> list[list]:
    """Dense C(n,k+1) x C(n,k) matrix; column j is the image of the j-th colex monomial."""
    if not 0 <= k <= g.dim:
        raise ValueError(f"degree {k} outside 0..{g.dim}")
    rows = comb(g.dim, k + 1)
    cols = d_columns(g, k)
    return [[cols[j].get(i, Fraction(0)) for j in range(len(cols))] for i in range(rows)]


@dataclass
class CohomologyDescriptor:
    degree: int
    dim: int
    cocycles: Subspace
    coboundaries: Subspace
    representatives: tuple[KForm, ...]
    betti: int
    _solver: Echelon = field(repr=False, default=None)

    def class_coords(self, a: KForm) -> list:
        return class_coords(self, None, a)


def _build(g: LieAlgebra, k: int) -> CohomologyDescriptor:
    n = g.dim
    nk = comb(n, k)
    # Z^k: kernel of d_k
    if k < n:
        zech = Echelon(track=True)
        kernel_vecs = []
        for j, col in enumerate(d_columns(g, k)):
            dep = zech.insert(col, j)
            if dep is not None:
                kernel_vecs.append(dep)
    else:
        kernel_vecs = [{j: Fraction(1)} for j in range(nk)]
    Z = Subspace.from_sparse(nk, kernel_vecs)
    # B^k with preimage tracking: generators are d(e_I), I in Lambda^(k-1)
    solver = Echelon(track=True)
    if k >= 1:
        for j, col in enumerate(d_columns(g, k - 1)):
            if col:
                solver.insert(col, ("d", j))
    B = Subspace.from_sparse(nk, solver.basis())
    reps = []
    for row in Z.rows:
        vec = {i: c for i, c in enumerate(row) if c != 0}
        rem, _ = solver.reduce(vec)
        if rem:
            # keep the remainder modulo the coboundaries and earlier classes
            piv = min(rem)
            s = 1 / rem[piv] if isinstance(rem[piv], (int, Fraction)) else rem[piv].inverse()
            rem = {c: x * s for c, x in rem.items()}
            solver.insert(rem, ("r", len(reps)))
            reps.append(sparse_coords_form(k, n, rem))
    desc = CohomologyDescriptor(k, n, Z, B, tuple(reps), Z.dim - B.dim, solver)
    if desc.betti != len(reps):
        raise AssertionError("betti number disagrees with the number of representatives")
    return desc


def cohomology(g: LieAlgebra, k: int) -> CohomologyDescriptor:
    if not 0 <= k <= g.dim:
        raise ValueError(f"degree {k} outside 0..{g.dim}")
    key = ("H", k)
    hit = g._cache.get(key)
    if hit is None:
        hit = _build(g, k)
        g._cache[key] = hit
    return hit


def betti(g: LieAlgebra, k: int) -> int:
    return cohomology(g, k).betti


def betti_numbers(g: LieAlgebra) -> list[int]:
    return [betti(g, k) for k in range(g.dim + 1)]


def _require_closed(g: LieAlgebra, a: KForm):
    if a.degree < g.dim:
        da = ce_d(g, a)
        if da:
            raise NotClosed(a, da)


def _decompose(desc: CohomologyDescriptor, a: KForm):
    rem, combo = desc._solver.reduce(sparse_coords(a))
    if rem:
        raise AssertionError("closed form escaped Z^k; cohomology data is inconsistent")
    return {key: -c for key, c in combo.items()}


def class_coords(desc: CohomologyDescriptor, g: LieAlgebra | None, a: KForm) -> list:
    """Coordinates of [a] in the representative basis of desc."""
    if a.degree != desc.degree and a:
        raise ValueError(f"expected a {desc.degree}-form")
    if g is not None:
        _require_closed(g, a)
    combo = _decompose(desc, a)
    out = [Fraction(0)] * desc.betti
    for key, c in combo.items():
        if key[0] == "r":
            out[key[1]] = c
    return out


def is_exact(g: LieAlgebra, a: KForm) -> KForm | None:
    """A preimage under d, or None when a is closed but not exact."""
    _require_closed(g, a)
    if not a:
        return KForm.zero(max(a.degree - 1, 0), g.dim)
    if a.degree == 0:
        return None
    desc = cohomology(g, a.degree)
    combo = _decompose(desc, a)
    if any(key[0] == "r" for key in combo):
        return None
    masks = monomial_masks(g.dim, a.degree - 1)
    pre = KForm(a.degree - 1, g.dim, {masks[key[1]]: c for key, c in combo.items()})
    if ce_d(g, pre) != a:
        raise AssertionError("preimage check failed")
    return pre


def class_of(g: LieAlgebra, a: KForm) -> list:
    return class_coords(cohomology(g, a.degree), g, a)


def cohomologous(g: LieAlgebra, a: KForm, b: KForm) -> bool:
    return not any(class_of(g, a - b))


def rank_cross_check(g: LieAlgebra, k: int, seed: int = 0) -> tuple[int, int | None]:
    """(exact rank of d_k, rank after random specialization mod p)."""
    cols = d_columns(g, k)
    exact = rank(cols)
    spec = specialized_rank(cols, comb(g.dim, k + 1), g.field.vars, seed) if k < g.dim else 0
    return exact, spec


__all__ = [
    "CohomologyDescriptor", "NotClosed", "d_matrix", "d_columns", "betti", "betti_numbers", "cohomology",
    "is_exact", "class_coords", "class_of", "cohomologous", "rank_cross_check", "dense",
]
