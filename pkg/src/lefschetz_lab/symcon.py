"""Symplectic and contact structures, contactization and its inverse."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cohomology import NotClosed, betti, is_exact
from .exterior import KForm, contract, wedge, wedge_power
from .fieldcore import inv
from .liealg import (
    JacobiViolation, LieAlgebra, center, change_basis, commutator, is_morphism, subalgebra,
    ce_d,
)
from .linalg import Echelon, Subspace, dense, kernel, mat_inverse, rank_dense, sparse


class StructureError(ValueError):
    pass


class OddDimension(StructureError):
    pass


class EvenDimension(StructureError):
    pass


class Degenerate(StructureError):
    pass


class NotContact(StructureError):
    pass


class TrivialCenter(StructureError):
    pass


class DimensionMismatch(StructureError):
    pass


@dataclass
class SymplecticStructure:
    algebra: LieAlgebra
    omega: KForm
    n: int
    frobenius: bool = False

    @property
    def dim(self) -> int:
        return self.algebra.dim


@dataclass
class ContactStructure:
    algebra: LieAlgebra
    eta: KForm
    xi: tuple
    n: int

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def deta(self) -> KForm:
        return ce_d(self.algebra, self.eta)


def form_matrix(omega: KForm) -> list[list]:
    """W[i][j] = omega(e_i, e_j) for a 2-form."""
    n = omega.dim
    W = [[Fraction(0)] * n for _ in range(n)]
    for m, c in omega.coeffs.items():
        i = (m & -m).bit_length() - 1
        j = m.bit_length() - 1
        W[i][j] = c
        W[j][i] = -c
    return W


def form_on(omega: KForm, x: Sequence, y: Sequence):
    W = form_matrix(omega)
    return _bilinear(W, x, y)


def _bilinear(W, x, y):
    acc = Fraction(0)
    for i, a in enumerate(x):
        if a != 0:
            for j, b in enumerate(y):
                if b != 0 and W[i][j] != 0:
                    acc = acc + a * b * W[i][j]
    return acc


def verify_symplectic(h: LieAlgebra, omega: KForm) -> SymplecticStructure:
    if h.dim % 2:
        raise OddDimension(f"symplectic forms need even dimension, got {h.dim}")
    if omega.degree != 2 and omega:
        raise StructureError("omega must be a 2-form")
    if omega.dim != h.dim:
        raise StructureError("omega lives on the wrong dimension")
    n = h.dim // 2
    d_omega = ce_d(h, omega)
    if d_omega:
        raise NotClosed(omega, d_omega)
    if not wedge_power(omega, n):
        raise Degenerate("omega^n vanishes")
    return SymplecticStructure(h, omega, n, frobenius=is_exact(h, omega) is not None)


def verify_contact(g: LieAlgebra, eta: KForm) -> ContactStructure:
    if g.dim % 2 == 0:
        raise EvenDimension(f"contact forms need odd dimension, got {g.dim}")
    if eta.degree != 1 or eta.dim != g.dim:
        raise StructureError("eta must be a 1-form on the algebra")
    n = (g.dim - 1) // 2
    deta = ce_d(g, eta)
    if not wedge(eta, wedge_power(deta, n)):
        raise NotContact("eta ^ (d eta)^n vanishes")
    xi = reeb_vector(g, eta, deta)
    return ContactStructure(g, eta, tuple(xi), n)


def reeb_vector(g: LieAlgebra, eta: KForm, deta: KForm | None = None) -> list:
    """Unique xi with eta(xi) = 1 and iota_xi d eta = 0."""
    if deta is None:
        deta = ce_d(g, eta)
    N = g.dim
    W = form_matrix(deta)
    ech = Echelon(track=True)
    for i in range(N):
        col = {}
        c = eta.coeffs.get(1 << i)
        if c is not None:
            col[0] = c
        for j in range(N):
            if W[i][j] != 0:
                col[1 + j] = W[i][j]
        if ech.insert(col, i) is not None:
            raise NotContact("Reeb system is singular")
    sol = ech.solve({0: Fraction(1)})
    if sol is None:
        raise NotContact("no Reeb vector")
    return dense(sol, N)


def _fresh_name(taken: Sequence[str], base: str = "xi") -> str:
    name = base
    i = 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def contactize(s: SymplecticStructure, xi_name: str | None = None) -> ContactStructure:
    """Central extension by omega; xi is basis vector 0, h sits at 1..2n."""
    h = s.algebra
    W = form_matrix(s.omega)
    N = h.dim + 1
    table = {}
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            vec = {k + 1: c for k, c in h.bracket_basis(i, j).items()}
            if W[i][j] != 0:
                vec[0] = W[i][j]
            if vec:
                table[(i + 1, j + 1)] = vec
    names = (xi_name or _fresh_name(h.names),) + tuple(h.names)
    try:
        g = LieAlgebra(N, names, table, h.field)
    except JacobiViolation as exc:  # cannot happen for a closed omega
        raise AssertionError(f"contactization broke Jacobi: {exc}") from exc
    c = verify_contact(g, KForm.covector(0, N))
    assert c.xi == tuple(g.unit(0)), "Reeb vector of a contactization must be xi"
    return c


def horizontal_lift(a: KForm) -> KForm:
    """A form on h viewed on its contactization (indices shifted by one)."""
    return KForm(a.degree, a.dim + 1, {m << 1: c for m, c in a.coeffs.items()}, _trusted=True)


def horizontal_drop(a: KForm) -> KForm:
    if any(m & 1 for m in a.coeffs):
        raise StructureError("form is not horizontal")
    return KForm(a.degree, a.dim - 1, {m >> 1: c for m, c in a.coeffs.items()}, _trusted=True)


@dataclass
class Decontactization:
    structure: SymplecticStructure
    frame: list  # h basis vectors inside g
    pivot: int


def decontactize_with_frame(c: ContactStructure) -> Decontactization:
    g = c.algebra
    z = center(g)
    if z.dim == 0:
        raise TrivialCenter("the centre is trivial, decontactization is undefined")
    if z.dim != 1 or not z.contains(c.xi):
        raise AssertionError("centre of a contact algebra must be spanned by the Reeb vector")
    xi = list(c.xi)
    p = next(i for i, v in enumerate(xi) if v != 0)
    eta_vec = [c.eta.coeffs.get(1 << i, Fraction(0)) for i in range(g.dim)]
    frame = []
    keep = [j for j in range(g.dim) if j != p]
    for j in keep:
        v = g.unit(j)
        if eta_vec[j] != 0:
            v = [a - eta_vec[j] * b for a, b in zip(v, xi)]
        frame.append(v)
    ech = Echelon(track=True)
    for idx, v in enumerate(frame):
        ech.insert(sparse(v), idx)
    ech.insert(sparse(xi), "xi")
    table = {}
    omega = {}
    m = len(frame)
    for i in range(m):
        for j in range(i + 1, m):
            br = g.bracket_sparse(sparse(frame[i]), sparse(frame[j]))
            if not br:
                continue
            sol = ech.solve(br)
            w = sol.pop("xi", Fraction(0))
            # omega(h_i, h_j) = eta([h_i, h_j]) = -d eta(h_i, h_j)
            if w != 0:
                omega[(1 << i) | (1 << j)] = w
            if sol:
                table[(i, j)] = sol
    names = [g.names[j] for j in keep]
    h = LieAlgebra(m, names, table, g.field)
    s = verify_symplectic(h, KForm(2, m, omega))
    return Decontactization(s, frame, p)


def decontactize(c: ContactStructure) -> SymplecticStructure:
    return decontactize_with_frame(c).structure


def roundtrip_isomorphism(c: ContactStructure) -> tuple[ContactStructure, list[list]]:
    """contactize(decontactize(c)) together with the explicit isomorphism to c.

    The matrix sends basis vector 0 of the new algebra to xi and vector j+1
    to the j-th frame vector; it is checked to be a Lie isomorphism that
    pulls eta back to the new contact form.
    """
    dec = decontactize_with_frame(c)
    c2 = contactize(dec.structure, xi_name=_fresh_name(dec.structure.algebra.names))
    cols = [list(c.xi)] + [list(v) for v in dec.frame]
    N = c.dim
    phi = [[cols[j][i] for j in range(N)] for i in range(N)]
    mat_inverse(phi)  # raises when singular
    if not is_morphism(phi, c2.algebra, c.algebra):
        raise AssertionError("round trip map is not a Lie morphism")
    from .exterior import pullback

    if pullback(phi, c.eta, N) != c2.eta:
        raise AssertionError("round trip map does not preserve the contact form")
    return c2, phi


# --------------------------------------------------------------------------
# Benson-Gordon conditions


@dataclass
class BGReport:
    abelian_complement: bool
    even_dimensions: bool
    center_meets_commutator_trivially: bool
    split_representative: bool
    split_parts_nonexact: bool
    infinitesimal_symplectic: bool
    correction: KForm | None = None
    obstruction: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def flags(self) -> tuple[bool, ...]:
        return (
            self.abelian_complement, self.even_dimensions, self.center_meets_commutator_trivially,
            self.split_representative, self.split_parts_nonexact, self.infinitesimal_symplectic,
        )

    @property
    def all_pass(self) -> bool:
        return all(self.flags)


def _restricted_form(omega_mat, basis: Sequence[Sequence]) -> list[list]:
    return [[_bilinear(omega_mat, x, y) for y in basis] for x in basis]


def _matrix_to_form(M: Sequence[Sequence]) -> KForm:
    n = len(M)
    return KForm(2, n, {(1 << i) | (1 << j): M[i][j] for i in range(n) for j in range(i + 1, n) if M[i][j] != 0})


def verify_bg_conditions(s: SymplecticStructure, a_candidate: Subspace, seed: int = 0, tries: int = 30) -> BGReport:
    """Check the six Benson-Gordon conditions for a supplied complement.

    The 'cohomologous to a split form' condition is decided by solving
    omega'(a, n) = 0 for omega' = omega + d gamma; if the generic solution
    leaves a degenerate restriction we retry a few seeded random points of
    the affine solution space.
    """
    h = s.algebra
    N = h.dim
    b1 = betti(h, 1)
    if a_candidate.dim_ambient != N or a_candidate.dim != b1:
        raise DimensionMismatch(f"complement must have dimension b1 = {b1}")
    nsub = commutator(h)
    A = [list(r) for r in a_candidate.rows]
    Nb = [list(r) for r in nsub.rows]
    abelian = all(not h.bracket_sparse(sparse(x), sparse(y)) for x in A for y in A)
    complement = (a_candidate + nsub).dim == N and a_candidate.dim + nsub.dim == N
    rep = BGReport(False, False, False, False, False, False)
    rep.abelian_complement = abelian and complement
    rep.even_dimensions = a_candidate.dim % 2 == 0 and nsub.dim % 2 == 0
    rep.center_meets_commutator_trivially = center(h).intersection(nsub).dim == 0
    if not complement:
        rep.obstruction = "a does not complement [h, h]"
        return rep

    W = form_matrix(s.omega)
    # unknown gamma in Lambda^1: omega(a_i, n_j) - gamma([a_i, n_j]) = 0
    pairs = [(i, j) for i in range(len(A)) for j in range(len(Nb))]
    brs = [h.bracket(A[i], Nb[j]) for i, j in pairs]
    cols = [{r: brs[r][k] for r in range(len(pairs)) if brs[r][k] != 0} for k in range(N)]
    target = {r: _bilinear(W, A[i], Nb[j]) for r, (i, j) in enumerate(pairs)}
    target = {r: v for r, v in target.items() if v != 0}
    ech = Echelon(track=True)
    for k, col in enumerate(cols):
        ech.insert(col, k)
    sol = ech.solve(target)
    if sol is None:
        rep.obstruction = "no exact correction makes a and n omega-orthogonal"
        return rep
    homog = kernel(cols)
    rng = random.Random(seed)

    def corrected(gamma_vec):
        gamma = KForm(1, N, {1 << k: c for k, c in gamma_vec.items()})
        return gamma, s.omega + ce_d(h, gamma)

    best = None
    for attempt in range(tries + 1):
        g_vec = dict(sol)
        if attempt and homog:
            for v in homog:
                r = Fraction(rng.randint(-5, 5))
                for k, c in v.items():
                    g_vec[k] = g_vec.get(k, 0) + r * c
            g_vec = {k: c for k, c in g_vec.items() if c != 0}
        gamma, om = corrected(g_vec)
        Wp = form_matrix(om)
        Ma = _restricted_form(Wp, A)
        Mn = _restricted_form(Wp, Nb)
        ok = rank_dense(Ma) == len(A) and rank_dense(Mn) == len(Nb)
        best = (gamma, om, Wp, Ma, Mn)
        if ok or not homog:
            break
    gamma, om, Wp, Ma, Mn = best
    rep.correction = gamma
    rep.split_representative = rank_dense(Ma) == len(A) and rank_dense(Mn) == len(Nb)
    if not rep.split_representative:
        rep.obstruction = "omega restricted to a or n is degenerate for every correction tried"

    # omega_a, omega_n as forms on h via the projections of the splitting
    basis_cols = A + Nb
    P = [[basis_cols[j][i] for j in range(N)] for i in range(N)]
    Pinv = mat_inverse(P)
    la = len(A)

    def split_part(M, offset, size):
        # omega_part(e_k, e_l) = M(coords_part(e_k), coords_part(e_l))
        coords = [[Pinv[offset + r][k] for r in range(size)] for k in range(N)]
        out = {}
        for k in range(N):
            for l in range(k + 1, N):
                v = Fraction(0)
                for r in range(size):
                    if coords[k][r] == 0:
                        continue
                    for t in range(size):
                        if coords[l][t] != 0 and M[r][t] != 0:
                            v = v + coords[k][r] * coords[l][t] * M[r][t]
                if v != 0:
                    out[(1 << k) | (1 << l)] = v
        return KForm(2, N, out)

    omega_a = split_part(Ma, 0, la)
    omega_n = split_part(Mn, la, len(Nb))
    rep.details["omega_a"] = omega_a
    rep.details["omega_n"] = omega_n

    def closed_nonexact(alg, form):
        if not form or ce_d(alg, form):
            return False
        return is_exact(alg, form) is None

    def part_ok(basis, M, whole_form, prefix):
        # a zero-dimensional summand imposes nothing
        if not basis:
            return True
        sub = subalgebra(h, basis, [f"{prefix}{i + 1}" for i in range(len(basis))])
        return closed_nonexact(h, whole_form) and closed_nonexact(sub, _matrix_to_form(M))

    rep.split_parts_nonexact = (
        rep.split_representative
        and part_ok(A, Ma, omega_a, "a")
        and part_ok(Nb, Mn, omega_n, "n")
    )

    # ad(a) acts on (n, omega_n) by infinitesimal symplectomorphisms
    ok = True
    for x in A:
        adx = [h.bracket(x, y) for y in Nb]
        for p, y in enumerate(Nb):
            for q, z in enumerate(Nb):
                if _bilinear(Wp, adx[p], z) + _bilinear(Wp, y, adx[q]) != 0:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    rep.infinitesimal_symplectic = ok
    return rep


__all__ = [
    "SymplecticStructure", "ContactStructure", "verify_symplectic", "verify_contact", "contactize", "decontactize",
    "decontactize_with_frame", "roundtrip_isomorphism", "verify_bg_conditions", "BGReport", "form_matrix",
    "form_on", "reeb_vector", "horizontal_lift", "horizontal_drop", "StructureError", "OddDimension",
    "EvenDimension", "Degenerate", "NotContact", "TrivialCenter", "DimensionMismatch", "NotClosed",
    "change_basis", "contract", "inv",
]
