"""Symplectic and contact s-Lefschetz conditions.

Contact mode works with the space P_k of closed, xi-horizontal, primitive
k-forms.  For a basis beta_j of P_k we record X_j, the class of beta_j in
H^k, and Y_j, the class of eta ^ (d eta)^(n-k) ^ beta_j in H^(2n+1-k).  The
relation {([beta], [image])} is then the row space of [X | Y] and every flag
of the report is a rank statement about X, Y and [X | Y].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .cohomology import class_coords, cohomology, is_exact
from .exterior import KForm, contract, sparse_coords, sparse_coords_form, wedge, wedge_power, monomial_masks
from .liealg import LieAlgebra, ce_d, is_unimodular
from .linalg import Echelon, kernel, sparse
from .symcon import ContactStructure, SymplecticStructure, contactize


class NotUnimodular(ValueError):
    pass


class TheoremInconsistency(AssertionError):
    """Both sides of the main equivalence disagree, which signals a bug."""


@dataclass
class DegreeReport:
    k: int
    domain_covered: bool
    well_defined: bool
    injective: bool
    surjective: bool
    witnesses: dict = field(default_factory=dict)
    source_dim: int = 0
    target_dim: int = 0

    @property
    def verdict(self) -> bool:
        return self.domain_covered and self.well_defined and self.injective and self.surjective


@dataclass
class LefschetzReport:
    mode: str
    s: int
    degrees: list[DegreeReport]

    @property
    def verdict(self) -> bool:
        return all(d.verdict for d in self.degrees)

    def degree(self, k: int) -> DegreeReport:
        return self.degrees[k]

    def first_failure(self) -> DegreeReport | None:
        return next((d for d in self.degrees if not d.verdict), None)


def _combine(forms: Sequence[KForm], combo: dict, degree: int, dim: int) -> KForm:
    out = KForm.zero(degree, dim)
    for j, c in sorted(combo.items()):
        out = out + forms[j].scale(c)
    return out


def _rank(rows) -> int:
    ech = Echelon()
    for r in rows:
        ech.insert(r)
    return len(ech)


def _uncovered(rows: Sequence[dict], size: int):
    """First unit vector outside the row span, or None."""
    ech = Echelon()
    for r in rows:
        ech.insert(r)
    for i in range(size):
        if not ech.contains({i: Fraction(1)}):
            return i
    return None


def _joined(x: Sequence, y: Sequence) -> dict:
    out = {i: v for i, v in enumerate(x) if v != 0}
    off = len(x)
    out.update({off + i: v for i, v in enumerate(y) if v != 0})
    return out


# --------------------------------------------------------------------------
# symplectic


def symplectic_lefschetz(s: SymplecticStructure, deg: int) -> LefschetzReport:
    """Bijectivity of [a] -> [omega^(n-k) ^ a] from H^k to H^(2n-k) for k <= deg."""
    h, n = s.algebra, s.n
    if not 0 <= deg <= n:
        raise ValueError(f"degree bound {deg} outside 0..{n}")
    out = []
    for k in range(deg + 1):
        src = cohomology(h, k)
        tgt = cohomology(h, 2 * n - k)
        Lp = wedge_power(s.omega, n - k)
        images = []
        for r in src.representatives:
            im = wedge(Lp, r)
            images.append(class_coords(tgt, h, im))
        ech = Echelon(track=True)
        witnesses: dict = {}
        for j, y in enumerate(images):
            dep = ech.insert(sparse(y), j)
            if dep is not None and "kernel" not in witnesses:
                witnesses["kernel"] = _combine(src.representatives, dep, k, h.dim)
        rk = len(ech)
        surj = rk == tgt.betti
        if not surj:
            i = _uncovered([sparse(y) for y in images], tgt.betti)
            witnesses["cokernel"] = tgt.representatives[i]
        out.append(DegreeReport(k, True, True, rk == src.betti, surj, witnesses, src.betti, tgt.betti))
    return LefschetzReport("symplectic", deg, out)


# --------------------------------------------------------------------------
# contact


def _primitive_power(c: ContactStructure, k: int) -> KForm:
    return wedge_power(c.deta, c.n - k + 1)


def _constraint_vector(c: ContactStructure, k: int, beta: KForm, Lp: KForm, with_d: bool) -> dict:
    """Stack (d beta, iota_xi beta, L^(n-k+1) beta) into one sparse vector."""
    N = c.dim
    out: dict = {}
    off = 0
    if with_d:
        if k < N:
            for i, v in sparse_coords(ce_d(c.algebra, beta)).items():
                out[i] = v
        off += comb(N, k + 1)
    if k >= 1:
        for i, v in sparse_coords(contract(c.xi, beta)).items():
            out[off + i] = v
    off += comb(N, k - 1) if k >= 1 else 0
    top = Lp.degree + k
    if top <= N:
        prod = wedge(Lp, beta)
        if prod.degree == top:
            for i, v in sparse_coords(prod).items():
                out[off + i] = v
    return out


def admissible_basis(c: ContactStructure, k: int) -> list[KForm]:
    """Basis of closed, xi-horizontal, primitive k-forms."""
    N = c.dim
    Lp = _primitive_power(c, k)
    cols = [
        _constraint_vector(c, k, KForm(k, N, {m: Fraction(1)}, _trusted=True), Lp, True)
        for m in monomial_masks(N, k)
    ]
    return [sparse_coords_form(k, N, v) for v in kernel(cols)]


def lefschetz_image(c: ContactStructure, k: int, beta: KForm) -> KForm:
    """eta ^ (d eta)^(n-k) ^ beta."""
    return wedge(wedge(c.eta, wedge_power(c.deta, c.n - k)), beta)


def horizontal_primitive_rep(c: ContactStructure, k: int, coords: Sequence) -> KForm | None:
    """A closed horizontal primitive form in the given class of H^k, or None."""
    g, N = c.algebra, c.dim
    desc = cohomology(g, k)
    if len(coords) != desc.betti:
        raise ValueError(f"expected {desc.betti} class coordinates")
    rep = KForm.zero(k, N)
    for r, x in zip(desc.representatives, coords):
        if x != 0:
            rep = rep + r.scale(x)
    Lp = _primitive_power(c, k)
    target = _constraint_vector(c, k, rep, Lp, False)
    if not target:
        return rep
    if k == 0:
        return None
    ech = Echelon(track=True)
    for j, m in enumerate(monomial_masks(N, k - 1)):
        dg = ce_d(g, KForm(k - 1, N, {m: Fraction(1)}, _trusted=True))
        if dg:
            ech.insert(_constraint_vector(c, k, dg, Lp, False), j)
    sol = ech.solve({i: -v for i, v in target.items()})
    if sol is None:
        return None
    masks = monomial_masks(N, k - 1)
    gamma = KForm(k - 1, N, {masks[j]: v for j, v in sol.items()})
    beta = rep + ce_d(g, gamma)
    assert not _constraint_vector(c, k, beta, Lp, True), "solved representative violates the constraints"
    return beta


def contact_lefschetz(c: ContactStructure, deg: int) -> LefschetzReport:
    g, n = c.algebra, c.n
    if not 0 <= deg <= n:
        raise ValueError(f"degree bound {deg} outside 0..{n}")
    out = []
    for k in range(deg + 1):
        src = cohomology(g, k)
        tgt = cohomology(g, 2 * n + 1 - k)
        P = admissible_basis(c, k)
        X, Y = [], []
        for beta in P:
            im = lefschetz_image(c, k, beta)
            if im.degree < g.dim and ce_d(g, im):
                raise AssertionError("image of an admissible form is not closed")
            X.append(class_coords(src, None, beta))
            Y.append(class_coords(tgt, None, im))
        witnesses: dict = {}
        h, hp = src.betti, tgt.betti
        Xs = [sparse(x) for x in X]
        Ys = [sparse(y) for y in Y]
        rX, rY = _rank(Xs), _rank(Ys)
        rXY = _rank(_joined(x, y) for x, y in zip(X, Y))
        covered = rX == h
        if not covered:
            i = _uncovered(Xs, h)
            witnesses["uncovered"] = src.representatives[i]
        well = rXY == rX
        if not well:
            ech = Echelon(track=True)
            for j, x in enumerate(Xs):
                dep = ech.insert(x, j)
                if dep is not None and any(sum((dep.get(t, 0) * Y[t][q] for t in dep), Fraction(0)) != 0 for q in range(hp)):
                    witnesses["ill_defined"] = _combine(P, dep, k, g.dim)
                    break
        injective = rY == rXY
        if not injective:
            ech = Echelon(track=True)
            for j, y in enumerate(Ys):
                dep = ech.insert(y, j)
                if dep is None:
                    continue
                if any(sum((dep.get(t, 0) * X[t][q] for t in dep), Fraction(0)) != 0 for q in range(h)):
                    w = _combine(P, dep, k, g.dim)
                    assert is_exact(g, lefschetz_image(c, k, w)) is not None
                    witnesses["kernel"] = w
                    break
        surjective = rY == hp
        if not surjective:
            i = _uncovered(Ys, hp)
            witnesses["cokernel"] = tgt.representatives[i]
        out.append(DegreeReport(k, covered, well, injective, surjective, witnesses, h, hp))
    return LefschetzReport("contact", deg, out)


# --------------------------------------------------------------------------


@dataclass
class TheoremCheck:
    h_verdict: bool
    g_verdict: bool
    agree: bool
    h_report: LefschetzReport
    g_report: LefschetzReport


def theorem_main_check(s: SymplecticStructure) -> TheoremCheck:
    """1-Lefschetz for (h, omega) versus its contactization."""
    if not is_unimodular(s.algebra):
        raise NotUnimodular("the equivalence is stated for unimodular algebras")
    hr = symplectic_lefschetz(s, 1)
    gr = contact_lefschetz(contactize(s), 1)
    if hr.verdict != gr.verdict:
        raise TheoremInconsistency(f"symplectic verdict {hr.verdict} but contact verdict {gr.verdict}")
    return TheoremCheck(hr.verdict, gr.verdict, True, hr, gr)


def commuting_square(s: SymplecticStructure) -> list[tuple[list, list]]:
    """For each H^1(h) class beta: classes of Lef(pi* beta) and eta ^ L(beta) in H^2n(g).

    Here L(beta) = omega^(n-1) ^ beta and pi* shifts indices past xi.
    """
    from .symcon import horizontal_lift

    c = contactize(s)
    g, n = c.algebra, s.n
    tgt = cohomology(g, 2 * n)
    out = []
    for r in cohomology(s.algebra, 1).representatives:
        beta = horizontal_lift(r)
        lef = lefschetz_image(c, 1, beta)
        eta_l = wedge(c.eta, horizontal_lift(wedge(wedge_power(s.omega, n - 1), r)))
        out.append((class_coords(tgt, g, lef), class_coords(tgt, g, eta_l)))
    return out


__all__ = [
    "LefschetzReport", "DegreeReport", "symplectic_lefschetz", "contact_lefschetz", "horizontal_primitive_rep",
    "theorem_main_check", "TheoremCheck", "NotUnimodular", "TheoremInconsistency", "admissible_basis",
    "lefschetz_image", "commuting_square",
]
