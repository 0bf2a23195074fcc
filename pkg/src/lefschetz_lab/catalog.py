"""Named algebras, structures and forms used throughout the package.

Every constructor is deterministic.  Bases are ordered as listed in the
docstrings; contactizations put the Reeb vector ``xi`` first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .exterior import KForm, parse_form, wedge_all
from .fieldcore import FieldSpec, Quad, quadratic_root
from .lattice import Block, DerivationBlockSpec, companion_matrix, exact_exp, jordan_nilpotent, poly_power_coeffs
from .liealg import LieAlgebra, build_algebra
from .linalg import matvec
from .symcon import ContactStructure, SymplecticStructure, contactize, verify_contact, verify_symplectic


class CatalogError(ValueError):
    pass


class UnknownEntry(CatalogError, KeyError):
    pass


def _form(text: str, names: Sequence[str], spec: FieldSpec) -> KForm:
    return parse_form(text, names, spec)


# --------------------------------------------------------------------------
# small algebras


def heisenberg(n: int) -> ContactStructure:
    """h_(2n+1) with basis x1..xn, y1..yn, z and [x_i, y_i] = z; eta = z^*."""
    if n < 1:
        raise CatalogError("n must be positive")
    names = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["z"]
    entries = [(i, n + i, 2 * n, 1) for i in range(n)]
    g = build_algebra(2 * n + 1, names, entries, FieldSpec())
    return verify_contact(g, KForm.covector(2 * n, 2 * n + 1))


def abelian(n: int) -> SymplecticStructure:
    """R^(2n) with omega = sum e^(2i-1) ^ e^(2i)."""
    dim = 2 * n
    h = LieAlgebra(dim, [f"e{i + 1}" for i in range(dim)], {})
    omega = KForm(2, dim, {(1 << (2 * i)) | (1 << (2 * i + 1)): Fraction(1) for i in range(n)})
    return verify_symplectic(h, omega)


def h3_plus_r() -> SymplecticStructure:
    """h_3 + R: [e1, e2] = e3, e4 central; omega = e1^e4 + e2^e3."""
    names = ["e1", "e2", "e3", "e4"]
    h = build_algebra(4, names, [(0, 1, 2, 1)], FieldSpec())
    return verify_symplectic(h, _form("e1^e4 + e2^e3", names, FieldSpec()))


def aff_r() -> SymplecticStructure:
    """aff(R): [e1, e2] = e2 with the exact form e1^e2."""
    names = ["e1", "e2"]
    h = build_algebra(2, names, [(0, 1, 1, 1)], FieldSpec())
    return verify_symplectic(h, _form("e1^e2", names, FieldSpec()))


def sl2() -> ContactStructure:
    """sl(2, R) in the basis h, e, f with eta = h^*; its centre is trivial."""
    names = ["h", "e", "f"]
    g = build_algebra(3, names, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)], FieldSpec())
    return verify_contact(g, KForm.covector(0, 3))


def e2() -> LieAlgebra:
    """Euclidean algebra e(2): solvable but not completely solvable."""
    return build_algebra(3, ["e1", "e2", "e3"], [(0, 1, 2, 1), (0, 2, 1, -1)], FieldSpec())


# --------------------------------------------------------------------------
# almost abelian family: basis f1, f2, u1..um, v1..vm


def _almost_abelian_names(m: int) -> list[str]:
    return ["f1", "f2"] + [f"u{i + 1}" for i in range(m)] + [f"v{i + 1}" for i in range(m)]


@dataclass
class Example41:
    symplectic: SymplecticStructure
    contact: ContactStructure
    forms: dict
    k_list: tuple
    relation: str

    @property
    def n(self) -> int:
        return self.symplectic.n


def _gamma_bar_top(m: int, dim: int, skip: Sequence[int] = ()) -> KForm:
    """x^1 ^ ... ^ x^(2m) on u_0 with the listed x-indices (1-based) removed."""
    idx = [2 + a - 1 for a in range(1, 2 * m + 1) if a not in skip]
    return KForm.monomial(idx, dim)


def example_41(k_list: Sequence[int], relation: str = "independent") -> Example41:
    """[f1, u_i] = t_i u_i, [f1, v_i] = -t_i v_i; omega = delta + sum u^i ^ v^i.

    Distinct k get their own indeterminate t<k>; with ``relation="all_equal"``
    every k must agree and a single t is used.
    """
    k_list = tuple(int(k) for k in k_list)
    m = len(k_list)
    if m < 1:
        raise CatalogError("need at least one k")
    if any(k < 3 for k in k_list):
        raise CatalogError("every k must be at least 3")
    if relation == "independent":
        distinct = sorted(set(k_list))
        var_of = {k: f"t{k}" for k in distinct} if len(distinct) > 1 else {distinct[0]: "t"}
    elif relation == "all_equal":
        if len(set(k_list)) != 1:
            raise CatalogError("all_equal needs identical k values")
        var_of = {k_list[0]: "t"}
    else:
        raise CatalogError(f"unknown relation {relation!r}")
    spec = FieldSpec.rational_functions(sorted(set(var_of.values())))
    names = _almost_abelian_names(m)
    entries = []
    for i, k in enumerate(k_list):
        t = spec.var(var_of[k])
        entries.append((0, 2 + i, {2 + i: t}))
        entries.append((0, 2 + m + i, {2 + m + i: -t}))
    h = build_algebra(2 * m + 2, names, entries, spec)
    dim = h.dim
    n = m + 1
    gamma = [KForm.monomial([0, 1], dim)] + [KForm.monomial([2 + i, 2 + m + i], dim) for i in range(m)]
    omega = sum(gamma[1:], gamma[0])
    s = verify_symplectic(h, omega)
    c = contactize(s)

    forms: dict = {"delta": gamma[0], "Gamma": _gamma_bar_top(m, dim), "omega": omega}
    gbar = []
    for l in range(n):
        gbar.append(wedge_all([gamma[j] for j in range(n) if j != l], dim))
    for l in range(n):
        forms[f"gamma{l + 1}"] = gamma[l]
        forms[f"gammabar{l + 1}"] = gbar[l]
    sigma = [omega] + [gamma[l] - gamma[0] for l in range(1, n)]
    sbar0 = gbar[0]
    for l in range(1, n):
        sbar0 = sbar0 + gbar[l].scale(Fraction((-1) ** l))
    sigmabar = [sbar0] + [gbar[l] - gbar[0] for l in range(1, n)]
    for l in range(n):
        forms[f"sigma{l + 1}"] = sigma[l]
        forms[f"sigmabar{l + 1}"] = sigmabar[l]
    for i in range(m):
        for j in range(m):
            if i != j:
                forms[f"theta{i + 1}|{j + 1}"] = KForm.monomial([2 + i, 2 + m + j], dim)
    forms["W"] = sigma[1:]
    forms["Wbar"] = sigmabar[1:]
    return Example41(s, c, forms, k_list, relation)


def gamma_a(m: int, a: int) -> KForm:
    """Gamma with x^a removed, on the (2m+2)-dimensional h_A."""
    return _gamma_bar_top(m, 2 * m + 2, (a,))


def gamma_bc(m: int, b: int, c: int) -> KForm:
    if not b < c:
        raise CatalogError("need b < c")
    return _gamma_bar_top(m, 2 * m + 2, (b, c))


def example_42(k: int, m: int) -> tuple[SymplecticStructure, ContactStructure]:
    """A_0 = J_m(t) + J_m(-t): [f1, u_i] = t u_i + u_(i+1), same for v with -t.

    omega = f^1 ^ f^2 + sum (-1)^(i+1) u^i ^ v^(m+1-i).
    """
    if k < 3:
        raise CatalogError("k must be at least 3")
    if m < 2:
        raise CatalogError("m must be at least 2")
    spec = FieldSpec.rational_functions(["t"])
    t = spec.var("t")
    names = _almost_abelian_names(m)
    entries = []
    for i in range(m):
        u, v = 2 + i, 2 + m + i
        uterms = {u: t}
        vterms = {v: -t}
        if i + 1 < m:
            uterms[u + 1] = Fraction(1)
            vterms[v + 1] = Fraction(1)
        entries.append((0, u, uterms))
        entries.append((0, v, vterms))
    h = build_algebra(2 * m + 2, names, entries, spec)
    dim = h.dim
    omega = KForm.monomial([0, 1], dim)
    for i in range(m):
        omega = omega + KForm.monomial([2 + i, 2 + m + (m - 1 - i)], dim, (-1) ** i)
    s = verify_symplectic(h, omega)
    return s, contactize(s)


# --------------------------------------------------------------------------
# Benson-Gordon: basis w1, w2, x1, y1, z1, x2, y2, z2

BG_NAMES = ("w1", "w2", "x1", "y1", "z1", "x2", "y2", "z2")


def bg_algebra(scale=Fraction(1), field: FieldSpec | None = None) -> LieAlgebra:
    """h_BG; ``scale`` multiplies every bracket with w1 (the rescaled variant uses t)."""
    w1, w2, x1, y1, z1, x2, y2, z2 = range(8)
    entries = [
        (x1, y1, z1, Fraction(1)), (x2, y2, z2, Fraction(1)),
        (w1, x1, x1, scale), (w1, y1, y1, -2 * scale), (w1, z1, z1, -scale),
        (w1, x2, x2, -scale), (w1, y2, y2, 2 * scale), (w1, z2, z2, scale),
    ]
    return build_algebra(8, BG_NAMES, entries, field or FieldSpec())


def bg_omega(a, b, c, e, f, field: FieldSpec) -> KForm:
    idx = {n: i for i, n in enumerate(BG_NAMES)}
    terms = [(a, "w1", "w2"), (b, "x1", "z1"), (c, "x2", "z2"), (e, "x1", "x2"), (f, "y1", "y2")]
    out = KForm.zero(2, 8)
    for coef, p, q in terms:
        coef = field.coerce(coef)
        if coef != 0:
            out = out + KForm.monomial([idx[p], idx[q]], 8, coef)
    return out


def example_bg(a=1, b=1, c=1, e=0, f=1, rescaled: bool = False) -> tuple[SymplecticStructure, ContactStructure]:
    """omega = a w^1w^2 + b x^1z^1 + c x^2z^2 + e x^1x^2 + f y^1y^2.

    Parameters may be rationals, quadratic numbers or strings.  The
    rescaled variant maps w1 to t w1 with t an indeterminate.
    """
    spec = FieldSpec()
    vals = []
    for v in (a, b, c, e, f):
        if isinstance(v, Quad):
            spec = spec.join(FieldSpec(v.d))
        vals.append(v)
    if rescaled:
        spec = spec.join(FieldSpec.rational_functions(["t"]))
    vals = [spec.coerce(v) for v in vals]
    if any(vals[i] == 0 for i in (0, 1, 2, 4)):
        raise CatalogError("a, b, c and f must be nonzero")
    scale = spec.var("t") if rescaled else Fraction(1)
    h = bg_algebra(scale, spec)
    s = verify_symplectic(h, bg_omega(*vals, spec))
    return s, contactize(s)


def bg_lattice_parameters(k: int) -> dict:
    """b = c = 1/alpha, f = -1/((alpha^2 - 1)^3 l) with l = k(k^2 - 2) - (k^2 - 1) alpha."""
    alpha = quadratic_root(k)
    ell = k * (k * k - 2) - (k * k - 1) * alpha
    a2 = alpha * alpha - 1
    return {
        "a": Fraction(1), "b": 1 / alpha, "c": 1 / alpha, "e": Fraction(0),
        "f": -1 / (a2 ** 3 * ell), "ell": ell, "alpha": alpha,
        "lambda": (Fraction(1), a2, Fraction(1)), "delta": (Fraction(1), -a2 * ell, Fraction(1)),
    }


# --------------------------------------------------------------------------
# lattice fixtures


@dataclass
class LatticeFixture:
    id: str
    algebra: LieAlgebra
    ideal: list
    spec: DerivationBlockSpec
    candidate: list
    transversal: list
    expected: list | None = None


def _unit(n: int, i: int) -> list:
    return [Fraction(int(j == i)) for j in range(n)]


def _columns_to_matrix(cols: Sequence[Sequence]) -> list[list]:
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _block_diag(*blocks) -> list[list]:
    n = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = Fraction(x)
        off += len(b)
    return out


def lattice_sec41(k_list: Sequence[int]) -> LatticeFixture:
    """Ideal (xi, f2, u1, v1, ..., um, vm); w_i = u_i + q alpha v_i, w~_i = alpha u_i + q v_i."""
    k_list = tuple(k_list)
    if len(set(k_list)) != 1:
        raise CatalogError("the certificate works over one quadratic field; use equal k values")
    k = k_list[0]
    m = len(k_list)
    ex = example_41(k_list)
    g = ex.contact.algebra
    N = g.dim
    # g: xi, f1, f2, u1..um, v1..vm
    order = [0, 2]
    for i in range(m):
        order += [3 + i, 3 + m + i]
    ideal = [_unit(N, j) for j in order]
    blocks = [Block.nilpotent([[0, 1], [0, 0]])]
    for _ in range(m):
        blocks += [Block.scaled(1), Block.scaled(-1)]
    spec = DerivationBlockSpec(blocks, k)
    alpha = quadratic_root(k)
    q = 1 / (1 - alpha * alpha)
    n = len(order)
    cols = [_unit(n, 0), _unit(n, 1)]
    for i in range(m):
        a, b = 2 + 2 * i, 3 + 2 * i
        w = [Fraction(0)] * n
        w[a], w[b] = Fraction(1), q * alpha
        wt = [Fraction(0)] * n
        wt[a], wt[b] = alpha, q
        cols += [w, wt]
    expected = _block_diag([[1, 1], [0, 1]], *([[0, -1], [1, k]] for _ in range(m)))
    return LatticeFixture(f"sec41({','.join(map(str, k_list))})", g, ideal, spec, _columns_to_matrix(cols),
                          _unit(N, 1), expected)


def lattice_sec42(k: int, m: int) -> LatticeFixture:
    """Ideal (xi, f2, u1..um, v1..vm); cyclic basis w_1 = u1 + v1, w_j = exp(A_0) w_(j-1)."""
    if m % 2:
        raise CatalogError("lattices are only certified for even m")
    _, c = example_42(k, m)
    g = c.algebra
    N = g.dim
    order = [0, 2] + list(range(3, 3 + 2 * m))
    ideal = [_unit(N, j) for j in order]
    J = jordan_nilpotent(m)
    spec = DerivationBlockSpec([Block.nilpotent([[0, 1], [0, 0]]), Block.scaled(1, J), Block.scaled(-1, J)], k)
    E = exact_exp(spec)
    n = len(order)
    w = [Fraction(0)] * n
    w[2] = w[2 + m] = Fraction(1)
    cols = [_unit(n, 0), _unit(n, 1), w]
    for _ in range(2 * m - 1):
        cols.append(matvec(E, cols[-1]))
    qcoeffs = poly_power_coeffs([1, -k, 1], m)
    expected = _block_diag([[1, 1], [0, 1]], companion_matrix(qcoeffs[:-1]))
    return LatticeFixture(f"sec42({k},{m})", g, ideal, spec, _columns_to_matrix(cols), _unit(N, 1), expected)


def lattice_sec43(k: int) -> LatticeFixture:
    """Rescaled BG with the special parameters; ideal (xi, w2, x1, x2, y1, y2, z1, z2).

    ``expected`` holds the claimed block matrix,
    [[1,1],[0,1]] + [[k^2+1,-k],[-k,1]] + C + [[-k,1],[1,0]].
    """
    p = bg_lattice_parameters(k)
    _, c = example_bg(p["a"], p["b"], p["c"], p["e"], p["f"], rescaled=True)
    g = c.algebra
    N = g.dim
    # g: xi, w1, w2, x1, y1, z1, x2, y2, z2
    pos = {name: i for i, name in enumerate(g.names)}
    order = [pos[x] for x in ("xi", "w2", "x1", "x2", "y1", "y2", "z1", "z2")]
    ideal = [_unit(N, j) for j in order]
    blocks = [Block.nilpotent([[0, p["a"]], [0, 0]])]
    blocks += [Block.scaled(mm) for mm in (1, -1, -2, 2, -1, 1)]
    spec = DerivationBlockSpec(blocks, k)
    alpha = p["alpha"]
    n = 8
    cols = [_unit(n, 0), _unit(n, 1)]
    for r, (lam, dl) in enumerate(zip(p["lambda"], p["delta"])):
        a, b = 2 + 2 * r, 3 + 2 * r
        v1 = [Fraction(0)] * n
        v1[a], v1[b] = lam, dl * alpha
        v2 = [Fraction(0)] * n
        v2[a], v2[b] = lam * alpha, dl
        cols += [v1, v2]
    expected = _block_diag([[1, 1], [0, 1]], [[k * k + 1, -k], [-k, 1]], [[0, -1], [1, k]], [[-k, 1], [1, 0]])
    return LatticeFixture(f"sec43({k})", g, ideal, spec, _columns_to_matrix(cols), _unit(N, pos["w1"]), expected)


def lattice_fixture(kind: str, *args) -> LatticeFixture:
    if kind == "sec41":
        return lattice_sec41(*args)
    if kind == "sec42":
        return lattice_sec42(*args)
    if kind == "sec43":
        return lattice_sec43(*args)
    raise UnknownEntry(f"unknown lattice fixture {kind!r}")


# --------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Expectation:
    key: str
    value: object
    origin: str  # "literature" | "closed-form" | "oracle"


@dataclass
class Bundle:
    symplectic: SymplecticStructure | None = None
    contact: ContactStructure | None = None
    algebra: LieAlgebra | None = None
    lattice: LatticeFixture | None = None
    forms: dict = field(default_factory=dict)
    complement: list | None = None  # vectors spanning an abelian complement, for BG checks

    @property
    def main_algebra(self) -> LieAlgebra:
        if self.contact is not None:
            return self.contact.algebra
        if self.symplectic is not None:
            return self.symplectic.algebra
        if self.lattice is not None:
            return self.lattice.algebra
        return self.algebra


@dataclass
class CatalogEntry:
    id: str
    description: str
    params: dict
    build: Callable[[], Bundle]
    manifest: tuple = ()


def _heis_betti(n: int) -> list[int]:
    low = [comb(2 * n, k) - (comb(2 * n, k - 2) if k >= 2 else 0) for k in range(n + 1)]
    return low + low[::-1]


def _from_symplectic(s: SymplecticStructure, complement=None, **forms) -> Bundle:
    return Bundle(symplectic=s, contact=contactize(s), forms=forms, complement=complement)


def _span_of(g: LieAlgebra, *names: str) -> list:
    return [[Fraction(int(j == g.names.index(x))) for j in range(g.dim)] for x in names]


def _ex41_bundle(k_list, relation) -> Bundle:
    ex = example_41(k_list, relation)
    return Bundle(symplectic=ex.symplectic, contact=ex.contact, forms=ex.forms,
                  complement=_span_of(ex.symplectic.algebra, "f1", "f2"))


def _entries() -> list[CatalogEntry]:
    E = Expectation
    out = []
    for n in (1, 2, 3):
        out.append(CatalogEntry(
            f"heisenberg-{2 * n + 1}", f"Heisenberg algebra h_{2 * n + 1}", {"n": n},
            lambda n=n: Bundle(contact=heisenberg(n)),
            (
                E("betti_g", _heis_betti(n), "closed-form"),
                E("heisenberg", True, "literature"),
                E("contact_lefschetz", {1: True}, "literature"),
            ),
        ))
    out.append(CatalogEntry(
        "abelian-4", "R^4 with the standard form; contactization is h_5", {"n": 2},
        lambda: _from_symplectic(abelian(2)),
        (
            E("betti_h", [1, 4, 6, 4, 1], "closed-form"),
            E("symplectic_lefschetz", {2: True}, "literature"),
            E("contact_lefschetz", {1: True}, "literature"),
            E("theorem_main", True, "literature"),
        ),
    ))
    out.append(CatalogEntry(
        "h3xR", "h_3 + R with omega = e1^e4 + e2^e3", {},
        lambda: _from_symplectic(h3_plus_r()),
        (
            E("betti_h", [1, 3, 4, 3, 1], "closed-form"),
            E("symplectic_lefschetz", {1: False}, "literature"),
            E("contact_lefschetz", {1: False}, "literature"),
            E("theorem_main", False, "literature"),
        ),
    ))
    out.append(CatalogEntry(
        "aff-R", "affine algebra [e1, e2] = e2, omega = e1^e2", {},
        lambda: Bundle(symplectic=aff_r()),
        (E("frobenius", True, "literature"), E("unimodular", False, "literature")),
    ))
    out.append(CatalogEntry(
        "sl2", "sl(2, R) with eta = h^*", {},
        lambda: Bundle(contact=sl2()),
        (E("betti_g", [1, 0, 0, 1], "closed-form"), E("unimodular", True, "closed-form"),
         E("completely_solvable", "no", "closed-form")),
    ))
    out.append(CatalogEntry(
        "e2", "Euclidean algebra e(2)", {},
        lambda: Bundle(algebra=e2()),
        (E("solvable", True, "closed-form"), E("completely_solvable", "no", "closed-form"),
         E("betti_g", [1, 1, 1, 1], "oracle")),
    ))
    out.append(CatalogEntry(
        "sec41-3", "almost abelian, diagonal A_0, k = (3)", {"k_list": [3], "relation": "independent"},
        lambda: _ex41_bundle([3], "independent"),
        (
            E("betti_h", [1, 2, 2, 2, 1], "oracle"),
            E("contact_lefschetz", {2: True}, "literature"),
            E("completely_solvable", "yes", "literature"),
            E("theorem_main", True, "literature"),
        ),
    ))
    out.append(CatalogEntry(
        "sec41-3-4", "almost abelian, diagonal A_0, k = (3, 4)", {"k_list": [3, 4], "relation": "independent"},
        lambda: _ex41_bundle([3, 4], "independent"),
        (
            E("betti_g_at", {2: 2, 5: 2}, "literature"),
            E("contact_lefschetz", {2: True}, "literature"),
            E("theorem_main", True, "literature"),
        ),
    ))
    out.append(CatalogEntry(
        "sec41-3-3-equal", "almost abelian, diagonal A_0, k = (3, 3), equal t", {"k_list": [3, 3], "relation": "all_equal"},
        lambda: _ex41_bundle([3, 3], "all_equal"),
        (
            E("betti_g_at", {2: 4, 5: 4}, "oracle"),
            E("contact_lefschetz", {2: True}, "literature"),
        ),
    ))
    out.append(CatalogEntry(
        "sec42-3-2", "almost abelian, Jordan A_0, k = 3, m = 2", {"k": 3, "m": 2},
        lambda: (lambda s: _from_symplectic(s, _span_of(s.algebra, "f1", "f2")))(example_42(3, 2)[0]),
        (
            E("contact_lefschetz", {1: True, 2: False}, "literature"),
            E("theorem_main", True, "literature"),
        ),
    ))
    out.append(CatalogEntry(
        "bg", "Benson-Gordon algebra, a = b = c = f = 1, e = 0", {"a": 1, "b": 1, "c": 1, "e": 0, "f": 1},
        lambda: (lambda s: _from_symplectic(s, _span_of(s.algebra, "w1", "w2")))(example_bg()[0]),
        (
            E("betti_h_at", {1: 2, 2: 5}, "literature"),
            E("symplectic_lefschetz", {1: True, 2: False}, "literature"),
            E("contact_lefschetz", {1: True, 2: False}, "literature"),
            E("theorem_main", True, "literature"),
        ),
    ))
    for kind, args in (("sec41", ([3],)), ("sec42", (3, 2)), ("sec43", (3,))):
        fid = f"lattice-{kind}-" + "-".join(str(a) for arg in args for a in (arg if isinstance(arg, list) else [arg]))
        out.append(CatalogEntry(
            fid, f"lattice certificate fixture {kind}{args}", {"args": list(args)},
            lambda kind=kind, args=args: Bundle(lattice=lattice_fixture(kind, *args)),
            (E("lattice_valid", True, "literature"),),
        ))
    return out


_REGISTRY: dict[str, CatalogEntry] | None = None


def registry() -> dict[str, CatalogEntry]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {e.id: e for e in _entries()}
    return _REGISTRY


def get_entry(entry_id: str) -> CatalogEntry:
    try:
        return registry()[entry_id]
    except KeyError:
        raise UnknownEntry(f"unknown catalog id {entry_id!r}") from None


def list_entries() -> list[str]:
    return sorted(registry())


@dataclass
class ManifestCheck:
    key: str
    expected: object
    actual: object
    origin: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def evaluate_expectation(bundle: Bundle, exp: Expectation):
    """Recompute the quantity named by an expectation key."""
    from .cohomology import betti, betti_numbers
    from .lattice import lattice_check
    from .lefschetz import contact_lefschetz, symplectic_lefschetz, theorem_main_check
    from .liealg import classify, is_heisenberg, is_unimodular

    key = exp.key
    if key == "betti_g":
        return betti_numbers(bundle.main_algebra)
    if key == "betti_h":
        return betti_numbers(bundle.symplectic.algebra)
    if key == "betti_g_at":
        g = bundle.main_algebra
        return {k: betti(g, k) for k in exp.value}
    if key == "betti_h_at":
        h = bundle.symplectic.algebra
        return {k: betti(h, k) for k in exp.value}
    if key == "heisenberg":
        return is_heisenberg(bundle.main_algebra)
    if key == "contact_lefschetz":
        return {s: contact_lefschetz(bundle.contact, s).verdict for s in exp.value}
    if key == "symplectic_lefschetz":
        return {s: symplectic_lefschetz(bundle.symplectic, s).verdict for s in exp.value}
    if key == "theorem_main":
        return theorem_main_check(bundle.symplectic).h_verdict
    if key == "frobenius":
        return bundle.symplectic.frobenius
    if key == "unimodular":
        return is_unimodular(bundle.main_algebra)
    if key == "solvable":
        return classify(bundle.main_algebra).solvable
    if key == "completely_solvable":
        return classify(bundle.main_algebra).completely_solvable
    if key == "lattice_valid":
        fx = bundle.lattice
        return lattice_check(fx.algebra, fx.ideal, fx.spec, fx.candidate, fx.transversal, fx.id).valid
    raise CatalogError(f"unknown manifest key {key!r}")


def run_entry(entry: CatalogEntry | str) -> list[ManifestCheck]:
    if isinstance(entry, str):
        entry = get_entry(entry)
    bundle = entry.build()
    return [ManifestCheck(e.key, e.value, evaluate_expectation(bundle, e), e.origin) for e in entry.manifest]


__all__ = [
    "heisenberg", "abelian", "h3_plus_r", "aff_r", "sl2", "e2", "example_41", "example_42", "example_bg",
    "Example41", "gamma_a", "gamma_bc", "bg_algebra", "bg_omega", "bg_lattice_parameters", "BG_NAMES",
    "lattice_fixture", "lattice_sec41", "lattice_sec42", "lattice_sec43", "LatticeFixture", "CatalogEntry",
    "Expectation", "Bundle", "registry", "get_entry", "list_entries", "run_entry", "ManifestCheck",
    "CatalogError", "UnknownEntry", "evaluate_expectation",
]
