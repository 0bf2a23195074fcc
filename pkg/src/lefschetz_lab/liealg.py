"""Lie algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exterior import KForm, mask_to_indices, pullback, wedge
from .fieldcore import FieldSpec, Quad, RatFunc, Scalar, scalar_field
from .kernels import wedge_sign
from .linalg import Echelon, Subspace, _axpy, dense, identity, matmul, sparse


class JacobiViolation(ValueError):
    """Jacobi fails on a basis triple; carries the triple and the defect vector."""

    def __init__(self, triple: tuple[int, int, int], defect: list):
        self.triple = triple
        self.defect = defect
        super().__init__(f"Jacobi identity fails on basis triple {triple}")


class AlgebraError(ValueError):
    pass


class LieAlgebra:
    """[e_i, e_j] = sum_k c_ij^k e_k, stored sparsely for i < j.

    Construct through ``build_algebra`` (which checks Jacobi) or pass
    ``check=False`` when the identity is known to hold.
    """

    def __init__(self, dim: int, names: Sequence[str], brackets: Mapping[tuple[int, int], Mapping[int, Scalar]],
                 field: FieldSpec | None = None, check: bool = True):
        names = tuple(names)
        if len(names) != dim:
            raise AlgebraError(f"{len(names)} basis names for dimension {dim}")
        if len(set(names)) != dim:
            raise AlgebraError("basis names must be distinct")
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (i, j), terms in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= min(terms, default=0) and max(terms, default=0) < dim):
                raise AlgebraError(f"bracket index out of range in [{i}, {j}]")
            if i == j:
                if any(c != 0 for c in terms.values()):
                    raise AlgebraError(f"[e{i}, e{i}] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            vec = table.setdefault((i, j), {})
            _axpy(vec, Fraction(sign), {k: Fraction(c) if isinstance(c, int) else c for k, c in terms.items()})
            if not vec:
                del table[(i, j)]
        self.dim = dim
        self.names = names
        self.table = table
        if field is None:
            field = FieldSpec()
            for vec in table.values():
                for c in vec.values():
                    field = field.join(scalar_field(c))
        else:
            for vec in table.values():
                for c in vec.values():
                    if not field.contains(c):
                        raise AlgebraError(f"structure constant {c!r} is not in {field}")
        self.field = field
        self._dmono: dict[int, dict] = {}
        self._cache: dict = {}
        self._d1 = self._dual_differentials()
        if check:
            self.check_jacobi()

    # brackets --------------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                if i != j:
                    br = self.bracket_basis(i, j)
                    if br:
                        _axpy(out, a * b, br)
        return out

    def bracket(self, x: Sequence, y: Sequence) -> list:
        return dense(self.bracket_sparse(sparse(x), sparse(y)), self.dim)

    def ad_matrix(self, x: Sequence) -> list[list]:
        """Matrix of ad_x, column j = [x, e_j]."""
        cols = [self.bracket_sparse(sparse(x), {j: Fraction(1)}) for j in range(self.dim)]
        return [[cols[j].get(i, Fraction(0)) for j in range(self.dim)] for i in range(self.dim)]

    def unit(self, i: int) -> list:
        return [Fraction(int(j == i)) for j in range(self.dim)]

    def check_jacobi(self):
        n = self.dim
        for i, j, k in combinations(range(n), 3):
            acc: dict = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.bracket_basis(b, c)
                if inner:
                    _axpy(acc, Fraction(1), self.bracket_sparse({a: Fraction(1)}, inner))
            if acc:
                raise JacobiViolation((i, j, k), dense(acc, n))

    # differential -----------------------------------------------------------
    def _dual_differentials(self) -> list[dict]:
        """d e^k = - sum_{i<j} c_ij^k e^i ^ e^j, as {mask: coeff}."""
        out: list[dict] = [{} for _ in range(self.dim)]
        for (i, j), vec in self.table.items():
            m = (1 << i) | (1 << j)
            for k, c in vec.items():
                out[k][m] = -c
        return out

    def d_monomial(self, mask: int) -> dict:
        """d of a basis monomial, cached."""
        hit = self._dmono.get(mask)
        if hit is not None:
            return hit
        out: dict = {}
        pos = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                rest = mask ^ (1 << i)
                # d(e^I) = sum_j (-1)^j d(e^{i_j}) ^ e^{I minus i_j}
                for m2, c in self._d1[i].items():
                    if m2 & rest:
                        continue
                    s = wedge_sign(m2, rest)
                    if pos & 1:
                        s = -s
                    key = m2 | rest
                    v = out.get(key, 0) + (c if s > 0 else -c)
                    if v == 0:
                        out.pop(key, None)
                    else:
                        out[key] = v
                pos += 1
            m >>= 1
            i += 1
        self._dmono[mask] = out
        return out

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, field={self.field})"

    def bracket_entries(self) -> list[tuple[int, int, dict]]:
        return [(i, j, dict(sorted(v.items()))) for (i, j), v in sorted(self.table.items())]

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.names == other.names and self.table == other.table

    def __hash__(self):
        return id(self)


def build_algebra(dim: int, names: Sequence[str] | None, entries, field: FieldSpec) -> LieAlgebra:
    """Build and Jacobi-check an algebra.

    ``entries`` is an iterable of ``(i, j, {k: c})`` or ``(i, j, k, c)``;
    scalars may be strings in the field's grammar.
    """
    if names is None:
        names = [f"e{i + 1}" for i in range(dim)]
    table: dict[tuple[int, int], dict] = {}
    for entry in entries:
        if len(entry) == 4:
            i, j, k, c = entry
            terms = {k: c}
        else:
            i, j, terms = entry
        vec = table.setdefault((i, j), {})
        for k, c in terms.items():
            c = field.coerce(c)
            vec[k] = vec.get(k, 0) + c
    return LieAlgebra(dim, names, table, field)


def ce_d(g: LieAlgebra, a: KForm) -> KForm:
    """Chevalley-Eilenberg differential."""
    if a.dim != g.dim:
        raise AlgebraError(f"form on dim {a.dim} for an algebra of dim {g.dim}")
    if a.degree == g.dim:
        return KForm.zero(0, g.dim)
    out: dict = {}
    for m, c in a.coeffs.items():
        dm = g.d_monomial(m)
        if dm:
            _axpy(out, c, dm)
    return KForm(a.degree + 1, g.dim, out, _trusted=True)


# --------------------------------------------------------------------------
# subspaces


def span_of_brackets(g: LieAlgebra, left: Sequence[Sequence], right: Sequence[Sequence]) -> Subspace:
    vecs = []
    for x in left:
        sx = sparse(x)
        for y in right:
            v = g.bracket_sparse(sx, sparse(y))
            if v:
                vecs.append(v)
    return Subspace.from_sparse(g.dim, vecs)


def commutator(g: LieAlgebra) -> Subspace:
    hit = g._cache.get("commutator")
    if hit is None:
        hit = Subspace.from_sparse(g.dim, [v for _, _, v in g.bracket_entries()])
        g._cache["commutator"] = hit
    return hit


def center(g: LieAlgebra) -> Subspace:
    """Kernel of x -> ([x, e_0], ..., [x, e_{n-1}])."""
    hit = g._cache.get("center")
    if hit is not None:
        return hit
    n = g.dim
    cols = []
    for i in range(n):
        col = {}
        for j in range(n):
            for k, c in g.bracket_basis(i, j).items():
                col[j * n + k] = c
        cols.append(col)
    from .linalg import kernel

    hit = Subspace.from_sparse(n, kernel(cols))
    g._cache["center"] = hit
    return hit


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    series = [Subspace.full(g.dim)]
    basis = [g.unit(i) for i in range(g.dim)]
    while True:
        nxt = span_of_brackets(g, basis, series[-1].basis())
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def derived_series(g: LieAlgebra) -> list[Subspace]:
    series = [Subspace.full(g.dim)]
    while True:
        cur = series[-1].basis()
        nxt = span_of_brackets(g, cur, cur)
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def is_abelian(g: LieAlgebra) -> bool:
    return not g.table


def trace(m: Sequence[Sequence]):
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def is_unimodular(g: LieAlgebra) -> bool:
    return all(trace(g.ad_matrix(g.unit(i))) == 0 for i in range(g.dim))


def is_heisenberg(g: LieAlgebra) -> bool:
    n = g.dim
    if n % 2 == 0 or not is_nilpotent(g):
        return False
    comm = commutator(g)
    if comm.dim != 1 or comm != center(g):
        return False
    # the bracket, read off in the centre coordinate, must be a
    # nondegenerate form on g / z; its rank on g is then n - 1
    z = comm.rows[0]
    p = comm.pivots[0]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            br = g.bracket_basis(i, j)
            row.append(br.get(p, Fraction(0)) / z[p] if br else Fraction(0))
        rows.append(row)
    from .linalg import rank_dense

    return rank_dense(rows) == n - 1


def is_morphism(f: Sequence[Sequence], g: LieAlgebra, h: LieAlgebra) -> bool:
    """f: g -> h linear (column j = image of g's e_j); bracket preserving?"""
    cols = [[f[r][j] for r in range(h.dim)] for j in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = dense({}, h.dim)
            for k, c in g.bracket_basis(i, j).items():
                lhs = [a + c * b for a, b in zip(lhs, cols[k])]
            if lhs != h.bracket(cols[i], cols[j]):
                return False
    return True


def pullback_commutes(f: Sequence[Sequence], g: LieAlgebra, h: LieAlgebra) -> bool:
    """d_g f^* = f^* d_h on all 1-forms of h."""
    for a in range(h.dim):
        e = KForm.covector(a, h.dim)
        if ce_d(g, pullback(f, e, g.dim)) != pullback(f, ce_d(h, e), g.dim):
            return False
    return True


def change_basis(g: LieAlgebra, p: Sequence[Sequence], names: Sequence[str] | None = None) -> LieAlgebra:
    """Structure constants in the basis given by the columns of p."""
    from .linalg import mat_inverse

    n = g.dim
    pinv = mat_inverse(p)
    cols = [[p[r][j] for r in range(n)] for j in range(n)]
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            br = g.bracket(cols[i], cols[j])
            coords = [sum((pinv[r][c] * br[c] for c in range(n) if br[c] != 0), Fraction(0)) for r in range(n)]
            vec = {k: c for k, c in enumerate(coords) if c != 0}
            if vec:
                table[(i, j)] = vec
    return LieAlgebra(n, names or g.names, table, None, check=False)


def subalgebra(g: LieAlgebra, basis: Sequence[Sequence], names: Sequence[str] | None = None) -> LieAlgebra:
    """Structure constants of a subalgebra in the given basis."""
    ech = Echelon(track=True)
    for i, v in enumerate(basis):
        if ech.insert(sparse(v), i) is not None:
            raise AlgebraError("subalgebra basis is linearly dependent")
    m = len(basis)
    table = {}
    for i in range(m):
        for j in range(i + 1, m):
            br = g.bracket_sparse(sparse(basis[i]), sparse(basis[j]))
            if not br:
                continue
            sol = ech.solve(br)
            if sol is None:
                raise AlgebraError("span is not closed under the bracket")
            table[(i, j)] = sol
    return LieAlgebra(m, names or [f"b{i + 1}" for i in range(m)], table, None, check=False)


def direct_sum(g: LieAlgebra, h: LieAlgebra, names: Sequence[str] | None = None) -> LieAlgebra:
    n = g.dim
    table = {(i, j): dict(v) for (i, j), v in g.table.items()}
    for (i, j), v in h.table.items():
        table[(i + n, j + n)] = {k + n: c for k, c in v.items()}
    return LieAlgebra(n + h.dim, names or (g.names + h.names), table, g.field.join(h.field), check=False)


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    nilpotent: bool
    solvable: bool
    completely_solvable: str  # "yes" | "no" | "unknown"


def charpoly(m: Sequence[Sequence]) -> list:
    """Characteristic polynomial det(xI - m) by Berkowitz; coefficients from x^n down."""
    n = len(m)
    if n == 0:
        return [Fraction(1)]
    # Berkowitz: division free, works over any commutative ring
    vect = [Fraction(1), -m[0][0]]
    for r in range(1, n):
        R = [m[r][j] for j in range(r)]  # row r, first r entries
        C = [m[i][r] for i in range(r)]  # column r, first r entries
        A = [[m[i][j] for j in range(r)] for i in range(r)]
        a = m[r][r]
        col = [Fraction(1), -a]
        # R A^k C for k = 0 .. r-1
        cur = list(C)
        for _ in range(r):
            col.append(-sum((x * y for x, y in zip(R, cur)), Fraction(0)))
            cur = [sum((A[i][j] * cur[j] for j in range(r) if cur[j] != 0), Fraction(0)) for i in range(r)]
        # Toeplitz product: new[i] = sum_j col[i-j] vect[j]
        new = []
        for i in range(r + 2):
            s = Fraction(0)
            for j in range(min(i, len(vect) - 1) + 1):
                if i - j < len(col):
                    s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def _sympy_expr(x, d_sym, gens):
    import sympy

    if isinstance(x, (int, Fraction)):
        return sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sympy.Integer(x)
    if isinstance(x, RatFunc):
        return x.num.as_expr(*gens) / x.den.as_expr(*gens)
    if isinstance(x, Quad):
        return _sympy_expr(x.a, d_sym, gens) + _sympy_expr(x.b, d_sym, gens) * d_sym
    raise TypeError(x)


def _real_roots_status(coeffs: list, field: FieldSpec) -> str:
    """'yes' if the polynomial splits into linear factors, 'no' if a rational
    quadratic factor with negative discriminant shows up, else 'unknown'."""
    import sympy

    x = sympy.Symbol("x_")
    gens = tuple(sympy.Symbol(v) for v in field.vars)
    d_sym = sympy.sqrt(field.d) if field.d else None
    n = len(coeffs) - 1
    expr = sum(_sympy_expr(c, d_sym, gens) * x ** (n - i) for i, c in enumerate(coeffs))
    expr = sympy.together(expr)
    num, _ = sympy.fraction(expr)
    kwargs = {"extension": d_sym} if d_sym is not None else {}
    _, factors = sympy.factor_list(sympy.expand(num), x, *gens, **kwargs)
    status = "yes"
    for fac, _mult in factors:
        deg = sympy.degree(fac, x)
        if deg <= 1:
            continue
        poly = sympy.Poly(fac, x)
        if deg == 2 and not (fac.free_symbols - {x}):
            a, b, c = poly.all_coeffs()
            if b * b - 4 * a * c < 0:
                return "no"
        status = "unknown"
    return status


def classify(g: LieAlgebra) -> Classification:
    nil = is_nilpotent(g)
    solv = nil or is_solvable(g)
    if nil:
        cs = "yes"
    elif not solv:
        cs = "no"
    else:
        # for solvable g the roots are linear functionals (Lie's theorem),
        # so real roots on a basis give real roots everywhere
        cs = "yes"
        for i in range(g.dim):
            st = _real_roots_status(charpoly(g.ad_matrix(g.unit(i))), g.field)
            if st == "no":
                cs = "no"
                break
            if st == "unknown":
                cs = "unknown"
    return Classification(nil, solv, cs)


__all__ = [
    "LieAlgebra", "JacobiViolation", "AlgebraError", "build_algebra", "ce_d", "commutator", "center",
    "is_unimodular", "is_nilpotent", "is_solvable", "is_abelian", "is_heisenberg", "classify", "Classification",
    "lower_central_series", "derived_series", "charpoly", "is_morphism", "pullback_commutes", "change_basis",
    "subalgebra", "direct_sum", "span_of_brackets", "trace", "identity", "matmul", "wedge", "mask_to_indices",
]
