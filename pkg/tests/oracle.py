"""Reference computations that share no code with the engine.

Forms are dicts {sorted index tuple: sympy expr}; the differential is built
from d(e^k) = -sum_{i<j} c_ij^k e^i e^j and the Leibniz rule, and ranks come
from sympy's DomainMatrix over the appropriate exact domain.
"""
from __future__ import annotations

from itertools import combinations

import sympy
from sympy import QQ, Rational
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.matrices import DomainMatrix

from lefschetz_lab.fieldcore import format_scalar

_TRANSFORMS = standard_transformations + (convert_xor,)


def to_sympy(x, d: int | None = None, names=()):
    """Convert an engine scalar through its printed form."""
    local = {n: sympy.Symbol(n) for n in names}
    if d is not None:
        local["r"] = sympy.sqrt(d)
    return parse_expr(format_scalar(x), local_dict=local, transformations=_TRANSFORMS)


def domain_for(field):
    syms = [sympy.Symbol(v) for v in field.vars]
    base = QQ.algebraic_field(sympy.sqrt(field.d)) if field.d is not None else QQ
    return base.frac_field(*syms) if syms else base


def brackets_of(g) -> dict:
    """{(i, j): {k: sympy expr}} for i < j, read from the engine's table."""
    d = g.field.d
    out = {}
    for i, j, vec in g.bracket_entries():
        out[(i, j)] = {k: to_sympy(c, d, g.field.vars) for k, c in vec.items()}
    return out


def _sort_sign(idx):
    idx = list(idx)
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
    return sign, tuple(idx)


def wedge(a: dict, b: dict) -> dict:
    out: dict = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            if set(ia) & set(ib):
                continue
            s, key = _sort_sign(ia + ib)
            out[key] = out.get(key, 0) + s * ca * cb
    return {k: sympy.simplify(v) for k, v in out.items() if sympy.simplify(v) != 0}


def d_one(brackets: dict, k: int) -> dict:
    out = {}
    for (i, j), vec in brackets.items():
        c = vec.get(k, 0)
        if c != 0:
            out[(i, j)] = -c
    return out


def d_form(brackets: dict, form: dict) -> dict:
    """Leibniz on monomials: d(e^a1...e^ap) = sum (-1)^q e^a1..d(e^aq)..e^ap."""
    out: dict = {}
    for idx, c in form.items():
        for q, a in enumerate(idx):
            left = {idx[:q]: Rational((-1) ** q)}
            term = wedge(wedge(left, d_one(brackets, a)), {idx[q + 1:]: c})
            for key, v in term.items():
                out[key] = out.get(key, 0) + v
    return {k: sympy.simplify(v) for k, v in out.items() if sympy.simplify(v) != 0}


def d_matrix(brackets: dict, dim: int, k: int, domain) -> DomainMatrix:
    src = list(combinations(range(dim), k))
    tgt = {m: r for r, m in enumerate(combinations(range(dim), k + 1))}
    rows = [[domain.zero] * len(src) for _ in tgt]
    for col, mono in enumerate(src):
        for key, v in d_form(brackets, {mono: Rational(1)}).items():
            rows[tgt[key]][col] = domain.from_sympy(v)
    return DomainMatrix(rows, (len(tgt), len(src)), domain)


def rank(m: DomainMatrix) -> int:
    if 0 in m.shape:
        return 0
    return m.rank()


def betti_numbers(g) -> list[int]:
    br = brackets_of(g)
    dom = domain_for(g.field)
    n = g.dim
    ranks = [rank(d_matrix(br, n, k, dom)) if k < n else 0 for k in range(n + 1)]
    from math import comb

    return [comb(n, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


def form_from_engine(a, field) -> dict:
    from lefschetz_lab.exterior import mask_to_indices

    return {mask_to_indices(m): to_sympy(c, field.d, field.vars) for m, c in a.items()}


def is_exact(g, form: dict) -> bool:
    """Membership of a closed form in the image of d, by rank comparison."""
    br = brackets_of(g)
    dom = domain_for(g.field)
    k = len(next(iter(form))) if form else 0
    if not form:
        return True
    D = d_matrix(br, g.dim, k - 1, dom)
    tgt = list(combinations(range(g.dim), k))
    col = DomainMatrix([[dom.from_sympy(sympy.sympify(form.get(m, 0)))] for m in tgt], (len(tgt), 1), dom)
    return rank(D) == rank(D.hstack(col))


def char_poly_factors(matrix):
    """Factor list of the characteristic polynomial over Q."""
    x = sympy.Symbol("x")
    p = sympy.Matrix(matrix).charpoly(x).as_expr()
    return sympy.factor_list(p, x)[1]
