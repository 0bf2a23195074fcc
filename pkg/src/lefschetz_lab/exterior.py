"""Sparse exterior algebra.

A k-form on an n-dimensional space is a dict from bitmasks (bit i set means
the covector e^i appears) to nonzero scalars.  Dense coordinates enumerate
the k-subsets in colexicographic order, which for bitmasks is simply
increasing integer order.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .fieldcore import FieldSpec, Scalar, format_scalar, parse_scalar
from .kernels import bits_below, mask_rank, popcount, wedge_sign


class DimensionMismatch(ValueError):
    pass


class FormSyntaxError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


def indices_to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        if m >> i & 1:
            raise ValueError(f"repeated index {i}")
        m |= 1 << i
    return m


def mask_to_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_masks(dim: int, k: int) -> tuple[int, ...]:
    """All k-subsets of range(dim) as masks, in colex order."""
    masks = [indices_to_mask(c) for c in combinations(range(dim), k)]
    return tuple(sorted(masks))


class KForm:
    """An alternating k-form; immutable by convention."""

    __slots__ = ("degree", "dim", "coeffs")

    def __init__(self, degree: int, dim: int, coeffs: Mapping[int, Scalar] | None = None, *, _trusted: bool = False):
        if degree < 0 or degree > dim:
            raise ValueError(f"degree {degree} outside 0..{dim}")
        self.degree = degree
        self.dim = dim
        if _trusted:
            self.coeffs = coeffs
            return
        clean = {}
        if coeffs:
            full = (1 << dim) - 1
            for m, c in coeffs.items():
                if m & ~full or popcount(m) != degree:
                    raise ValueError(f"multi-index {mask_to_indices(m)} does not fit degree {degree}, dim {dim}")
                if c != 0:
                    clean[m] = Fraction(c) if isinstance(c, int) else c
        self.coeffs = clean

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, degree: int, dim: int) -> "KForm":
        return cls(degree, dim, {}, _trusted=True)

    @classmethod
    def unit(cls, dim: int) -> "KForm":
        return cls(0, dim, {0: Fraction(1)}, _trusted=True)

    @classmethod
    def constant(cls, c, dim: int) -> "KForm":
        return cls(0, dim, {0: c})

    @classmethod
    def monomial(cls, indices: Sequence[int], dim: int, coeff=1) -> "KForm":
        """coeff * e^{i1} ^ ... ^ e^{ik}; indices in any order (sign applied)."""
        sign = 1
        idx = list(indices)
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if idx[a] > idx[b]:
                    sign = -sign
                elif idx[a] == idx[b]:
                    return cls.zero(len(idx), dim)
        for i in idx:
            if not 0 <= i < dim:
                raise ValueError(f"index {i} out of range for dim {dim}")
        return cls(len(idx), dim, {indices_to_mask(idx): sign * Fraction(coeff) if isinstance(coeff, int) else sign * coeff})

    @classmethod
    def covector(cls, i: int, dim: int) -> "KForm":
        return cls.monomial((i,), dim)

    # algebra ---------------------------------------------------------------
    def _check(self, other: "KForm"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"forms on dims {self.dim} and {other.dim}")

    def __add__(self, other: "KForm") -> "KForm":
        if not isinstance(other, KForm):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            if not other.coeffs:
                return self
            if not self.coeffs:
                return other
            raise ValueError(f"cannot add forms of degrees {self.degree} and {other.degree}")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m, 0) + c
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return KForm(self.degree, self.dim, out, _trusted=True)

    def __neg__(self) -> "KForm":
        return KForm(self.degree, self.dim, {m: -c for m, c in self.coeffs.items()}, _trusted=True)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def scale(self, c) -> "KForm":
        if c == 0:
            return KForm.zero(self.degree, self.dim)
        if c == 1:
            return self
        return KForm(self.degree, self.dim, {m: c * v for m, v in self.coeffs.items()}, _trusted=True)

    def __rmul__(self, c) -> "KForm":
        if isinstance(c, KForm):
            return NotImplemented
        return self.scale(c)

    def __mul__(self, c) -> "KForm":
        if isinstance(c, KForm):
            return wedge(self, c)
        return self.scale(c)

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.dim, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        """Terms sorted by packed key, for reproducible iteration."""
        return sorted(self.coeffs.items())

    def coefficient(self, indices: Sequence[int]):
        return self.coeffs.get(indices_to_mask(indices), Fraction(0))

    def __repr__(self):
        return f"KForm({self.degree}, {self.dim}, {format_form(self)!r})"


def wedge(a: KForm, b: KForm) -> KForm:
    """Exterior product; a form of degree > dim collapses to the zero 0-form."""
    a._check(b)
    deg = a.degree + b.degree
    if deg > a.dim:
        return KForm.zero(0, a.dim)
    out: dict = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            if ma & mb:
                continue
            s = wedge_sign(ma, mb)
            m = ma | mb
            v = ca * cb
            v = out.get(m, 0) + (v if s > 0 else -v)
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
    return KForm(deg, a.dim, out, _trusted=True)


def wedge_all(forms: Iterable[KForm], dim: int) -> KForm:
    acc = KForm.unit(dim)
    for f in forms:
        acc = wedge(acc, f)
    return acc


def wedge_power(a: KForm, p: int) -> KForm:
    if p < 0:
        raise ValueError("negative wedge power")
    if p > 1 and a.degree % 2:
        return KForm.zero(0, a.dim) if a.degree * p > a.dim else KForm.zero(a.degree * p, a.dim)
    acc = KForm.unit(a.dim)
    for _ in range(p):
        acc = wedge(acc, a)
    return acc


def contract(x: Sequence, a: KForm) -> KForm:
    """Interior product iota_x a."""
    if len(x) != a.dim:
        raise DimensionMismatch(f"vector of length {len(x)} against forms on dim {a.dim}")
    if a.degree == 0:
        raise ValueError("cannot contract a 0-form")
    out: dict = {}
    support = [i for i, v in enumerate(x) if v != 0]
    for m, c in a.coeffs.items():
        for i in support:
            if m >> i & 1:
                v = x[i] * c
                if bits_below(m, i) & 1:
                    v = -v
                r = m ^ (1 << i)
                v = out.get(r, 0) + v
                if v == 0:
                    out.pop(r, None)
                else:
                    out[r] = v
    return KForm(a.degree - 1, a.dim, out, _trusted=True)


def evaluate(a: KForm, vectors: Sequence[Sequence]):
    """a(v1, ..., vk) by repeated contraction."""
    if len(vectors) != a.degree:
        raise ValueError("wrong number of arguments")
    f = a
    for v in vectors:
        f = contract(v, f)
    # iota_{v1} first gives a(v1, ...); result is a 0-form
    return f.coeffs.get(0, Fraction(0))


def form_coords(a: KForm) -> list:
    n = comb(a.dim, a.degree)
    out = [Fraction(0)] * n
    for m, c in a.coeffs.items():
        out[mask_rank(m)] = c
    return out


def sparse_coords(a: KForm) -> dict:
    """Sparse version of form_coords: {colex position: coefficient}."""
    return {mask_rank(m): c for m, c in a.coeffs.items()}


def coords_form(degree: int, dim: int, seq: Sequence) -> KForm:
    masks = monomial_masks(dim, degree)
    if len(seq) != len(masks):
        raise ValueError(f"expected {len(masks)} coordinates, got {len(seq)}")
    return KForm(degree, dim, {m: c for m, c in zip(masks, seq) if c != 0}, _trusted=True)


def sparse_coords_form(degree: int, dim: int, vec: Mapping[int, Scalar]) -> KForm:
    masks = monomial_masks(dim, degree)
    return KForm(degree, dim, {masks[j]: c for j, c in vec.items() if c != 0}, _trusted=True)


def pullback(f: Sequence[Sequence], a: KForm, src_dim: int) -> KForm:
    """f^* a for a linear map f whose column j is the image of basis vector j.

    f has a.dim rows and src_dim columns.
    """
    pulled = [KForm(1, src_dim, {1 << j: f[r][j] for j in range(src_dim) if f[r][j] != 0}) for r in range(a.dim)]
    out = KForm.zero(a.degree, src_dim)
    for m, c in a.coeffs.items():
        out = out + wedge_all((pulled[i] for i in mask_to_indices(m)), src_dim).scale(c)
    return out


# --------------------------------------------------------------------------
# text syntax


def format_form(a: KForm, names: Sequence[str] | None = None) -> str:
    """Render as ``c * b1^b3 + ...``; coefficient 1 is omitted."""
    if names is None:
        names = [f"e{i + 1}" for i in range(a.dim)]
    if not a.coeffs:
        return "0"
    parts = []
    for m, c in a.items():
        mono = "^".join(names[i] for i in mask_to_indices(m))
        if m == 0:
            parts.append(_wrap_coeff(c))
            continue
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{_wrap_coeff(c)}*{mono}")
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


def _wrap_coeff(c) -> str:
    s = format_scalar(c)
    if isinstance(c, Fraction):
        return s
    return f"({s})"


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _split_top(text: str, seps: str):
    """Split at top-level separator characters, yielding (start, piece, sep)."""
    depth = 0
    start = 0
    prev = ""
    out = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise FormSyntaxError("unbalanced ')'", text, i)
        elif depth == 0 and ch in seps:
            if ch in "+-" and (not text[start:i].strip() or prev in "*/^(+-"):
                # unary sign
                prev = ch
                continue
            out.append((start, text[start:i]))
            start = i
        if not ch.isspace():
            prev = ch
    if depth:
        raise FormSyntaxError("unbalanced '('", text, len(text))
    out.append((start, text[start:]))
    return out


def parse_form(text: str, names: Sequence[str], spec: FieldSpec, degree: int | None = None) -> KForm:
    """Parse the textual form syntax.

    Each term is ``[scalar *] name^name^...``; the monomial is the last
    top-level ``*`` factor.  A term without basis names is a 0-form.  The
    literal ``0`` needs ``degree`` to know which zero is meant.
    """
    dim = len(names)
    index = {n: i for i, n in enumerate(names)}
    stripped = text.strip()
    if not stripped:
        raise FormSyntaxError("empty form", text, 0)
    if stripped == "0":
        if degree is None:
            raise FormSyntaxError("the zero form needs an explicit degree", text, 0)
        return KForm.zero(degree, dim)
    total = None
    for start, piece in _split_top(text, "+-"):
        lead = start + len(piece) - len(piece.lstrip())
        body = piece.strip()
        sign = 1
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:].lstrip()
        if not body:
            raise FormSyntaxError("empty term", text, lead)
        factors = _split_top(body, "*")
        last_start, last = factors[-1]
        words = [w.strip() for w in last.lstrip("*").split("^")]
        if all(w in index for w in words):
            mono = [index[w] for w in words]
            coeff_text = body[:last_start] if len(factors) > 1 else ""
        else:
            known = [w for w in words if w in index]
            if known:
                bad = next(w for w in words if w not in index)
                raise FormSyntaxError(f"unknown basis name {bad!r}", text, lead)
            mono = []
            coeff_text = body
        try:
            coeff = parse_scalar(coeff_text, spec) if coeff_text.strip() else Fraction(1)
        except ValueError as exc:
            raise FormSyntaxError(f"bad coefficient ({exc})", text, lead) from None
        term = KForm.monomial(mono, dim, sign * coeff)
        if total is None:
            total = term
        elif term.degree != total.degree:
            raise FormSyntaxError("terms of different degrees", text, lead)
        else:
            total = total + term
    if degree is not None and total.degree != degree and total:
        raise FormSyntaxError(f"expected a {degree}-form", text, 0)
    return total


__all__ = [
    "KForm", "wedge", "wedge_all", "wedge_power", "contract", "evaluate", "form_coords", "coords_form",
    "sparse_coords", "sparse_coords_form", "monomial_masks", "mask_to_indices", "indices_to_mask", "pullback",
    "format_form", "parse_form", "DimensionMismatch", "FormSyntaxError",
]
