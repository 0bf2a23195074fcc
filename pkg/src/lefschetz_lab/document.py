"""JSON documents describing an algebra, its structures and lattice data.

Schema (all keys except ``dim`` and ``brackets`` optional)::

    {"field": "Q" | "quadratic:5" | "ratfunc:t" | "quadratic:5:t",
     "dim": 3, "basis": ["x", "y", "z"],
     "brackets": [{"i": "x", "j": "y", "terms": [{"k": "z", "c": "1"}]}],
     "omega": "x^y", "eta": "z",
     "complement": ["w1", "w2"],
     "lattice": {"k": 3, "ideal": [...], "blocks": [...], "candidate": [[...]],
                 "transversal": "f1"}}

Indices may be basis names or 0-based integers; scalars are strings in the
field grammar or integers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .exterior import FormSyntaxError, KForm, format_form, parse_form
from .fieldcore import FieldError, FieldSpec, alpha_field, format_scalar, parse_field
from .lattice import Block, BlockSpecError, DerivationBlockSpec
from .liealg import LieAlgebra, build_algebra
from .symcon import ContactStructure, SymplecticStructure, contactize, verify_contact, verify_symplectic


class DocumentError(ValueError):
    """Schema or syntax problem; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str, line: int | None = None, column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        where = path or "<document>"
        if line is not None:
            where += f" (line {line}, column {column})"
        super().__init__(f"{where}: {message}")


@dataclass
class LatticeData:
    spec: DerivationBlockSpec
    ideal: list
    candidate: list
    transversal: list | None


@dataclass
class Document:
    field: FieldSpec
    algebra: LieAlgebra
    omega: KForm | None = None
    eta: KForm | None = None
    complement: list | None = None
    lattice: LatticeData | None = None
    raw: dict | None = None

    def symplectic(self) -> SymplecticStructure:
        if self.omega is None:
            raise DocumentError("omega", "a symplectic form is required for this command")
        return verify_symplectic(self.algebra, self.omega)

    def contact(self) -> ContactStructure:
        if self.eta is not None:
            return verify_contact(self.algebra, self.eta)
        if self.omega is not None:
            return contactize(self.symplectic())
        raise DocumentError("eta", "a contact form (or a symplectic form to contactize) is required")


def _require(obj: dict, key: str, kind, path: str):
    if key not in obj:
        raise DocumentError(f"{path}{key}", "missing required field")
    val = obj[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise DocumentError(f"{path}{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


def _index(val, names: tuple, path: str) -> int:
    if isinstance(val, bool):
        raise DocumentError(path, "expected a basis name or index")
    if isinstance(val, int):
        if not 0 <= val < len(names):
            raise DocumentError(path, f"index {val} out of range")
        return val
    if isinstance(val, str) and val in names:
        return names.index(val)
    raise DocumentError(path, f"unknown basis element {val!r}")


def _scalar(val, spec: FieldSpec, path: str):
    if isinstance(val, bool):
        raise DocumentError(path, "expected a scalar")
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, str):
        try:
            return spec.parse(val)
        except FieldError as exc:
            raise DocumentError(path, str(exc)) from None
    raise DocumentError(path, "expected a scalar (string or integer)")


def _form(text, names, spec: FieldSpec, path: str) -> KForm:
    if not isinstance(text, str):
        raise DocumentError(path, "expected a form string")
    try:
        return parse_form(text, names, spec)
    except (FormSyntaxError, FieldError) as exc:
        raise DocumentError(path, str(exc)) from None


def parse_document(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("", exc.msg, exc.lineno, exc.colno) from None
    return document_from_tree(obj)


def document_from_tree(obj: Any) -> Document:
    if not isinstance(obj, dict):
        raise DocumentError("", "top level must be an object")
    known = {"field", "dim", "basis", "brackets", "omega", "eta", "complement", "lattice", "id", "description"}
    for key in obj:
        if key not in known:
            raise DocumentError(key, "unknown field")
    ftext = obj.get("field", "Q")
    if not isinstance(ftext, str):
        raise DocumentError("field", "expected a field string")
    try:
        spec = parse_field(ftext)
    except FieldError as exc:
        raise DocumentError("field", str(exc)) from None
    dim = _require(obj, "dim", int, "")
    if dim < 1:
        raise DocumentError("dim", "dimension must be positive")
    names = obj.get("basis", [f"e{i + 1}" for i in range(dim)])
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise DocumentError("basis", "expected a list of names")
    if len(names) != dim:
        raise DocumentError("basis", f"{len(names)} names for dimension {dim}")
    if len(set(names)) != dim:
        raise DocumentError("basis", "names must be distinct")
    names = tuple(names)
    brackets = _require(obj, "brackets", list, "")
    entries = []
    for b, item in enumerate(brackets):
        path = f"brackets[{b}]"
        if not isinstance(item, dict):
            raise DocumentError(path, "expected an object")
        i = _index(item.get("i"), names, f"{path}.i")
        j = _index(item.get("j"), names, f"{path}.j")
        terms = _require(item, "terms", list, f"{path}.")
        vec = {}
        for t, term in enumerate(terms):
            tp = f"{path}.terms[{t}]"
            if not isinstance(term, dict):
                raise DocumentError(tp, "expected an object")
            k = _index(term.get("k"), names, f"{tp}.k")
            if "c" not in term:
                raise DocumentError(f"{tp}.c", "missing required field")
            c = _scalar(term["c"], spec, f"{tp}.c")
            vec[k] = vec.get(k, 0) + c
        entries.append((i, j, vec))
    # JacobiViolation propagates: it carries the failing triple
    g = build_algebra(dim, names, entries, spec)
    doc = Document(spec, g, raw=obj)
    if "omega" in obj:
        doc.omega = _form(obj["omega"], names, spec, "omega")
        if doc.omega.degree != 2:
            raise DocumentError("omega", "omega must be a 2-form")
    if "eta" in obj:
        doc.eta = _form(obj["eta"], names, spec, "eta")
        if doc.eta.degree != 1:
            raise DocumentError("eta", "eta must be a 1-form")
    if "complement" in obj:
        doc.complement = _vectors(obj["complement"], names, spec, "complement")
    if "lattice" in obj:
        doc.lattice = _lattice(obj["lattice"], names, spec)
    return doc


def _vector(val, names, spec, path) -> list:
    """A basis name, an index, or an explicit coordinate list."""
    if isinstance(val, list):
        if len(val) != len(names):
            raise DocumentError(path, f"expected {len(names)} coordinates")
        return [_scalar(x, spec, f"{path}[{i}]") for i, x in enumerate(val)]
    i = _index(val, names, path)
    return [Fraction(int(j == i)) for j in range(len(names))]


def _vectors(val, names, spec, path) -> list:
    if not isinstance(val, list):
        raise DocumentError(path, "expected a list")
    return [_vector(v, names, spec, f"{path}[{i}]") for i, v in enumerate(val)]


def _lattice(obj, names, spec: FieldSpec) -> LatticeData:
    path = "lattice"
    if not isinstance(obj, dict):
        raise DocumentError(path, "expected an object")
    k = _require(obj, "k", int, "lattice.")
    ideal = _vectors(obj.get("ideal"), names, spec, "lattice.ideal")
    blocks = []
    raw_blocks = _require(obj, "blocks", list, "lattice.")
    for b, item in enumerate(raw_blocks):
        bp = f"lattice.blocks[{b}]"
        if not isinstance(item, dict):
            raise DocumentError(bp, "expected an object")
        kind = item.get("kind")
        size = item.get("size", 1)
        N = item.get("N")
        if N is not None:
            if not isinstance(N, list) or not all(isinstance(r, list) for r in N):
                raise DocumentError(f"{bp}.N", "expected a matrix")
            N = [[_scalar(x, FieldSpec(), f"{bp}.N[{r}][{c}]") for c, x in enumerate(row)] for r, row in enumerate(N)]
        if kind == "nilpotent":
            if N is None:
                raise DocumentError(f"{bp}.N", "missing required field")
            blocks.append(Block.nilpotent(N))
        elif kind == "scaled":
            m = _require(item, "m", int, f"{bp}.")
            blocks.append(Block.scaled(m, N, size))
        else:
            raise DocumentError(f"{bp}.kind", "expected 'nilpotent' or 'scaled'")
    try:
        dspec = DerivationBlockSpec(blocks, k)
    except BlockSpecError as exc:
        raise DocumentError("lattice.blocks", str(exc)) from None
    cand = obj.get("candidate")
    if not isinstance(cand, list) or not all(isinstance(r, list) for r in cand):
        raise DocumentError("lattice.candidate", "expected a matrix")
    # candidate entries may use alpha's field; the letter r denotes sqrt(d)
    try:
        cspec = spec.join(alpha_field(k))
    except FieldError as exc:
        raise DocumentError("lattice.k", str(exc)) from None
    candidate = [[_scalar(x, cspec, f"lattice.candidate[{r}][{c}]") for c, x in enumerate(row)]
                 for r, row in enumerate(cand)]
    transversal = None
    if "transversal" in obj:
        transversal = _vector(obj["transversal"], names, spec, "lattice.transversal")
    return LatticeData(dspec, ideal, candidate, transversal)


# --------------------------------------------------------------------------
# emitting


def emit_tree(g: LieAlgebra, omega: KForm | None = None, eta: KForm | None = None, field: FieldSpec | None = None) -> dict:
    names = list(g.names)
    out: dict = {"field": (field or g.field).short(), "dim": g.dim, "basis": names, "brackets": []}
    for i, j, vec in g.bracket_entries():
        out["brackets"].append({
            "i": names[i], "j": names[j],
            "terms": [{"k": names[k], "c": format_scalar(c)} for k, c in vec.items()],
        })
    if omega is not None:
        out["omega"] = format_form(omega, names)
    if eta is not None:
        out["eta"] = format_form(eta, names)
    return out


def emit_document(g: LieAlgebra, omega: KForm | None = None, eta: KForm | None = None,
                  field: FieldSpec | None = None) -> str:
    return json.dumps(emit_tree(g, omega, eta, field), indent=2, sort_keys=False) + "\n"


__all__ = [
    "Document", "DocumentError", "LatticeData", "parse_document", "document_from_tree", "emit_document", "emit_tree",
]
