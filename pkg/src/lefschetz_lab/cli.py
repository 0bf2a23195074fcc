"""``lefschetz-lab`` command line.

Exit status: 0 when the requested verdict holds (or the command simply
succeeded), 1 when it fails (witnesses are printed), 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .catalog import Bundle, CatalogError, get_entry, list_entries, registry, run_entry
from .cohomology import NotClosed, betti_numbers
from .document import Document, DocumentError, emit_tree, parse_document
from .exterior import KForm, format_form
from .fieldcore import FieldError, format_scalar, parse_field
from .lattice import LatticeCertificate, LatticeError, lattice_check
from .lefschetz import LefschetzReport, NotUnimodular, contact_lefschetz, symplectic_lefschetz, theorem_main_check
from .liealg import AlgebraError, JacobiViolation, LieAlgebra, classify, is_heisenberg, is_unimodular
from .linalg import Subspace
from .symcon import StructureError, contactize, decontactize, verify_bg_conditions

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2

CHECKS = ("contact-lefschetz", "symplectic-lefschetz", "theorem", "lattice", "bg", "manifest")


class InputError(Exception):
    pass


@dataclass
class Source:
    """What a command runs on: a parsed document or a catalog bundle."""

    label: str
    bundle: Bundle
    document: Document | None = None


# --------------------------------------------------------------------------
# loading


def _load_document(path: str, field: str | None) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if field is not None:
        try:
            tree = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError("", exc.msg, exc.lineno, exc.colno) from None
        if isinstance(tree, dict):
            tree["field"] = parse_field(field).short()
        text = json.dumps(tree)
    return parse_document(text)


def _bundle_from_document(doc: Document) -> Bundle:
    b = Bundle(algebra=doc.algebra)
    if doc.omega is not None:
        b.symplectic = doc.symplectic()
    if doc.eta is not None:
        b.contact = doc.contact()
    return b


def _source(args) -> Source:
    if getattr(args, "catalog", None) and getattr(args, "input", None):
        raise InputError("give either a document or --catalog, not both")
    if getattr(args, "catalog", None):
        entry = get_entry(args.catalog)
        return Source(entry.id, entry.build())
    if not getattr(args, "input", None):
        raise InputError("no input: give a document path or --catalog ID")
    doc = _load_document(args.input, args.field)
    return Source(args.input, _bundle_from_document(doc), doc)


# --------------------------------------------------------------------------
# report rendering


def _form_text(a: KForm, names) -> str:
    return format_form(a, names)


def lefschetz_tree(rep: LefschetzReport, names) -> dict:
    return {
        "mode": rep.mode,
        "s": rep.s,
        "verdict": rep.verdict,
        "degrees": [
            {
                "k": d.k,
                "source_dim": d.source_dim,
                "target_dim": d.target_dim,
                "domain_covered": d.domain_covered,
                "well_defined": d.well_defined,
                "injective": d.injective,
                "surjective": d.surjective,
                "verdict": d.verdict,
                "witnesses": {k: _form_text(v, names) for k, v in sorted(d.witnesses.items())},
            }
            for d in rep.degrees
        ],
    }


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def lefschetz_text(tree: dict, witnesses: bool = True) -> list[str]:
    lines = [f"{tree['mode']} {tree['s']}-Lefschetz: {str(tree['verdict']).lower()}"]
    for d in tree["degrees"]:
        lines.append(
            f"  k={d['k']}  b={d['source_dim']}->{d['target_dim']}  covered {_yn(d['domain_covered'])}"
            f"  well-defined {_yn(d['well_defined'])}  injective {_yn(d['injective'])}"
            f"  surjective {_yn(d['surjective'])}"
        )
        if witnesses:
            for kind, text in d["witnesses"].items():
                lines.append(f"    {kind} witness: {text}")
    return lines


def certificate_tree(cert: LatticeCertificate, names) -> dict:
    def mat(m):
        return [[format_scalar(x) for x in row] for row in m]

    return {
        "algebra": cert.algebra_id,
        "valid": cert.valid,
        "ideal_nilpotent": cert.ideal_nilpotent,
        "rational_basis_ok": cert.rational_basis_ok,
        "integral_ok": cert.integral_ok,
        "derivation_matches": cert.derivation_matches,
        "candidate": mat(cert.candidate),
        "exp_matrix": mat(cert.exp_matrix),
        "structure_constants": [
            {"i": i, "j": j, "terms": [{"k": k, "c": format_scalar(c)} for k, c in sorted(v.items())]}
            for (i, j), v in sorted(cert.structure_constants.items())
        ],
        "irrational_constants": [list(t) for t in cert.irrational_constants],
        "offending_entries": [list(t) for t in cert.offending_entries],
    }


def certificate_text(tree: dict) -> list[str]:
    lines = [f"lattice certificate {tree['algebra']}: {'valid' if tree['valid'] else 'invalid'}"]
    for key in ("ideal_nilpotent", "rational_basis_ok", "integral_ok", "derivation_matches"):
        val = tree[key]
        lines.append(f"  {key}: {'n/a' if val is None else _yn(val)}")
    lines.append("  exp(t0 D) in the candidate basis:")
    width = max((len(x) for row in tree["exp_matrix"] for x in row), default=1)
    for row in tree["exp_matrix"]:
        lines.append("    [" + " ".join(x.rjust(width) for x in row) + "]")
    if tree["offending_entries"]:
        lines.append(f"  non-integral entries: {tree['offending_entries']}")
    if tree["irrational_constants"]:
        lines.append(f"  irrational structure constants (i, j, k): {tree['irrational_constants']}")
    return lines


def _emit(args, tree: dict, lines: list[str]):
    if args.format == "structured":
        sys.stdout.write(json.dumps(tree, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# checks


def _run_check(args, src: Source) -> int:
    check = args.check
    b = src.bundle
    if check == "contact-lefschetz":
        c = b.contact
        if c is None:
            if b.symplectic is None:
                raise DocumentError("eta", "contact-lefschetz needs eta, or omega to contactize")
            c = contactize(b.symplectic)
        s = _degree(args, c.n)
        tree = lefschetz_tree(contact_lefschetz(c, s), c.algebra.names)
        _emit(args, tree, lefschetz_text(tree, args.witnesses))
        return EXIT_OK if tree["verdict"] else EXIT_FALSE
    if check == "symplectic-lefschetz":
        sp = b.symplectic
        if sp is None:
            if b.contact is None:
                raise DocumentError("omega", "symplectic-lefschetz needs omega (or eta to decontactize)")
            sp = decontactize(b.contact)
        s = _degree(args, sp.n)
        tree = lefschetz_tree(symplectic_lefschetz(sp, s), sp.algebra.names)
        _emit(args, tree, lefschetz_text(tree, args.witnesses))
        return EXIT_OK if tree["verdict"] else EXIT_FALSE
    if check == "theorem":
        sp = b.symplectic or (decontactize(b.contact) if b.contact else None)
        if sp is None:
            raise DocumentError("omega", "the theorem check needs omega or eta")
        res = theorem_main_check(sp)
        tree = {"symplectic_1_lefschetz": res.h_verdict, "contact_1_lefschetz": res.g_verdict, "agree": res.agree}
        lines = [
            f"symplectic 1-Lefschetz: {str(res.h_verdict).lower()}",
            f"contact 1-Lefschetz (contactization): {str(res.g_verdict).lower()}",
            f"agree: {_yn(res.agree)}",
        ]
        _emit(args, tree, lines)
        return EXIT_OK if res.agree else EXIT_FALSE
    if check == "lattice":
        return _lattice(args, src)
    if check == "bg":
        return _bg(args, src)
    if check == "manifest":
        return _manifest(args, src.label)
    raise InputError(f"unknown check {check!r}")


def _degree(args, n: int) -> int:
    s = 1 if args.s is None else args.s
    if not 0 <= s <= n:
        raise InputError(f"--s must lie in 0..{n}")
    return s


def _lattice(args, src: Source) -> int:
    b = src.bundle
    if b.lattice is not None:
        fx = b.lattice
        cert = lattice_check(fx.algebra, fx.ideal, fx.spec, fx.candidate, fx.transversal, fx.id)
        names = fx.algebra.names
    else:
        doc = src.document
        if doc is None or doc.lattice is None:
            raise DocumentError("lattice", "no lattice block in the input")
        ld = doc.lattice
        g = b.contact.algebra if b.contact is not None and b.contact.algebra is doc.algebra else doc.algebra
        cert = lattice_check(g, ld.ideal, ld.spec, ld.candidate, ld.transversal, src.label)
        names = g.names
    tree = certificate_tree(cert, names)
    _emit(args, tree, certificate_text(tree))
    return EXIT_OK if cert.valid else EXIT_FALSE


def _bg(args, src: Source) -> int:
    sp = src.bundle.symplectic
    if sp is None:
        raise DocumentError("omega", "bg-check needs a symplectic form")
    names = sp.algebra.names
    vectors = None
    if getattr(args, "complement", None):
        vectors = []
        for name in args.complement.split(","):
            name = name.strip()
            if name not in names:
                raise InputError(f"unknown basis element {name!r} in --complement")
            vectors.append([int(j == names.index(name)) for j in range(len(names))])
    elif src.document is not None and src.document.complement is not None:
        vectors = src.document.complement
    elif src.bundle.complement is not None:
        vectors = src.bundle.complement
    if vectors is None:
        raise InputError("bg-check needs a complement (--complement or the document's 'complement')")
    rep = verify_bg_conditions(sp, Subspace(len(names), vectors), seed=0)
    labels = (
        "abelian_complement", "even_dimensions", "center_meets_commutator_trivially",
        "split_representative", "split_parts_nonexact", "infinitesimal_symplectic",
    )
    tree = {k: v for k, v in zip(labels, rep.flags)}
    tree["all_pass"] = rep.all_pass
    tree["obstruction"] = rep.obstruction
    tree["correction"] = format_form(rep.correction, names) if rep.correction is not None else None
    lines = [f"Benson-Gordon conditions: {'all pass' if rep.all_pass else 'not all pass'}"]
    lines += [f"  {k}: {_yn(v)}" for k, v in zip(labels, rep.flags)]
    if rep.obstruction:
        lines.append(f"  obstruction: {rep.obstruction}")
    _emit(args, tree, lines)
    return EXIT_OK if rep.all_pass else EXIT_FALSE


def _manifest(args, entry_id: str) -> int:
    checks = run_entry(entry_id)
    tree = {
        "id": entry_id,
        "ok": all(c.ok for c in checks),
        "checks": [
            {"key": c.key, "expected": _jsonable(c.expected), "actual": _jsonable(c.actual), "origin": c.origin,
             "ok": c.ok}
            for c in checks
        ],
    }
    lines = [f"{entry_id}: {'all expectations hold' if tree['ok'] else 'MISMATCH'}"]
    for c in tree["checks"]:
        mark = "ok " if c["ok"] else "BAD"
        lines.append(f"  {mark} {c['key']} = {c['actual']} (expected {c['expected']}, {c['origin']})")
    _emit(args, tree, lines)
    return EXIT_OK if tree["ok"] else EXIT_FALSE


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# --------------------------------------------------------------------------
# commands


def _algebra_summary(g: LieAlgebra) -> tuple[dict, list[str]]:
    cls = classify(g)
    b = betti_numbers(g)
    tree = {
        "dim": g.dim,
        "field": g.field.short(),
        "nilpotent": cls.nilpotent,
        "solvable": cls.solvable,
        "completely_solvable": cls.completely_solvable,
        "unimodular": is_unimodular(g),
        "heisenberg": is_heisenberg(g),
        "betti": b,
    }
    lines = [
        f"dimension {g.dim} over {g.field}",
        f"nilpotent {_yn(cls.nilpotent)}, solvable {_yn(cls.solvable)}, completely solvable {cls.completely_solvable}",
        f"unimodular {_yn(tree['unimodular'])}, heisenberg {_yn(tree['heisenberg'])}",
        "betti " + " ".join(str(x) for x in b),
    ]
    return tree, lines


def cmd_analyze(args) -> int:
    src = _source(args)
    if args.check:
        return _run_check(args, src)
    tree, lines = _algebra_summary(src.bundle.main_algebra)
    sp, c = src.bundle.symplectic, src.bundle.contact
    if sp is not None:
        tree["symplectic"] = {"frobenius": sp.frobenius}
        lines.append(f"symplectic form verified (frobenius {_yn(sp.frobenius)})")
    if c is not None and src.bundle.main_algebra is c.algebra:
        tree["contact"] = {"reeb": [format_scalar(x) for x in c.xi]}
        lines.append("contact form verified, Reeb vector (" + ", ".join(tree["contact"]["reeb"]) + ")")
    _emit(args, tree, lines)
    return EXIT_OK


def cmd_lefschetz(args) -> int:
    args.check = f"{args.mode}-lefschetz"
    return _run_check(args, _source(args))


def _structure_for_contactize(src: Source):
    if src.bundle.symplectic is None:
        raise DocumentError("omega", "contactize needs a symplectic form")
    return src.bundle.symplectic


def cmd_contactize(args) -> int:
    s = _structure_for_contactize(_source(args))
    c = contactize(s)
    sys.stdout.write(json.dumps(emit_tree(c.algebra, eta=c.eta), indent=2) + "\n")
    return EXIT_OK


def cmd_decontactize(args) -> int:
    src = _source(args)
    if src.bundle.contact is None:
        raise DocumentError("eta", "decontactize needs a contact form")
    s = decontactize(src.bundle.contact)
    sys.stdout.write(json.dumps(emit_tree(s.algebra, omega=s.omega), indent=2) + "\n")
    return EXIT_OK


def cmd_bg_check(args) -> int:
    return _bg(args, _source(args))


def cmd_lattice_check(args) -> int:
    return _lattice(args, _source(args))


def cmd_catalog(args) -> int:
    if args.action == "list":
        reg = registry()
        if args.format == "structured":
            tree = [{"id": i, "description": reg[i].description, "params": reg[i].params} for i in list_entries()]
            sys.stdout.write(json.dumps(tree, indent=2) + "\n")
        else:
            width = max(len(i) for i in reg)
            for i in list_entries():
                sys.stdout.write(f"{i.ljust(width)}  {reg[i].description}\n")
        return EXIT_OK
    if not args.id:
        raise InputError("catalog run needs an id")
    entry = get_entry(args.id)
    if not args.check:
        return _manifest(args, entry.id)
    return _run_check(args, Source(entry.id, entry.build()))


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--field", help="override the document's field, e.g. Q or quadratic:5")
    common.add_argument("--s", type=int, help="degree bound for Lefschetz checks (default 1)")
    common.add_argument("--witnesses", action=argparse.BooleanOptionalAction, default=True,
                        help="print witness forms for failing degrees")
    common.add_argument("-v", "--verbose", action="count", default=0)

    def with_input(p):
        p.add_argument("input", nargs="?", help="document path")
        p.add_argument("--catalog", metavar="ID", help="use a catalog entry instead of a document")
        return p

    parser = argparse.ArgumentParser(prog="lefschetz-lab", description="Contact and symplectic Lefschetz analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = with_input(sub.add_parser("analyze", parents=[common], help="classification and Betti numbers"))
    p.add_argument("--check", choices=CHECKS)
    p.add_argument("--complement", help="comma separated basis names for bg checks")
    p.set_defaults(func=cmd_analyze)

    p = with_input(sub.add_parser("lefschetz", parents=[common], help="s-Lefschetz report"))
    p.add_argument("--mode", choices=("contact", "symplectic"), default="contact")
    p.set_defaults(func=cmd_lefschetz)

    p = with_input(sub.add_parser("contactize", parents=[common], help="emit the contactization"))
    p.set_defaults(func=cmd_contactize)
    p = with_input(sub.add_parser("decontactize", parents=[common], help="emit the symplectic quotient"))
    p.set_defaults(func=cmd_decontactize)

    p = with_input(sub.add_parser("bg-check", parents=[common], help="Benson-Gordon conditions"))
    p.add_argument("--complement", help="comma separated basis names spanning the complement")
    p.set_defaults(func=cmd_bg_check)

    p = with_input(sub.add_parser("lattice-check", parents=[common], help="lattice certificate"))
    p.set_defaults(func=cmd_lattice_check)

    p = sub.add_parser("catalog", parents=[common], help="list or run catalog entries")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("id", nargs="?")
    p.add_argument("--check", choices=CHECKS)
    p.add_argument("--complement", help="comma separated basis names for bg checks")
    p.set_defaults(func=cmd_catalog)
    return parser


def _error(args, kind: str, message: str, extra: dict | None = None) -> int:
    sys.stderr.write(f"error: {message}\n")
    if args is not None and getattr(args, "format", "text") == "structured":
        tree = {"error": kind, "message": message}
        if extra:
            tree.update(extra)
        sys.stdout.write(json.dumps(tree, indent=2) + "\n")
    return EXIT_INPUT


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except JacobiViolation as exc:
        g_names = None
        if getattr(args, "input", None):
            try:
                with open(args.input, encoding="utf-8") as fh:
                    g_names = json.load(fh).get("basis")
            except (OSError, ValueError, AttributeError):
                g_names = None
        triple = [g_names[i] if g_names else i for i in exc.triple]
        msg = f"Jacobi identity fails on basis triple ({', '.join(map(str, triple))})"
        return _error(args, "jacobi", msg, {"triple": triple, "defect": [format_scalar(x) for x in exc.defect]})
    except DocumentError as exc:
        return _error(args, "document", str(exc), {"path": exc.path, "line": exc.line, "column": exc.column})
    except NotClosed:
        return _error(args, "structure", "the given form is not closed")
    except NotUnimodular as exc:
        return _error(args, "not_unimodular", str(exc))
    except (StructureError, LatticeError, CatalogError, FieldError, AlgebraError, InputError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        return _error(args, type(exc).__name__, str(msg))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
