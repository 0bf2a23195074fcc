import json

import pytest

from lefschetz_lab.catalog import example_bg, list_entries
from lefschetz_lab.cli import EXIT_FALSE, EXIT_INPUT, EXIT_OK, run
from lefschetz_lab.document import emit_tree, parse_document
from lefschetz_lab.liealg import is_heisenberg


@pytest.fixture
def bg_file(tmp_path):
    s, _ = example_bg()
    path = tmp_path / "bg.json"
    path.write_text(json.dumps(emit_tree(s.algebra, omega=s.omega)))
    return str(path)


@pytest.fixture
def broken_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"dim": 3, "basis": ["a", "b", "c"], "brackets": [
        {"i": "a", "j": "b", "terms": [{"k": "a", "c": 1}]},
        {"i": "a", "j": "c", "terms": [{"k": "b", "c": 1}]},
    ]}))
    return str(path)


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_heisenberg_catalog_contact(capsys):
    code, out, _ = call(capsys, "catalog", "run", "heisenberg-5", "--check", "contact-lefschetz", "--s", "1")
    assert code == EXIT_OK
    assert "contact 1-Lefschetz: true" in out


def test_bg_document_contact_two(capsys, bg_file):
    code, out, _ = call(capsys, "analyze", bg_file, "--check", "contact-lefschetz", "--s", "2")
    assert code == EXIT_FALSE
    assert "kernel witness: x1^x2" in out
    code, out, _ = call(capsys, "analyze", bg_file, "--check", "contact-lefschetz", "--s", "2",
                        "--format", "structured")
    rep = json.loads(out)
    assert rep["verdict"] is False
    assert rep["degrees"][2]["witnesses"]["kernel"] == "x1^x2"


def test_jacobi_failure(capsys, broken_file):
    code, _, err = call(capsys, "analyze", broken_file)
    assert code == EXIT_INPUT
    assert "Jacobi" in err and "(a, b, c)" in err
    code, out, _ = call(capsys, "analyze", broken_file, "--format", "structured")
    assert code == EXIT_INPUT
    assert json.loads(out)["error"] == "jacobi"


def test_structured_output_is_deterministic(capsys, bg_file):
    first = call(capsys, "lefschetz", bg_file, "--mode", "symplectic", "--s", "2", "--format", "structured")
    second = call(capsys, "lefschetz", bg_file, "--mode", "symplectic", "--s", "2", "--format", "structured")
    assert first == second
    assert first[0] == EXIT_FALSE


def test_analyze_plain(capsys, bg_file):
    code, out, _ = call(capsys, "analyze", bg_file)
    assert code == EXIT_OK
    assert "betti 1 2 5 8 8 8 5 2 1" in out


def test_catalog_list_and_run(capsys):
    code, out, _ = call(capsys, "catalog", "list")
    assert code == EXIT_OK
    assert [line.split()[0] for line in out.splitlines()] == list_entries()
    code, _, _ = call(capsys, "catalog", "run", "bg")
    assert code == EXIT_OK
    code, _, err = call(capsys, "catalog", "run", "nope")
    assert code == EXIT_INPUT and "nope" in err


def test_catalog_checks(capsys):
    assert call(capsys, "catalog", "run", "bg", "--check", "bg")[0] == EXIT_OK
    assert call(capsys, "catalog", "run", "lattice-sec43-3", "--check", "lattice")[0] == EXIT_OK
    assert call(capsys, "catalog", "run", "h3xR", "--check", "theorem")[0] == EXIT_OK
    assert call(capsys, "catalog", "run", "sec42-3-2", "--check", "contact-lefschetz", "--s", "2")[0] == EXIT_FALSE


def test_lattice_certificate_structured(capsys):
    code, out, _ = call(capsys, "lattice-check", "--catalog", "lattice-sec41-3", "--format", "structured")
    assert code == EXIT_OK
    cert = json.loads(out)
    assert cert["valid"] is True and cert["integral_ok"] is True


def test_contactize_and_decontactize(capsys, tmp_path, bg_file):
    code, out, _ = call(capsys, "contactize", "--catalog", "abelian-4")
    assert code == EXIT_OK
    path = tmp_path / "h5.json"
    path.write_text(out)
    doc = parse_document(out)
    assert is_heisenberg(doc.algebra) and doc.eta is not None
    code, out, _ = call(capsys, "decontactize", str(path))
    assert code == EXIT_OK
    back = parse_document(out)
    assert back.algebra.dim == 4 and back.algebra.bracket_entries() == []


def test_missing_omega_is_input_error(capsys, tmp_path):
    path = tmp_path / "h3.json"
    path.write_text(json.dumps({"dim": 3, "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "c": 1}]}]}))
    code, _, err = call(capsys, "lefschetz", str(path), "--mode", "symplectic")
    assert code == EXIT_INPUT and "omega" in err


def test_input_source_rules(capsys, bg_file):
    assert call(capsys, "analyze")[0] == EXIT_INPUT
    assert call(capsys, "analyze", bg_file, "--catalog", "bg")[0] == EXIT_INPUT
    assert call(capsys, "analyze", "/nonexistent.json")[0] == EXIT_INPUT


def test_malformed_json_position(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 3,\n  "brackets": [}')
    code, _, err = call(capsys, "analyze", str(path))
    assert code == EXIT_INPUT and "line 2" in err


def test_field_override(capsys, tmp_path):
    path = tmp_path / "h3.json"
    path.write_text(json.dumps({"dim": 3, "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "c": "r"}]}],
                                "eta": "e3"}))
    # r only parses over a quadratic field
    assert call(capsys, "analyze", str(path))[0] == EXIT_INPUT
    code, out, _ = call(capsys, "lefschetz", str(path), "--field", "quadratic:2")
    assert code == EXIT_OK and "true" in out


def test_no_witnesses_flag(capsys, bg_file):
    code, out, _ = call(capsys, "lefschetz", bg_file, "--mode", "symplectic", "--s", "2", "--no-witnesses")
    assert code == EXIT_FALSE and "witness" not in out


def test_non_unimodular_theorem_is_input_error(capsys):
    assert call(capsys, "catalog", "run", "aff-R", "--check", "theorem")[0] == EXIT_INPUT
