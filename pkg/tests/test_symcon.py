from fractions import Fraction

import pytest

from lefschetz_lab.catalog import (
    abelian, aff_r, bg_algebra, example_41, example_42, example_bg, h3_plus_r, heisenberg, sl2,
)
from lefschetz_lab.cohomology import NotClosed, betti_numbers, cohomology
from lefschetz_lab.exterior import KForm, contract, parse_form, wedge, wedge_power
from lefschetz_lab.fieldcore import FieldSpec
from lefschetz_lab.lefschetz import symplectic_lefschetz
from lefschetz_lab.liealg import build_algebra, ce_d, center, classify, commutator, is_heisenberg, is_unimodular
from lefschetz_lab.linalg import Subspace
from lefschetz_lab.symcon import (
    Degenerate, DimensionMismatch, EvenDimension, NotContact, OddDimension, TrivialCenter, contactize, decontactize,
    horizontal_drop, horizontal_lift, roundtrip_isomorphism, verify_bg_conditions, verify_contact, verify_symplectic,
)

Q = FieldSpec()


def unit(n, *idx):
    return [[Fraction(int(j == i)) for j in range(n)] for i in idx]


def test_verify_symplectic():
    s = abelian(2)
    assert s.n == 2 and not s.frobenius
    assert not example_bg()[0].frobenius
    a = aff_r()
    assert a.frobenius and not is_unimodular(a.algebra)
    g3 = build_algebra(3, None, [], Q)
    with pytest.raises(OddDimension):
        verify_symplectic(g3, KForm.monomial([0, 1], 3))
    with pytest.raises(Degenerate):
        verify_symplectic(abelian(2).algebra, KForm.monomial([0, 1], 4))
    h = h3_plus_r().algebra
    with pytest.raises(NotClosed):
        verify_symplectic(h, parse_form("e1^e2 + e3^e4", h.names, Q))


def test_verify_contact():
    c = heisenberg(1)
    assert c.xi == (0, 0, 1)
    c5 = heisenberg(2)
    assert list(c5.xi) == [0, 0, 0, 0, 1]
    with pytest.raises(NotContact):
        verify_contact(build_algebra(3, None, [], Q), KForm.covector(0, 3))
    with pytest.raises(EvenDimension):
        verify_contact(abelian(1).algebra, KForm.covector(0, 2))


def test_reeb_conditions():
    for c in (heisenberg(3), sl2(), example_bg()[1], example_41([3, 4]).contact):
        assert contract(c.xi, c.eta) == KForm.unit(c.dim)
        assert contract(c.xi, c.deta).is_zero()
        assert not wedge(c.eta, wedge_power(c.deta, c.n)).is_zero()


def test_contactize_abelian_is_heisenberg():
    c = contactize(abelian(2))
    assert is_heisenberg(c.algebra)
    assert c.algebra.names[0] == "xi"
    assert list(c.xi) == [1, 0, 0, 0, 0]
    assert center(c.algebra) == Subspace(5, unit(5, 0))


def test_contactize_section41_brackets():
    ex = example_41([3])
    g = ex.contact.algebra
    names = g.names
    f1, f2, u1, v1 = (names.index(x) for x in ("f1", "f2", "u1", "v1"))
    assert g.bracket_basis(f1, f2) == {0: 1}
    assert g.bracket_basis(u1, v1) == {0: 1}


def test_contactize_bg_brackets():
    s, c = example_bg()
    g = c.algebra
    idx = {n: i for i, n in enumerate(g.names)}
    assert g.bracket_basis(idx["w1"], idx["w2"]) == {0: 1}
    assert g.bracket_basis(idx["x1"], idx["z1"]) == {0: 1}
    assert g.bracket_basis(idx["y1"], idx["y2"]) == {0: 1}
    assert g.bracket_basis(idx["x1"], idx["y1"]) == {idx["z1"]: 1}


def test_omega_is_minus_d_eta():
    for s in (abelian(2), h3_plus_r(), example_bg()[0], example_42(3, 2)[0]):
        c = contactize(s)
        assert horizontal_drop(-c.deta) == s.omega
        assert center(c.algebra).dim == 1


def test_decontactize():
    s = decontactize(heisenberg(2))
    assert s.algebra.names == ("x1", "x2", "y1", "y2")
    assert s.algebra.bracket_entries() == []
    assert s.omega == parse_form("x1^y1 + x2^y2", s.algebra.names, Q)
    with pytest.raises(TrivialCenter):
        decontactize(sl2())


@pytest.mark.parametrize("make", [lambda: abelian(2), h3_plus_r, lambda: example_bg()[0],
                                  lambda: example_41([3, 4]).symplectic, lambda: example_42(3, 2)[0]])
def test_round_trip(make):
    s = make()
    c = contactize(s)
    s2 = decontactize(c)
    assert s2.algebra.bracket_entries() == s.algebra.bracket_entries()
    assert s2.omega == s.omega
    c2, iso = roundtrip_isomorphism(c)
    assert len(iso) == c.dim


def test_transfer_of_classification():
    for s in (abelian(2), h3_plus_r(), example_bg()[0], example_41([3]).symplectic, aff_r()):
        g = contactize(s).algebra
        assert is_unimodular(g) == is_unimodular(s.algebra)
        a, b = classify(g), classify(s.algebra)
        assert a.nilpotent == b.nilpotent and a.solvable == b.solvable


def test_xi_in_commutator():
    for s in (h3_plus_r(), example_bg()[0], example_41([3, 4]).symplectic, abelian(1)):
        c = contactize(s)
        nh = commutator(s.algebra)
        ng = commutator(c.algebra)
        lifted = [[Fraction(0)] + list(v) for v in nh.basis()]
        assert ng.contains(list(c.xi))
        assert ng == Subspace(c.dim, lifted + unit(c.dim, 0))


def test_same_differential_on_horizontal_forms():
    s, c = example_bg()
    for text in ("x1^x2", "w1^y2", "x1^y1^z2", "w2"):
        beta = parse_form(text, s.algebra.names, Q)
        assert ce_d(c.algebra, horizontal_lift(beta)) == horizontal_lift(ce_d(s.algebra, beta))


def test_closed_one_forms_on_unimodular_contactizations():
    for s in (abelian(2), h3_plus_r(), example_bg()[0], example_41([3]).symplectic):
        c = contactize(s)
        n = c.n
        for alpha in cohomology(c.algebra, 1).representatives:
            assert wedge(wedge_power(c.deta, n), alpha).is_zero()
            im = wedge(wedge(c.eta, wedge_power(c.deta, n - 1)), alpha)
            assert ce_d(c.algebra, im).is_zero()


def test_center_is_trivial_or_reeb():
    for c in (heisenberg(2), sl2(), example_bg()[1], example_41([3]).contact):
        z = center(c.algebra)
        assert z.dim in (0, 1)
        if z.dim == 1:
            assert z.contains(list(c.xi))


# ---------------------------------------------------------------- BG conditions


def test_bg_abelian_all_pass():
    s = abelian(2)
    rep = verify_bg_conditions(s, Subspace.full(4))
    assert rep.all_pass


def test_bg_nilpotent_fails_center_condition():
    s = h3_plus_r()
    # commutator is e3; a complement of dimension b1 = 3
    rep = verify_bg_conditions(s, Subspace(4, unit(4, 0, 1, 3)))
    assert not rep.center_meets_commutator_trivially
    assert not rep.all_pass


def test_bg_section41_agrees_with_lefschetz():
    ex = example_41([3, 4])
    s = ex.symplectic
    rep = verify_bg_conditions(s, Subspace(s.dim, unit(s.dim, 0, 1)))
    assert rep.all_pass == symplectic_lefschetz(s, 1).verdict
    assert rep.all_pass


def test_bg_benson_gordon_algebra():
    s, _ = example_bg()
    rep = verify_bg_conditions(s, Subspace(8, unit(8, 0, 1)))
    assert rep.all_pass == symplectic_lefschetz(s, 1).verdict


def test_bg_dimension_mismatch():
    s, _ = example_bg()
    with pytest.raises(DimensionMismatch):
        verify_bg_conditions(s, Subspace(8, unit(8, 0)))
