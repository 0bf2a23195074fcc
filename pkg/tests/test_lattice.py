from fractions import Fraction

import pytest
import sympy

import oracle
from lefschetz_lab.catalog import CatalogError, aff_r, example_41, heisenberg, lattice_fixture
from lefschetz_lab.fieldcore import FieldSpec, is_integer, quadratic_root
from lefschetz_lab.lattice import (
    Block, BlockSpecError, DerivationBlockSpec, LatticeError, NotUnimodular, WrongCodimension, bg_parametrization,
    bg_solution_space, companion_matrix, exact_exp, jordan_nilpotent, lattice_check, poly_power_coeffs,
    verify_nilpotent_ideal,
)
from lefschetz_lab.liealg import build_algebra
from lefschetz_lab.linalg import identity, mat_inverse, mat_power, mat_scale, matmul

Q = FieldSpec()


def unit(n, i):
    return [Fraction(int(j == i)) for j in range(n)]


def certify(fx):
    return lattice_check(fx.algebra, fx.ideal, fx.spec, fx.candidate, fx.transversal, fx.id)


# ---------------------------------------------------------------- exact_exp


def test_exact_exp_unipotent():
    spec = DerivationBlockSpec([Block.nilpotent([[0, 1], [0, 0]])], 3)
    assert exact_exp(spec) == [[1, 1], [0, 1]]


def test_exact_exp_scaled_jordan():
    m = 4
    spec = DerivationBlockSpec([Block.scaled(1, jordan_nilpotent(m))], 3)
    alpha = quadratic_root(3)
    # T_m has 1/(i-j)! below the diagonal
    T = [[Fraction(1, sympy.factorial(i - j)) if i >= j else Fraction(0) for j in range(m)] for i in range(m)]
    assert exact_exp(spec) == mat_scale(alpha, T)


def test_exact_exp_inverse_square():
    spec = DerivationBlockSpec([Block.scaled(-2)], 3)
    got = exact_exp(spec)[0][0]
    want = sympy.radsimp(((3 + sympy.sqrt(5)) / 2) ** -2)
    assert sympy.simplify(oracle.to_sympy(got, 5) - want) == 0
    alpha = quadratic_root(3)
    assert got == 8 - 3 * alpha


def test_block_spec_errors():
    with pytest.raises(BlockSpecError):
        DerivationBlockSpec([Block.nilpotent([[1, 0], [0, 0]])], 3)
    with pytest.raises(BlockSpecError):
        DerivationBlockSpec([Block.scaled(1)], 2)


@pytest.mark.parametrize("m,size", [(1, 3), (-2, 2), (2, 4)])
def test_block_commutation(m, size):
    N = jordan_nilpotent(size)
    alpha = quadratic_root(5)
    E_scaled = mat_scale(alpha ** m, identity(size))
    E_nil = exact_exp(DerivationBlockSpec([Block.nilpotent(N)], 5))
    got = exact_exp(DerivationBlockSpec([Block.scaled(m, N)], 5))
    assert got == matmul(E_scaled, E_nil) == matmul(E_nil, E_scaled)


# ---------------------------------------------------------------- ideals


def test_verify_nilpotent_ideal():
    g = example_41([3]).contact.algebra
    names = g.names
    ideal = [unit(g.dim, names.index(x)) for x in ("xi", "f2", "u1", "v1")]
    assert verify_nilpotent_ideal(g, ideal)
    h3 = heisenberg(1).algebra
    assert verify_nilpotent_ideal(h3, [unit(3, 1), unit(3, 2)])
    aff = build_algebra(2, None, [(0, 1, 1, 1)], Q)
    assert not verify_nilpotent_ideal(aff, [unit(2, 0)])
    with pytest.raises(WrongCodimension):
        verify_nilpotent_ideal(h3, [unit(3, 2)])


def test_companion_matrix():
    coeffs = poly_power_coeffs([1, -3, 1], 2)
    assert coeffs == [1, -6, 11, -6, 1]
    C = companion_matrix(coeffs[:-1])
    assert [row[-1] for row in C] == [-1, 6, -11, 6]
    # C satisfies its own polynomial
    acc = [[Fraction(0)] * 4 for _ in range(4)]
    for e, c in enumerate(coeffs):
        P = mat_power(C, e)
        acc = [[acc[i][j] + c * P[i][j] for j in range(4)] for i in range(4)]
    assert all(x == 0 for row in acc for x in row)


# ---------------------------------------------------------------- certificates


def test_sec41_certificate():
    fx = lattice_fixture("sec41", [3])
    cert = certify(fx)
    assert cert.valid and cert.derivation_matches
    assert cert.exp_matrix == [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 3]]
    # [w1, w~1] = xi in the candidate basis
    assert cert.structure_constants[(2, 3)] == {0: 1}


def test_sec41_several_blocks():
    cert = certify(lattice_fixture("sec41", [4, 4]))
    assert cert.valid
    with pytest.raises(CatalogError):
        lattice_fixture("sec41", [3, 4])


@pytest.mark.parametrize("k", [3, 4, 5])
def test_sec42_certificate(k):
    fx = lattice_fixture("sec42", k, 2)
    cert = certify(fx)
    assert cert.valid and cert.derivation_matches
    assert cert.exp_matrix == fx.expected


def test_sec42_odd_m_rejected():
    with pytest.raises(CatalogError):
        lattice_fixture("sec42", 3, 3)


@pytest.mark.parametrize("k", [3, 4])
def test_sec43_certificate(k):
    fx = lattice_fixture("sec43", k)
    cert = certify(fx)
    assert cert.valid and cert.derivation_matches
    E = cert.exp_matrix
    assert [r[:2] for r in E[:2]] == [[1, 1], [0, 1]]
    assert [r[2:4] for r in E[2:4]] == [[0, -1], [1, k]]
    assert [r[4:6] for r in E[4:6]] == [[k * k - 1, k], [-k, -1]]
    assert [r[6:8] for r in E[6:8]] == [[k, 1], [-1, 0]]


@pytest.mark.xfail(strict=True, reason="the claimed blocks have trace k^2+2 and determinant -1; exp(2 t0) gives k^2-2")
def test_sec43_claimed_blocks():
    fx = lattice_fixture("sec43", 3)
    assert certify(fx).exp_matrix == fx.expected


@pytest.mark.parametrize("kind,args", [("sec41", ([3],)), ("sec42", (3, 2)), ("sec43", (3,))])
def test_conjugation_consistency_and_powers(kind, args):
    fx = lattice_fixture(kind, *args)
    cert = certify(fx)
    P = fx.candidate
    assert matmul(P, matmul(cert.exp_matrix, mat_inverse(P))) == exact_exp(fx.spec)
    for e in range(1, 7):
        assert all(is_integer(x) for row in mat_power(cert.exp_matrix, e) for x in row)


def test_non_integral_candidate_reports_offenders():
    fx = lattice_fixture("sec41", [3])
    n = len(fx.ideal)
    cert = lattice_check(fx.algebra, fx.ideal, fx.spec, identity(n))
    assert cert.rational_basis_ok and not cert.integral_ok and not cert.valid
    assert (2, 2) in cert.offending_entries


def test_singular_candidate():
    fx = lattice_fixture("sec41", [3])
    n = len(fx.ideal)
    with pytest.raises(LatticeError):
        lattice_check(fx.algebra, fx.ideal, fx.spec, [[0] * n for _ in range(n)])


def test_refuses_non_unimodular():
    g = aff_r().algebra
    spec = DerivationBlockSpec([Block.scaled(1)], 3)
    with pytest.raises(NotUnimodular):
        lattice_check(g, [unit(2, 1)], spec, [[1]])


# ---------------------------------------------------------------- BG linear system


@pytest.mark.parametrize("k", [3, 4, 5, 7])
def test_bg_solution_space(k):
    res = bg_solution_space(k)
    assert res.rank_of_M == 2 and res.kernel_dim == 2 and res.parametrization_ok
    M = sympy.Matrix(res.matrix)
    assert M.rank() == 2


def test_bg_parametrization_values():
    res = bg_solution_space(3)
    alpha = quadratic_root(3)
    assert res.p == 1
    assert res.q == 21 - 8 * alpha
    p1, p2, q1, q2 = bg_parametrization(3, 0, -8)
    assert (p1, p2) == (1, 0)
