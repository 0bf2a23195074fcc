from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lefschetz_lab.fieldcore import (
    FieldError, FieldMismatch, FieldSpec, Quad, RatFunc, ScalarSyntaxError, ScalarZeroDivision, UndeclaredVariable,
    alpha_field, field_arith, format_scalar, is_integer, is_rational, parse_field, parse_scalar, quadratic_root,
    specialize, squarefree_part,
)

Q = FieldSpec()
Q5 = FieldSpec.quadratic(5)
QT = FieldSpec.rational_functions(["t1", "t2"])


def test_fraction_reduction():
    assert parse_scalar("3/6", Q) == Fraction(1, 2)
    assert parse_scalar(" -4 / -8 ", Q) == Fraction(1, 2)


def test_quadratic_literal():
    x = parse_scalar("1/2 + 1/2*r", Q5)
    assert isinstance(x, Quad)
    assert (x.a, x.b, x.d) == (Fraction(1, 2), Fraction(1, 2), 5)


def test_ratfunc_literal_is_reduced():
    x = parse_scalar("t1^2/(t1-1)", QT)
    assert isinstance(x, RatFunc)
    assert format_scalar(x) == "(t1^2)/(t1-1)"
    # common factors cancel and the denominator is monic
    y = parse_scalar("(2*t1^2 - 2*t1)/(4*t1 - 4)", QT)
    assert y == parse_scalar("t1/2", QT)
    assert format_scalar(y) == format_scalar(parse_scalar("1/2*t1", QT))


def test_parse_errors():
    with pytest.raises(ScalarSyntaxError) as info:
        parse_scalar("1 + * 2", Q)
    assert info.value.pos >= 0
    with pytest.raises(UndeclaredVariable):
        parse_scalar("t3 + 1", QT)
    with pytest.raises(ScalarZeroDivision):
        parse_scalar("1/0", Q)
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("r", Q)


def test_field_specs():
    with pytest.raises(FieldError):
        FieldSpec.quadratic(8)
    with pytest.raises(FieldError):
        FieldSpec.quadratic(-3)
    with pytest.raises(FieldError):
        FieldSpec.rational_functions(["t", "t"])
    for text in ("Q", "quadratic:5", "ratfunc:t", "ratfunc:t1,t2", "quadratic:5:t"):
        assert parse_field(text).short() == text
    assert squarefree_part(12) == 3
    assert alpha_field(4) == FieldSpec.quadratic(3)


def test_arith_examples():
    assert field_arith("add", Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    alpha = quadratic_root(3)
    assert field_arith("add", alpha, field_arith("inv", alpha)) == 3
    assert field_arith("mul", alpha, alpha) == 3 * alpha - 1
    with pytest.raises(ZeroDivisionError):
        field_arith("inv", Fraction(0))


def test_mixed_fields_rejected():
    a = quadratic_root(3)
    b = quadratic_root(4)
    with pytest.raises(FieldMismatch):
        a + b
    with pytest.raises(FieldMismatch):
        Q5.coerce(QT.var("t1"))
    # rationals embed everywhere
    assert a + 1 == Q5.parse("5/2 + 1/2*r")


def test_rational_and_integer_predicates():
    two = Quad.make(Fraction(2), Fraction(0), 5)
    assert is_integer(two) and two == 2
    assert not is_rational(Q5.parse("1/2 + 1/2*r"))
    assert is_rational(QT.parse("(t1 + 1) - t1"))
    assert not is_integer(Fraction(1, 2))


def test_alpha_cubed_sum():
    alpha = quadratic_root(3)
    value = alpha ** 3 + alpha ** -3
    assert is_integer(value)
    # oracle: sympy's own algebraic simplification
    s = (3 + sympy.sqrt(5)) / 2
    assert sympy.nsimplify(sympy.expand(s ** 3 + s ** -3)) == 18
    assert value == 18


def test_alpha_inverse_square():
    alpha = quadratic_root(3)
    s = (3 + sympy.sqrt(5)) / 2
    expected = sympy.radsimp(s ** -2)
    got = alpha ** -2
    assert sympy.simplify(got.a + got.b * sympy.sqrt(5) - expected) == 0
    assert got == 8 - 3 * alpha


def test_specialize():
    x = QT.parse("t1^2/(t1-1) + t2")
    assert specialize(x, {"t1": Fraction(3), "t2": Fraction(1)}) == Fraction(11, 2)


def test_format_parse_round_trip():
    for spec, text in ((Q, "-7/3"), (Q5, "1/2 - 3/4*r"), (QT, "(t1^2 + t2)/(t1*t2 - 1)")):
        x = spec.parse(text)
        assert spec.parse(format_scalar(x)) == x
        assert format_scalar(spec.parse(format_scalar(x))) == format_scalar(x)


# ---------------------------------------------------------------- properties

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
quads = st.builds(lambda a, b: Q5.coerce(a) + Q5.coerce(b) * Q5.sqrt_d(), fractions, fractions)
polys = st.lists(st.integers(-4, 4), min_size=1, max_size=3)


def _ratfunc(num, den):
    t = QT.var("t1")
    u = QT.var("t2")
    p = sum((c * t ** i for i, c in enumerate(num)), QT.zero()) + u
    q = sum((c * t ** i for i, c in enumerate(den)), QT.zero()) + 1 + u * u
    return p / q


ratfuncs = st.builds(_ratfunc, polys, polys)


@pytest.mark.parametrize("strategy", [fractions, quads, ratfuncs], ids=["Q", "quadratic", "ratfunc"])
def test_field_axioms(strategy):
    @settings(max_examples=100, deadline=None)
    @given(strategy, strategy, strategy)
    def check(x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x and x * y == y * x
        if x != 0:
            assert x * (1 / x) == 1
        if x - y == 0:
            assert format_scalar(x) == format_scalar(y)
            assert hash(x) == hash(y)

    check()


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 10), st.integers(1, 12))
def test_alpha_power_sums_are_integers(k, ell):
    alpha = quadratic_root(k)
    v = alpha ** ell + alpha ** -ell
    assert is_integer(v)
    # Chebyshev-type recurrence a_l = k a_(l-1) - a_(l-2), a_0 = 2, a_1 = k
    seq = [2, k]
    while len(seq) <= ell:
        seq.append(k * seq[-1] - seq[-2])
    assert v == seq[ell]
