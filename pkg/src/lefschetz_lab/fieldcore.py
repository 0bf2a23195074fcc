"""Exact coefficient fields.

Three kinds of field are supported, plus the composite of the last two:

* the rationals, whose elements are plain ``fractions.Fraction`` values;
* real quadratic fields Q(sqrt d), elements ``Quad(a, b) = a + b sqrt d``;
* rational function fields Q(t1, ..., tm), elements ``RatFunc``.

Every element is stored in a canonical form, so equality is structural.  A
value that happens to lie in a smaller field of the tower
Q <= Q(t) <= Q(t)(sqrt d) is always stored in the smallest one: a ``Quad``
never has a zero irrational part and a ``RatFunc`` is never a constant.
This is what makes ``Quad(2, 0) == 2`` hold without any coercion table.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring


class FieldError(ValueError):
    pass


class FieldMismatch(FieldError):
    """Operands live in fields with no common extension in our tower."""


class ScalarSyntaxError(FieldError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


class UndeclaredVariable(ScalarSyntaxError):
    pass


class ScalarZeroDivision(ScalarSyntaxError, ZeroDivisionError):
    pass


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor-class representative: n = s * m^2 with s squarefree."""
    if n <= 0:
        raise FieldError("squarefree_part expects a positive integer")
    s, p = 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            s *= p
        p += 1
    return s * n


def _is_squarefree(d: int) -> bool:
    return d >= 2 and squarefree_part(d) == d


@functools.lru_cache(maxsize=None)
def _poly_ring(names: tuple[str, ...]):
    return ring(",".join(names), QQ, grlex)[0]


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


# --------------------------------------------------------------------------
# rational functions


class RatFunc:
    """num/den with coprime polynomials over Q and den monic (grlex)."""

    __slots__ = ("num", "den", "names")

    def __init__(self, num: PolyElement, den: PolyElement, names: tuple[str, ...]):
        # trusted constructor, callers guarantee canonical form
        self.num = num
        self.den = den
        self.names = names

    @staticmethod
    def make(num: PolyElement, den: PolyElement, names: tuple[str, ...]) -> "Scalar":
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return Fraction(0)
        if not den.is_ground:
            num, den = num.cancel(den)
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return RatFunc._wrap(num, den, names)

    @staticmethod
    def _wrap(num, den, names):
        if den.is_ground and num.is_ground:
            return _to_fraction(num.LC) / _to_fraction(den.LC)
        return RatFunc(num, den, names)

    @property
    def ring(self):
        return self.num.ring

    def _lift(self, c: Fraction):
        return self.num.ring.ground_new(QQ(c.numerator, c.denominator))

    # arithmetic --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            # (n + c*den)/den stays reduced
            return RatFunc._wrap(self.num + self.den * self._lift(Fraction(other)), self.den, self.names)
        if isinstance(other, RatFunc):
            _same_ring(self, other)
            if self.den == other.den:
                if self.den == 1:
                    s = self.num + other.num
                    return RatFunc._wrap(s, self.den, self.names) if s else Fraction(0)
                return RatFunc.make(self.num + other.num, self.den, self.names)
            if self.den == 1:
                return RatFunc._wrap(self.num * other.den + other.num, other.den, self.names)
            if other.den == 1:
                return RatFunc._wrap(other.num * self.den + self.num, self.den, self.names)
            return RatFunc.make(self.num * other.den + other.num * self.den, self.den * other.den, self.names)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.names)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            if other == 1:
                return self
            return RatFunc(self.num * self._lift(Fraction(other)), self.den, self.names)
        if isinstance(other, RatFunc):
            _same_ring(self, other)
            if self.den == 1 and other.den == 1:
                return RatFunc(self.num * other.num, self.den, self.names)
            return RatFunc.make(self.num * other.num, self.den * other.den, self.names)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        return RatFunc.make(self.den, self.num, self.names)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, RatFunc):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        return _power(self, e)

    # comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.names == other.names and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Quad)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.names, tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    def evaluate(self, values: dict[str, Fraction]) -> Fraction:
        """Exact specialization at rational points."""
        pts = [QQ(Fraction(values[n]).numerator, Fraction(values[n]).denominator) for n in self.names]
        den = self.den(*pts)
        if not den:
            raise ZeroDivisionError("specialization hits a pole")
        return _to_fraction(self.num(*pts)) / _to_fraction(den)


def _same_ring(a: RatFunc, b: RatFunc):
    if a.names != b.names:
        raise FieldMismatch(f"rational functions in {a.names} and {b.names}")


# --------------------------------------------------------------------------
# quadratic extensions


class Quad:
    """a + b*sqrt(d) with b != 0; a, b rationals or rational functions."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = a
        self.b = b
        self.d = d

    @staticmethod
    def make(a, b, d: int) -> "Scalar":
        if b == 0:
            return a
        return Quad(a, b, d)

    def _check(self, other: "Quad"):
        if other.d != self.d:
            raise FieldMismatch(f"Q(sqrt {self.d}) and Q(sqrt {other.d})")

    def __add__(self, other):
        if isinstance(other, Quad):
            self._check(other)
            return Quad.make(self.a + other.a, self.b + other.b, self.d)
        if isinstance(other, (int, Fraction, RatFunc)):
            return Quad(self.a + other, self.b, self.d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RatFunc, Quad)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Quad):
            self._check(other)
            a = self.a * other.a + self.b * other.b * self.d
            b = self.a * other.b + self.b * other.a
            return Quad.make(a, b, self.d)
        if isinstance(other, (int, Fraction, RatFunc)):
            if other == 0:
                return Fraction(0)
            return Quad(self.a * other, self.b * other, self.d)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "Quad":
        return Quad(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "Quad":
        n = self.norm()
        return Quad(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, Quad):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, RatFunc)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Quad(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        return _power(self, e)

    def __eq__(self, other):
        if isinstance(other, Quad):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction, RatFunc)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.a, self.b))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Quad({format_scalar(self)!r}, d={self.d})"


Scalar = Union[Fraction, RatFunc, Quad]


def _power(x, e: int):
    if not isinstance(e, int):
        raise TypeError("integer exponents only")
    if e < 0:
        return _power(inv(x), -e)
    result, base = Fraction(1), x
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


# --------------------------------------------------------------------------
# field descriptors


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: Q, Q(sqrt d), Q(t1..tm) or Q(t1..tm)(sqrt d)."""

    d: int | None = None
    vars: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if self.d is not None and not _is_squarefree(self.d):
            raise FieldError(f"quadratic field needs a squarefree d >= 2, got {self.d}")
        if len(set(self.vars)) != len(self.vars):
            raise FieldError("duplicate variable names")
        for v in self.vars:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v) or v == "r":
                raise FieldError(f"invalid variable name {v!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls()

    @classmethod
    def quadratic(cls, d: int) -> "FieldSpec":
        return cls(d=d)

    @classmethod
    def rational_functions(cls, names: Iterable[str]) -> "FieldSpec":
        names = tuple(names)
        if not names:
            raise FieldError("rational function field needs at least one variable")
        return cls(vars=names)

    @property
    def kind(self) -> str:
        if self.d is None:
            return "rational_functions" if self.vars else "rationals"
        return "quadratic_over_rational_functions" if self.vars else "quadratic"

    def __str__(self):
        if self.kind == "rationals":
            return "Q"
        inner = ",".join(self.vars)
        base = f"Q({inner})" if inner else "Q"
        return f"{base}(sqrt {self.d})" if self.d else base

    def short(self) -> str:
        """The command-line syntax understood by ``parse_field``."""
        names = ",".join(self.vars)
        if self.d is None:
            return f"ratfunc:{names}" if names else "Q"
        return f"quadratic:{self.d}:{names}" if names else f"quadratic:{self.d}"

    # elements ------------------------------------------------------------
    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def embed(self, q) -> Fraction:
        """The inclusion of Q (ints and fractions) into this field."""
        return Fraction(q)

    def var(self, name: str) -> RatFunc:
        if name not in self.vars:
            raise FieldError(f"variable {name!r} not declared in {self}")
        R = _poly_ring(self.vars)
        return RatFunc(R.gens[self.vars.index(name)], R.one, self.vars)

    def sqrt_d(self) -> Quad:
        if self.d is None:
            raise FieldError(f"{self} has no square root symbol")
        return Quad(Fraction(0), Fraction(1), self.d)

    def contains(self, x) -> bool:
        if isinstance(x, (int, Fraction)):
            return True
        if isinstance(x, RatFunc):
            return x.names == self.vars
        if isinstance(x, Quad):
            return x.d == self.d and self.contains(x.a) and self.contains(x.b)
        return False

    def coerce(self, x) -> Scalar:
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, str):
            return parse_scalar(x, self)
        if not self.contains(x):
            raise FieldMismatch(f"{x!r} is not an element of {self}")
        return x

    def parse(self, text: str) -> Scalar:
        return parse_scalar(text, self)

    def join(self, other: "FieldSpec") -> "FieldSpec":
        """Smallest field of the tower containing both, if any."""
        if self.d and other.d and self.d != other.d:
            raise FieldMismatch(f"{self} and {other}")
        if self.vars and other.vars and self.vars != other.vars:
            raise FieldMismatch(f"{self} and {other}")
        return FieldSpec(self.d or other.d, self.vars or other.vars)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.d is not None:
            out["d"] = self.d
        if self.vars:
            out["vars"] = list(self.vars)
        return out

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if isinstance(obj, str):
            return parse_field(obj)
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FieldError("field must be an object with a 'kind'")
        kind = obj["kind"]
        d = obj.get("d")
        names = tuple(obj.get("vars", ()))
        expected = {
            "rationals": (False, False),
            "quadratic": (True, False),
            "rational_functions": (False, True),
            "quadratic_over_rational_functions": (True, True),
        }
        if kind not in expected:
            raise FieldError(f"unknown field kind {kind!r}")
        need_d, need_vars = expected[kind]
        if need_d != (d is not None) or need_vars != bool(names):
            raise FieldError(f"field kind {kind!r} has inconsistent parameters")
        return cls(d, names)


def parse_field(text: str) -> FieldSpec:
    """Short field syntax used on the command line.

    ``Q``, ``quadratic:5``, ``ratfunc:t1,t2`` and ``quadratic:5:t1,t2``.
    """
    text = text.strip()
    if text in ("Q", "rationals"):
        return FieldSpec()
    parts = text.split(":")
    try:
        if parts[0] == "quadratic" and len(parts) in (2, 3):
            names = tuple(p for p in parts[2].split(",") if p) if len(parts) == 3 else ()
            return FieldSpec(int(parts[1]), names)
        if parts[0] in ("ratfunc", "rational_functions") and len(parts) == 2:
            return FieldSpec.rational_functions(p.strip() for p in parts[1].split(",") if p.strip())
    except ValueError as exc:
        raise FieldError(f"bad field description {text!r}: {exc}") from None
    raise FieldError(f"bad field description {text!r}")


# --------------------------------------------------------------------------
# generic operations


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def neg(x):
    return -x


def inv(x) -> Scalar:
    if isinstance(x, (int, Fraction)):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)
    return x.inverse()


def field_arith(op: str, x, y=None) -> Scalar:
    """Dispatch helper mirroring the four primitive field operations."""
    if op == "add":
        return _normal(x + y)
    if op == "mul":
        return _normal(x * y)
    if op == "neg":
        return _normal(-x)
    if op == "inv":
        return inv(x)
    raise ValueError(f"unknown field operation {op!r}")


def _normal(x):
    return Fraction(x) if isinstance(x, int) else x


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def is_integer(x) -> bool:
    return isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)


def scalar_field(x) -> FieldSpec:
    """The smallest field of the tower that contains x."""
    if isinstance(x, (int, Fraction)):
        return FieldSpec()
    if isinstance(x, RatFunc):
        return FieldSpec(vars=x.names)
    return FieldSpec(x.d).join(scalar_field(x.a)).join(scalar_field(x.b))


def quadratic_root(k: int) -> Quad:
    """The larger root alpha of x^2 - k x + 1 as an element of Q(sqrt d).

    With k^2 - 4 = s^2 d (d squarefree), alpha = (k + s sqrt d)/2.
    """
    if k < 3:
        raise FieldError("need k >= 3 for a real quadratic unit")
    disc = k * k - 4
    d = squarefree_part(disc)
    s = math.isqrt(disc // d)
    return Quad(Fraction(k, 2), Fraction(s, 2), d)


def alpha_field(k: int) -> FieldSpec:
    return FieldSpec(squarefree_part(k * k - 4))


def specialize(x, values: dict[str, Fraction]):
    """Evaluate the indeterminates of x at rational values."""
    if isinstance(x, RatFunc):
        return x.evaluate(values)
    if isinstance(x, Quad):
        return Quad.make(specialize(x.a, values), specialize(x.b, values), x.d)
    return x


# --------------------------------------------------------------------------
# printing


def _poly_str(p: PolyElement) -> str:
    return str(p).replace("**", "^").replace(" ", "")


def format_scalar(x) -> str:
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, RatFunc):
        num = _poly_str(x.num)
        if x.den == 1:
            return num
        return f"({num})/({_poly_str(x.den)})"
    if isinstance(x, Quad):
        b = x.b
        if b == 1:
            bpart = "r"
        elif b == -1:
            bpart = "-r"
        else:
            bs = format_scalar(b)
            bpart = f"{bs}*r" if isinstance(b, Fraction) else f"({bs})*r"
        if x.a == 0:
            return bpart
        a = format_scalar(x.a)
        if not isinstance(x.a, Fraction):
            a = f"({a})"
        if bpart.startswith("-"):
            return f"{a} - {bpart[1:]}"
        return f"{a} + {bpart}"
    raise TypeError(f"not a scalar: {x!r}")


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ScalarSyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, spec: FieldSpec):
        self.text = text
        self.spec = spec
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ScalarSyntaxError(f"expected {kind!r} but found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ScalarSyntaxError("empty scalar expression", self.text, 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ScalarSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs == 0:
                    raise ScalarZeroDivision("division by zero", self.text, pos)
                value = value / rhs
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            return _power(base, int(tok[1]))
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return Fraction(int(val))
        if kind == "name":
            self.take()
            if val == "r":
                if self.spec.d is None:
                    raise UndeclaredVariable("'r' used outside a quadratic field", self.text, pos)
                return self.spec.sqrt_d()
            if val in self.spec.vars:
                return self.spec.var(val)
            raise UndeclaredVariable(f"undeclared variable {val!r}", self.text, pos)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if kind == "end" else repr(val)
        raise ScalarSyntaxError(f"unexpected {what}", self.text, pos)


def parse_scalar(text: str, spec: FieldSpec) -> Scalar:
    """Parse a scalar expression into its canonical field element."""
    return _Parser(text, spec).parse()
