"""Exact arithmetic over Q and quadratic fields Q(sqrt(d)).

Rationals are plain :class:`fractions.Fraction` values.  Elements of a
quadratic field with a nonzero irrational part are :class:`QuadraticSurd`
instances ``(p + q*sqrt(d))/r`` kept in a canonical form, so that equality
is field-for-field equality.  Any operation whose result has ``q == 0``
comes back as a ``Fraction``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

import mpmath

from .errors import DomainError, IncompatibleFieldError, ParseError

Rational = Fraction

__all__ = [
    "Rational",
    "QuadraticSurd",
    "normalize",
    "floor",
    "to_float",
    "parse_number",
    "format_number",
    "squarefree_part",
    "sqrt",
]


def squarefree_part(n: int) -> tuple[int, int]:
    """Split ``n`` as ``s**2 * core`` with ``core`` squarefree (sign kept on core)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    m = abs(n)
    s = 1
    core = 1
    f = 2
    while f * f <= m:
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        if e:
            s *= f ** (e // 2)
            if e % 2:
                core *= f
        f += 1 if f == 2 else 2
    core *= m
    return s, sign * core


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def normalize(p: int, q: int, r: int, d: int):
    """Canonical form of ``(p + q*sqrt(d))/r``.

    Returns a :class:`Fraction` when ``q == 0``.  A square factor of ``d`` is
    moved into ``q``; a perfect-square ``d`` with ``q != 0`` is refused because
    the caller is expected to fold that case into a rational.
    """
    for v in (p, q, r, d):
        if not isinstance(v, int):
            raise TypeError(f"integer fields required, got {type(v).__name__}")
    if r == 0:
        raise ZeroDivisionError("denominator r is zero")
    if q == 0:
        return Fraction(p, r)
    s, core = squarefree_part(d)
    if core == 0 or core == 1:
        raise DomainError(f"d = {d} is a perfect square; fold the value into a Rational")
    q *= s
    if r < 0:
        p, q, r = -p, -q, -r
    g = math.gcd(math.gcd(p, q), r)
    if g != 1:
        p, q, r = p // g, q // g, r // g
    return QuadraticSurd._make(p, q, r, core)


def sqrt(d: int):
    """Exact square root of an integer as a surd, or a Fraction for perfect squares."""
    if _is_square(d):
        return Fraction(math.isqrt(d))
    return normalize(0, 1, 1, d)


class QuadraticSurd:
    """The number ``(p + q*sqrt(d))/r`` with ``q != 0`` and ``d`` squarefree."""

    __slots__ = ("p", "q", "r", "d")

    def __init__(self, p: int, q: int, r: int = 1, d: int = 2):
        v = normalize(p, q, r, d)
        if not isinstance(v, QuadraticSurd):
            raise DomainError("q = 0 gives a rational; use normalize() instead")
        self.p, self.q, self.r, self.d = v.p, v.q, v.r, v.d

    @classmethod
    def _make(cls, p, q, r, d):
        obj = object.__new__(cls)
        obj.p, obj.q, obj.r, obj.d = p, q, r, d
        return obj

    # -- structure -------------------------------------------------------
    @property
    def is_real(self) -> bool:
        return self.d > 0

    def fields(self) -> tuple[int, int, int, int]:
        return (self.p, self.q, self.r, self.d)

    def conjugate(self):
        return QuadraticSurd._make(self.p, -self.q, self.r, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.p * self.p - self.q * self.q * self.d, self.r * self.r)

    def trace(self) -> Fraction:
        return Fraction(2 * self.p, self.r)

    @property
    def real(self):
        """Real part; only meaningful as a rational when ``d < 0``."""
        if self.d > 0:
            return self
        return Fraction(self.p, self.r)

    @property
    def imag(self):
        """Imaginary part ``q*sqrt(|d|)/r`` as a real surd (``d < 0`` only)."""
        if self.d > 0:
            return Fraction(0)
        if self.d == -1:
            return Fraction(self.q, self.r)
        return normalize(0, self.q, self.r, -self.d)

    def _coerce(self, other):
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise IncompatibleFieldError(
                    f"operands in Q(sqrt({self.d})) and Q(sqrt({other.d}))"
                )
            return other.p, other.q, other.r
        if isinstance(other, int):
            return other, 0, 1
        if isinstance(other, _RationalABC):
            return other.numerator, 0, other.denominator
        return None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p2, q2, r2 = o
        return normalize(self.p * r2 + p2 * self.r, self.q * r2 + q2 * self.r, self.r * r2, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd._make(-self.p, -self.q, self.r, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p2, q2, r2 = o
        return normalize(self.p * r2 - p2 * self.r, self.q * r2 - q2 * self.r, self.r * r2, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p2, q2, r2 = o
        p, q, r, d = self.p, self.q, self.r, self.d
        return normalize(p * p2 + q * q2 * d, p * q2 + q * p2, r * r2, d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.p * self.p - self.q * self.q * self.d
        return normalize(self.r * self.p, -self.r * self.q, n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise IncompatibleFieldError(
                    f"operands in Q(sqrt({self.d})) and Q(sqrt({other.d}))"
                )
            return self * other.inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[0] == 0:
            raise ZeroDivisionError("division by zero")
        return self * Fraction(o[2], o[0])

    def __rtruediv__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = base * result
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return self.fields() == other.fields()
        if isinstance(other, (int, _RationalABC)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((QuadraticSurd, self.p, self.q, self.r, self.d))

    def sign(self) -> int:
        """Exact sign of a real surd, by squaring (no floating point)."""
        if self.d < 0:
            raise DomainError("imaginary quadratic numbers are not ordered")
        p, q = self.p, self.q
        if p >= 0 and q > 0:
            return 1
        if p <= 0 and q < 0:
            return -1
        if p * p > q * q * self.d:
            return 1 if p > 0 else -1
        return 1 if q > 0 else -1

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, QuadraticSurd):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __lt__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) >= 0

    def __floor__(self):
        return floor(self)

    def __float__(self):
        if self.d < 0:
            raise TypeError("imaginary surd has no real float value")
        return float(to_float(self, 64))

    def __complex__(self):
        return complex(to_float(self, 64))

    # -- text ------------------------------------------------------------
    def __str__(self):
        op = "+" if self.q > 0 else "-"
        return f"({self.p} {op} {abs(self.q)}*sqrt({self.d}))/{self.r}"

    def __repr__(self):
        return f"QuadraticSurd({self.p}, {self.q}, {self.r}, {self.d})"


def floor(x) -> int:
    """Exact floor of a real rational or real quadratic number."""
    if isinstance(x, int):
        return x
    if isinstance(x, _RationalABC):
        return x.numerator // x.denominator
    if not isinstance(x, QuadraticSurd):
        raise TypeError(f"cannot take exact floor of {type(x).__name__}")
    if x.d < 0:
        raise DomainError("floor is undefined for imaginary quadratic numbers")
    # q*sqrt(d) is irrational, so isqrt gives its floor (or ceiling for q < 0)
    t = math.isqrt(x.q * x.q * x.d)
    if x.q < 0:
        t = -t - 1
    return (x.p + t) // x.r


def to_float(x, precision_bits: int = 113):
    """High-precision approximation of an exact number.

    Real inputs give an ``mpmath.mpf``; imaginary surds give an ``mpmath.mpc``
    with ``sqrt(d) = i*sqrt(|d|)``.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    if isinstance(x, (int, _RationalABC)):
        with mpmath.workprec(precision_bits):
            return mpmath.mpf(x.numerator) / x.denominator
    if not isinstance(x, QuadraticSurd):
        raise TypeError(f"unsupported type {type(x).__name__}")
    p, q, r, d = x.fields()
    with mpmath.workprec(precision_bits + 24):
        if d < 0:
            re_ = mpmath.mpf(p) / r
            im_ = q * mpmath.sqrt(-d) / r
        elif (p > 0) != (q > 0) and p != 0:
            # opposite signs cancel; use (p^2 - q^2 d) / (p - q sqrt d) instead
            re_ = mpmath.mpf(p * p - q * q * d) / (r * (p - q * mpmath.sqrt(d)))
            im_ = None
        else:
            re_ = (p + q * mpmath.sqrt(d)) / r
            im_ = None
    with mpmath.workprec(precision_bits):
        if im_ is None:
            return +re_
        return mpmath.mpc(+re_, +im_)


# -- text parsing --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        start = m.start(1) if m.group(1) else (m.start(2) if m.group(2) else m.start(3))
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("sqrt", None, start))
        else:
            ch = m.group(3)
            if ch not in "+-*/()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, None, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _NumberParser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        if self.peek()[0] in "+-":
            sign = self.take()[0]
            value = self.term()
            if sign == "-":
                value = -value
        else:
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
                    raise ParseError("division by zero", pos)
                value = value / rhs
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        return self.primary()

    def primary(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return Fraction(val)
        if kind == "sqrt":
            self.take()
            self.take("(")
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            n = self.take("int")[1]
            self.take(")")
            return sqrt(-n if neg else n)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if kind == "end" else repr(kind)
        raise ParseError(f"unexpected {what}", pos)


def parse_number(text: str):
    """Parse ``"(p + q*sqrt(d))/r"`` and friends into a surd or Fraction.

    Accepts any +,-,*,/ combination of integers and ``sqrt(n)`` terms, as long
    as all square roots lie in one field.
    """
    parser = _NumberParser(text)
    value = parser.expr()
    parser.take("end")
    return value


def format_number(x) -> str:
    if isinstance(x, QuadraticSurd):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, _RationalABC):
        return str(Fraction(x))
    return str(x)
