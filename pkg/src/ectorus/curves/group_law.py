"""Chord-tangent addition on ``y^2 = x^3 + a x^2 + b x + c``.

Coefficients and coordinates are exact (Fraction, or anything closed under
field operations with exact equality).  Complex floating-point points are
accepted too, with a tolerance on the on-curve test; that path exists for
comparing against the analytic parametrisation.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Optional, Union

import mpmath

from ..errors import ContractError, ParameterError, ParseError
from .forms import WORK_PREC

__all__ = [
    "INFINITY",
    "AffinePoint",
    "Cubic",
    "point_add",
    "point_neg",
    "point_mul",
    "point_order",
    "parse_point",
]


class _Infinity:
    """The point at infinity, identity of the group."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__


INFINITY = _Infinity()


def _floor_prec(fn):
    """Run numeric (mpmath) inputs at no less than WORK_PREC bits."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with mpmath.workprec(max(mpmath.mp.prec, WORK_PREC)):
            return fn(*args, **kwargs)

    return wrapper


def _exact(v) -> bool:
    return isinstance(v, (int, _RationalABC))


def _coerce(v):
    return Fraction(v) if _exact(v) else v


@dataclass(frozen=True)
class AffinePoint:
    x: object
    y: object

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce(self.x))
        object.__setattr__(self, "y", _coerce(self.y))

    def __str__(self):
        return f"({self.x}, {self.y})"


Point = Union[AffinePoint, _Infinity]


@dataclass(frozen=True)
class Cubic:
    """Monic cubic ``y^2 = x^3 + a x^2 + b x + c``."""

    a: object = 0
    b: object = 0
    c: object = 0
    tol: float = 1e-20

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _coerce(getattr(self, name)))

    @classmethod
    @_floor_prec
    def from_weierstrass(cls, g2, g3, tol: float = 1e-20) -> "Cubic":
        """``Y^2 = 4X^3 - g2 X - g3`` rescaled by ``y = Y/2``."""
        return cls(0, -g2 / 4, -g3 / 4, tol)

    def f(self, x):
        return ((x + self.a) * x + self.b) * x + self.c

    @_floor_prec
    def contains(self, P: Point) -> bool:
        if P is INFINITY:
            return True
        r = P.y * P.y - self.f(P.x)
        if _exact(r):
            return r == 0
        scale = max(1.0, abs(P.y) ** 2)
        return abs(r) <= self.tol * scale

    def _same(self, u, v) -> bool:
        d = u - v
        if _exact(d):
            return d == 0
        return abs(d) <= self.tol * max(1.0, abs(u))

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})x^2 + ({self.b})x + ({self.c})"


def _require(curve: Cubic, *points):
    for P in points:
        if P is not INFINITY and not isinstance(P, AffinePoint):
            raise ContractError(f"not a point: {P!r}")
        if not curve.contains(P):
            raise ContractError(f"{P} is not on {curve}")


def point_neg(P: Point, curve: Cubic) -> Point:
    if P is INFINITY:
        return P
    return AffinePoint(P.x, -P.y)


def _add(P: Point, Q: Point, curve: Cubic) -> Point:
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    if curve._same(P.x, Q.x):
        if not curve._same(P.y, Q.y) or curve._same(P.y, 0 * P.y):
            return INFINITY  # vertical chord or tangent
        lam = (3 * P.x * P.x + 2 * curve.a * P.x + curve.b) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - curve.a - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return AffinePoint(x3, y3)


@_floor_prec
def point_add(P: Point, Q: Point, curve: Cubic) -> Point:
    """Third intersection of the chord (tangent if P = Q), reflected."""
    _require(curve, P, Q)
    return _add(P, Q, curve)


@_floor_prec
def point_mul(n: int, P: Point, curve: Cubic) -> Point:
    _require(curve, P)
    if n < 0:
        n, P = -n, point_neg(P, curve)
    acc: Point = INFINITY
    while n:
        if n & 1:
            acc = _add(acc, P, curve)
        P = _add(P, P, curve)
        n >>= 1
    return acc


@_floor_prec
def point_order(P: Point, curve: Cubic, bound: int = 12) -> Optional[int]:
    """Least n <= bound with n P = INFINITY, or None when none is found."""
    if bound < 1:
        raise ParameterError("bound must be >= 1")
    _require(curve, P)
    acc = P
    for n in range(1, bound + 1):
        if acc is INFINITY:
            return n
        acc = _add(acc, P, curve)
    return None


def parse_point(text: str) -> Point:
    """``"x,y"`` with rational coordinates such as ``"1/4,-3/8"``, or ``"inf"``."""
    text = text.strip()
    if text.lower() in ("inf", "infinity", "o"):
        return INFINITY
    body = text.strip("()")
    parts = body.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected 'x,y', got {text!r}", len(text))
    coords = []
    offset = text.index(body) if body else 0
    for part in parts:
        try:
            coords.append(Fraction(part.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {part.strip()!r}", offset) from None
        offset += len(part) + 1
    return AffinePoint(*coords)
