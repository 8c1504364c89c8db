"""Weierstrass, Legendre and Jacobi models and the maps between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC

import mpmath

from ..errors import DegenerateError, InvalidSklyaninParameters, SingularCurveError

__all__ = [
    "WeierstrassCurve",
    "LegendreCurve",
    "JacobiIntersection",
    "legendre_to_weierstrass",
    "j_invariant",
    "sklyanin_to_jacobi",
]

SINGULAR_RTOL = 1e-25
# floor for derived quantities; callers' ambient mpmath precision may be lower
WORK_PREC = 128


def _prec(p=None) -> int:
    return max(mpmath.mp.prec, p or WORK_PREC)


def _is_exact(*xs) -> bool:
    return all(isinstance(x, (int, _RationalABC)) for x in xs)


def _num(x):
    """Exact values stay exact; everything else becomes an mpc."""
    if _is_exact(x):
        return Fraction(x)
    return _mp(x)


def _mp(x):
    # mpc(x) would round an existing mpc to the ambient precision
    if isinstance(x, mpmath.mpc):
        return x
    with mpmath.workprec(_prec()):
        if _is_exact(x):
            x = Fraction(x)
            return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
        return mpmath.mpc(x)


def _vanishes(value, scale) -> bool:
    if _is_exact(value):
        return value == 0
    return abs(value) <= SINGULAR_RTOL * max(abs(scale), mpmath.mpf(10) ** -300)


@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 = 4x^3 - g2 x - g3``; ``error`` bounds the numeric truncation."""

    g2: object
    g3: object
    error: float = 0.0
    precision: int = field(default=WORK_PREC, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "g2", _num(self.g2))
        object.__setattr__(self, "g3", _num(self.g3))
        with mpmath.workprec(_prec(self.precision)):
            scale = abs(self.g2) ** 3 + 27 * abs(self.g3) ** 2
            if _vanishes(self.discriminant, scale):
                raise SingularCurveError(f"g2^3 - 27 g3^2 = 0 for g2={self.g2}, g3={self.g3}")

    @property
    def discriminant(self):
        with mpmath.workprec(_prec(self.precision)):
            return self.g2**3 - 27 * self.g3**2

    def rhs(self, x):
        with mpmath.workprec(_prec(self.precision)):
            return 4 * x**3 - self.g2 * x - self.g3


@dataclass(frozen=True)
class LegendreCurve:
    """``y^2 = x(x - 1)(x - lambda)``."""

    lam: object

    def __post_init__(self):
        lam = _num(self.lam)
        if _is_exact(lam):
            bad = lam in (0, 1)
        else:
            bad = abs(lam) < 1e-30 or abs(lam - 1) < 1e-30
        if bad:
            raise DegenerateError(f"lambda = {lam} gives a singular Legendre cubic")
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class JacobiIntersection:
    """Intersection of ``u^2 + v^2 + w^2 + z^2 = 0`` and ``A v^2 + B w^2 + z^2 = 0``.

    Coefficients that make the two quadrics share a component are kept but
    flagged through ``degenerate``.
    """

    A: object
    B: object

    @property
    def degenerate(self) -> bool:
        A, B = self.A, self.B
        tol = 1e-12
        return abs(A - B) < tol or abs(A - 1) < tol or abs(B - 1) < tol

    def residuals(self, u, v, w, z):
        return (
            u * u + v * v + w * w + z * z,
            self.A * v * v + self.B * w * w + z * z,
        )


def legendre_to_weierstrass(lc, precision: int = 100) -> WeierstrassCurve:
    """Weierstrass invariants of a Legendre cubic, real cube root of 4."""
    if not isinstance(lc, LegendreCurve):
        lc = LegendreCurve(lc)
    with mpmath.workprec(precision + 16):
        lam = lc.lam
        g2 = _mp(lam * lam - lam + 1) * mpmath.cbrt(4) / 3
        g3 = _mp((lam + 1) * (2 * lam * lam - 5 * lam + 2)) / 27
        return WeierstrassCurve(g2, g3, precision=precision + 16)


def j_invariant(wc) -> object:
    """``1728 g2^3 / (g2^3 - 27 g3^2)``; accepts a curve or a ``(g2, g3)`` pair."""
    if isinstance(wc, tuple):
        wc = WeierstrassCurve(wc[0], wc[1])
    with mpmath.workprec(_prec(wc.precision)):
        return 1728 * wc.g2**3 / wc.discriminant


def sklyanin_to_jacobi(alpha, beta, gamma, tol: float = 1e-12) -> JacobiIntersection:
    """Jacobi coefficients ``A = (1 - alpha)/(1 + beta)``, ``B = (1 + alpha)/(1 - gamma)``."""
    with mpmath.workprec(_prec()):
        return _sklyanin_to_jacobi(alpha, beta, gamma, tol)


def _sklyanin_to_jacobi(alpha, beta, gamma, tol):
    a, b, c = (_num(t) for t in (alpha, beta, gamma))
    constraint = a + b + c + a * b * c
    if (constraint != 0) if _is_exact(constraint) else abs(constraint) > tol:
        raise InvalidSklyaninParameters(
            f"alpha + beta + gamma + alpha*beta*gamma = {constraint}, expected 0"
        )
    d1, d2 = 1 + b, 1 - c
    for name, d in (("1 + beta", d1), ("1 - gamma", d2)):
        if (d == 0) if _is_exact(d) else abs(d) < tol:
            raise DegenerateError(f"{name} vanishes")
    return JacobiIntersection((1 - a) / d1, (1 + a) / d2)
