"""Complex moduli in the upper half-plane and their SL2(Z) reduction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Optional

import mpmath

from ..cfrac import IDENTITY, Matrix2, UnimodularMatrix, Verdict
from ..errors import DomainError
from ..exactnum import QuadraticSurd, floor, to_float

__all__ = [
    "Modulus",
    "Verdict",
    "as_modulus",
    "reduce_modulus",
    "isomorphic",
    "cm_discriminant",
    "T",
    "S",
]

T = UnimodularMatrix(1, 1, 0, 1)
S = UnimodularMatrix(0, -1, 1, 0)


def _translate(n: int) -> UnimodularMatrix:
    return UnimodularMatrix(1, n, 0, 1)


def _witness(m: Matrix2) -> Matrix2:
    # +-W act identically; prefer c > 0, or c = 0 and d > 0
    if m.c < 0 or (m.c == 0 and m.d < 0):
        return -m
    return m


@dataclass(frozen=True)
class Modulus:
    """A point tau of the upper half-plane, exact (imaginary surd) or numeric."""

    tau: object

    def __post_init__(self):
        t = self.tau
        if isinstance(t, QuadraticSurd):
            if t.d > 0 or t.q < 0:
                raise DomainError(f"tau = {t} is not in the upper half-plane")
            return
        if isinstance(t, (int, _RationalABC)):
            raise DomainError("a rational tau gives a degenerate lattice")
        z = t if isinstance(t, mpmath.mpc) else mpmath.mpc(t)
        if not z.imag > 0:
            raise DomainError(f"Im(tau) = {z.imag} must be positive")
        object.__setattr__(self, "tau", z)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.tau, QuadraticSurd)

    def to_mpc(self, precision: int = 100):
        if self.is_exact:
            prec = max(precision, 64)
            with mpmath.workprec(prec):
                return mpmath.mpc(to_float(self.tau, prec))
        return self.tau

    def __str__(self):
        return str(self.tau)


def as_modulus(tau) -> Modulus:
    if isinstance(tau, Modulus):
        return tau
    if isinstance(tau, (tuple, list)) and len(tau) == 2:
        tau = mpmath.mpc(*tau)
    return Modulus(tau)


def _reduce_exact(t: QuadraticSurd):
    g = IDENTITY
    while True:
        n = floor(Fraction(t.p, t.r) + Fraction(1, 2))
        if n:
            t = t - n
            g = _translate(-n) @ g
        if t.norm() < 1:
            t = -1 / t
            g = S @ g
            continue
        break
    # boundary convention: Re in [-1/2, 1/2), Re <= 0 on the unit circle
    if t.norm() == 1 and t.p > 0:
        t = -1 / t
        g = S @ g
    return t, g


def _reduce_numeric(t, precision: int):
    with mpmath.workprec(precision + 16):
        t = mpmath.mpc(t)
        tol = mpmath.mpf(2) ** (-(precision - 8))
        g = IDENTITY
        for _ in range(10_000):
            n = int(mpmath.floor(t.real + mpmath.mpf(0.5)))
            if n:
                t = t - n
                g = _translate(-n) @ g
            if abs(t) ** 2 < 1 - tol:
                t = -1 / t
                g = S @ g
                continue
            break
        else:
            raise DomainError("reduction did not terminate")
        if abs(abs(t) ** 2 - 1) <= tol and t.real > tol:
            t = -1 / t
            g = S @ g
        if abs(t.real - mpmath.mpf(0.5)) <= tol:
            t = t - 1
            g = _translate(-1) @ g
    return t, g


def reduce_modulus(tau, precision: int = 100) -> tuple[Modulus, UnimodularMatrix]:
    """Move tau into the standard fundamental domain.

    Returns ``(tau', g)`` with ``tau' = g.act(tau)``, ``|Re tau'| <= 1/2`` and
    ``|tau'| >= 1``.  Exact input is reduced exactly.
    """
    mod = as_modulus(tau)
    if mod.is_exact:
        t, g = _reduce_exact(mod.tau)
    else:
        t, g = _reduce_numeric(mod.tau, precision)
    return Modulus(t), g


def isomorphic(tau1, tau2, precision: int = 100) -> Verdict:
    """Whether E_tau1 and E_tau2 are isomorphic; witness W has tau2 = W.act(tau1)."""
    m1, m2 = as_modulus(tau1), as_modulus(tau2)
    r1, g1 = reduce_modulus(m1, precision)
    r2, g2 = reduce_modulus(m2, precision)
    if m1.is_exact and m2.is_exact:
        if r1.tau == r2.tau:
            return Verdict(True, _witness(g2.inverse() @ g1))
        return Verdict(False)

    a, b = r1.to_mpc(precision), r2.to_mpc(precision)
    tol = mpmath.mpf(10) ** -9
    scale = max(1, abs(b))
    if abs(a - b) <= tol * scale:
        return Verdict(True, _witness(g2.inverse() @ g1))
    # edges of the fundamental domain are identified pairwise
    for B in (T, _translate(-1), S):
        if abs(B.act(a) - b) <= tol * scale:
            return Verdict(True, _witness(g2.inverse() @ B @ g1))
    from .analytic import eisenstein_g2_g3
    from .forms import j_invariant

    j1 = j_invariant(eisenstein_g2_g3(r1, precision=precision))
    j2 = j_invariant(eisenstein_g2_g3(r2, precision=precision))
    if abs(j1 - j2) <= 1e-8 * max(1, abs(j1)):
        return Verdict(True, None)
    return Verdict(False)


def cm_discriminant(tau) -> Optional[int]:
    """Squarefree D with tau in Q(sqrt(-D)); None for inexact tau.

    Floating-point moduli are refused rather than guessed at.
    """
    if isinstance(tau, Modulus):
        tau = tau.tau
    if isinstance(tau, (int, _RationalABC)):
        raise DomainError("rational tau gives a degenerate lattice")
    if isinstance(tau, QuadraticSurd):
        if tau.d > 0:
            raise DomainError("tau must lie in the upper half-plane, got a real surd")
        return -tau.d
    return None
