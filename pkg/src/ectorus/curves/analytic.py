"""Eisenstein invariants and the Weierstrass p-function by lattice summation.

Sums run in Eisenstein order: over rows ``n`` (multiples of tau) on the
outside and over ``m`` inside.  Each row sum S_s(w) = sum_m (w - m)^-s is a
direct block ``|m| <= shells`` plus Hurwitz-zeta tails, so only the row
truncation ``|n| <= shells`` contributes a real truncation error, and that
decays like exp(-2 pi Im(tau) shells).  By default tau is first moved into
the fundamental domain, which keeps Im(tau) >= sqrt(3)/2.

The conditionally convergent g2-type sums are handled by the Eisenstein
order: the row ``n = 0`` of the p-function is the classical
``pi^2/sin^2(pi z) - pi^2/3``, and every other row is absolutely summable.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import mpmath

from ..errors import ParameterError, PoleError
from . import lattice
from .forms import WeierstrassCurve
from .modulus import Modulus, as_modulus, reduce_modulus

__all__ = [
    "MIN_SHELLS",
    "WpValue",
    "eisenstein_g2_g3",
    "wp",
    "wp_prime",
    "wp_eval",
    "torus_add",
    "lattice_coordinates",
]

MIN_SHELLS = 10
POLE_RADIUS = 1e-6


class WpValue(NamedTuple):
    value: object
    derivative: object
    error: float


def _check_shells(shells: int):
    if not isinstance(shells, int) or shells < MIN_SHELLS:
        raise ParameterError(f"shells must be an integer >= {MIN_SHELLS}, got {shells!r}")


def _rounding(precision: int) -> float:
    # a few ulps of the working precision, lost in summation
    return 2.0 ** (8 - min(precision, lattice.COMPILED_MAX_PRECISION))


def _frame(tau, precision: int, reduce: bool):
    """Numeric tau' and the scale lambda with L_tau = lambda * L_tau'."""
    mod = as_modulus(tau)
    if reduce:
        red, g = reduce_modulus(mod, precision)
        t = red.to_mpc(precision + 20)
        with mpmath.workprec(precision + 20):
            lam = g.c * mod.to_mpc(precision + 20) + g.d
        return t, lam
    return mod.to_mpc(precision + 20), mpmath.mpc(1)


@lru_cache(maxsize=64)
def _tau_rows(t, N: int, precision: int, backend: str):
    """Row sums S_s(n tau) for n = 1..N (even s only are used)."""
    with mpmath.workprec(precision + 20):
        offsets = [n * t for n in range(1, N + 1)]
    return lattice.row_sums(offsets, N, precision)


def _eisenstein_reduced(t, N: int, precision: int):
    rows = _tau_rows(t, N, precision, lattice.get_backend())
    with mpmath.workprec(precision + 20):
        G4 = mpmath.pi**4 / 45
        G6 = 2 * mpmath.pi**6 / 945
        for _, _, s4, s6 in rows:
            G4 += 2 * s4
            G6 += 2 * s6
        _, _, s4, s6 = rows[-1]
        err4 = 2 * abs(s4) + lattice.em_remainder(4, N, precision)
        err6 = 2 * abs(s6) + lattice.em_remainder(6, N, precision)
    return G4, G6, float(err4), float(err6)


def eisenstein_g2_g3(tau, shells: int = 60, precision: int = 100, reduce: bool = True) -> WeierstrassCurve:
    """``g2 = 60 G4``, ``g3 = 140 G6`` of the lattice Z + Z tau.

    The attached ``error`` estimates the contribution of the last row
    pair plus the tail-expansion remainder, whichever invariant is worse.
    """
    _check_shells(shells)
    t, lam = _frame(tau, precision, reduce)
    G4, G6, e4, e6 = _eisenstein_reduced(t, shells, precision)
    with mpmath.workprec(precision + 20):
        g2 = 60 * G4 / lam**4
        g3 = 140 * G6 / lam**6
        err = max(60 * e4 / float(abs(lam)) ** 4, 140 * e6 / float(abs(lam)) ** 6)
        err += _rounding(precision) * float(abs(g2) + abs(g3))
    return WeierstrassCurve(g2, g3, err, precision + 20)


def lattice_coordinates(z, tau) -> tuple:
    """Real (s, t) with z = s + t tau."""
    z, tau = mpmath.mpc(z), mpmath.mpc(tau)
    t = z.imag / tau.imag
    return z.real - t * tau.real, t


def _check_pole(z, t):
    s, u = lattice_coordinates(z, t)
    m0, n0 = int(mpmath.nint(s)), int(mpmath.nint(u))
    best = None
    for m in (m0 - 1, m0, m0 + 1):
        for n in (n0 - 1, n0, n0 + 1):
            d = abs(z - m - n * t)
            if best is None or d < best[0]:
                best = (d, m, n)
    if best[0] < POLE_RADIUS:
        raise PoleError(f"z = {z} lies within {POLE_RADIUS} of a lattice point", (best[1], best[2]))


def _wp_reduced(z, t, N: int, precision: int):
    with mpmath.workprec(precision + 20):
        n0 = int(mpmath.nint(z.imag / t.imag))
        ns = list(range(n0 - N, n0 + N + 1))
        zrows = lattice.row_sums([z - n * t for n in ns], N, precision)
        trows = _tau_rows(t, N + abs(n0), precision, lattice.get_backend())
        pi2 = mpmath.pi**2
        value = mpmath.mpc(0)
        deriv = mpmath.mpc(0)
        contrib = []
        for n, (s2, s3, _, _) in zip(ns, zrows):
            # S_2 is even, so S_2(-n tau) = S_2(n tau)
            c = s2 - (pi2 / 3 if n == 0 else trows[abs(n) - 1][0])
            value += c
            deriv += -2 * s3
            contrib.append((c, -2 * s3))
        edge = [contrib[0], contrib[-1]]
        err_v = sum(abs(c) for c, _ in edge) + lattice.em_remainder(2, N, precision)
        err_d = sum(abs(d) for _, d in edge) + lattice.em_remainder(3, N, precision)
    return value, deriv, float(err_v), float(err_d)


def wp_eval(z, tau, shells: int = 60, precision: int = 100, reduce: bool = True) -> WpValue:
    """p(z) and p'(z) for the lattice Z + Z tau with an error estimate.

    The error is the size of the two outermost rows plus the
    tail-expansion remainder, for the value and derivative combined.
    """
    _check_shells(shells)
    mod = as_modulus(tau)
    with mpmath.workprec(precision + 20):
        z = mpmath.mpc(z)
        _check_pole(z, mod.to_mpc(precision + 20))
        t, lam = _frame(mod, precision, reduce)
        v, d, ev, ed = _wp_reduced(z / lam, t, shells, precision)
        a = float(abs(lam))
        v, d = v / lam**2, d / lam**3
        err = max(ev / a**2, ed / a**3) + _rounding(precision) * float(abs(v) + abs(d))
        return WpValue(v, d, err)


def wp(z, tau, shells: int = 60, precision: int = 100, reduce: bool = True):
    return wp_eval(z, tau, shells, precision, reduce).value


def wp_prime(z, tau, shells: int = 60, precision: int = 100, reduce: bool = True):
    """Termwise derivative -2 sum over the lattice of (z - w)^-3."""
    return wp_eval(z, tau, shells, precision, reduce).derivative


def torus_add(z1, z2, tau, precision: int = 100):
    """z1 + z2 brought into the parallelogram [0, 1) + [0, 1) tau."""
    mod = as_modulus(tau)
    with mpmath.workprec(precision + 20):
        t = mod.to_mpc(precision + 20)
        s, u = lattice_coordinates(mpmath.mpc(z1) + mpmath.mpc(z2), t)
        s -= mpmath.floor(s)
        u -= mpmath.floor(u)
        return s + u * t
