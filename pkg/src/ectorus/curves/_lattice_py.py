"""Pure-Python lattice row sums (mpmath); fallback for ``_lattice_ext``.

For a row offset ``w`` the kernel returns

    S_s(w) = sum over all integers m of (w - m)**(-s),   s in (2, 3, 4, 6)

as a direct sum over ``|m| <= N`` after centring ``w`` on its nearest
integer, plus the two tails ``m > N`` and ``m < -N`` from the asymptotic
expansion of the Hurwitz zeta function.  Callers use the working precision
of the current mpmath context.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath

POWERS = (2, 3, 4, 6)
EM_TERMS = 12


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2 (Akiyama-Tanigawa)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    b = a[0]
    return -b if n == 1 else b


@lru_cache(maxsize=None)
def em_coefficients(s: int, terms: int = EM_TERMS) -> tuple:
    """c_j = B_2j/(2j)! * s(s+1)...(s+2j-2), j = 1..terms."""
    out = []
    for j in range(1, terms + 1):
        rising = 1
        for i in range(2 * j - 1):
            rising *= s + i
        out.append(bernoulli(2 * j) / factorial(2 * j) * rising)
    return tuple(out)


def em_remainder(s: int, N: int, terms: int = EM_TERMS) -> float:
    """Size of the first omitted asymptotic term at the nearest tail start."""
    c = em_coefficients(s, terms + 1)[-1]
    return float(abs(c)) / (N + 0.5) ** (s + 2 * terms + 1)


def hurwitz_tail(s: int, a, terms: int = EM_TERMS):
    """zeta(s, a) = sum_{k>=0} (a+k)**(-s) for large |a|, Re(a) > 0."""
    coeffs = em_coefficients(s, terms)
    r = 1 / a
    r2 = r * r
    acc = 0
    for c in reversed(coeffs):
        acc = acc * r2 + mpmath.mpf(c.numerator) / c.denominator
    acc *= r
    return r**s * (a / (s - 1) + mpmath.mpf(0.5) + acc)


def row_sums(w, N: int, exclude_zero: bool = False, terms: int = EM_TERMS):
    """Return ``(S_2, S_3, S_4, S_6)`` at offset ``w`` (an mpc).

    With ``exclude_zero`` the singular ``m == 0`` term is dropped; that is
    only meaningful when ``w`` is an integer.
    """
    w = mpmath.mpc(w)
    w0 = w - mpmath.nint(w.real)
    s2 = s3 = s4 = s6 = mpmath.mpc(0)
    for m in range(-N, N + 1):
        if exclude_zero and m == 0:
            continue
        t = 1 / (w0 - m)
        t2 = t * t
        t4 = t2 * t2
        s2 += t2
        s3 += t2 * t
        s4 += t4
        s6 += t4 * t2
    lo = N + 1 - w0
    hi = N + 1 + w0
    s2 += hurwitz_tail(2, lo, terms) + hurwitz_tail(2, hi, terms)
    s3 += hurwitz_tail(3, hi, terms) - hurwitz_tail(3, lo, terms)
    s4 += hurwitz_tail(4, lo, terms) + hurwitz_tail(4, hi, terms)
    s6 += hurwitz_tail(6, lo, terms) + hurwitz_tail(6, hi, terms)
    return s2, s3, s4, s6


def many_row_sums(ws, N: int, exclude_zero_at=None, terms: int = EM_TERMS):
    """Row sums for a batch of offsets; mirrors the compiled kernel's API."""
    out = []
    for i, w in enumerate(ws):
        out.append(row_sums(w, N, i == exclude_zero_at, terms))
    return out
