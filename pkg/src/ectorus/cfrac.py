"""Continued fractions of quadratic irrationals and SL2(Z)/GL2(Z) equivalence.

Expansions run on exact ``(P, Q)`` states representing ``(P + sqrt(D))/Q``;
a period is detected when a state repeats, which is exact and gives the
minimal preperiod and period at once.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

from .errors import DomainError, ParseError, ResourceError
from .exactnum import QuadraticSurd, normalize

__all__ = [
    "ContinuedFraction",
    "PQState",
    "Matrix2",
    "UnimodularMatrix",
    "Verdict",
    "sqrt_cf",
    "surd_cf",
    "rational_cf",
    "convergents",
    "palindrome_check",
    "sl2_equivalent",
    "gl2_equivalent",
    "parse_cf",
]


@dataclass(frozen=True)
class ContinuedFraction:
    head: int
    preperiod: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if any(a < 1 for a in self.preperiod + self.period):
            raise DomainError("partial quotients after the head must be >= 1")

    @property
    def is_rational(self) -> bool:
        return not self.period

    def terms(self) -> Iterator[int]:
        """Partial quotients in order; infinite unless the value is rational."""
        yield self.head
        yield from self.preperiod
        if self.period:
            while True:
                yield from self.period

    def __str__(self):
        parts = []
        if self.preperiod:
            parts.append(",".join(map(str, self.preperiod)))
        if self.period:
            parts.append("(" + ",".join(map(str, self.period)) + ")")
        if not parts:
            return f"[{self.head}]"
        return f"[{self.head}; " + ", ".join(parts) + "]"


_CF_RE = re.compile(
    r"^\s*\[\s*(-?\d+)\s*(?:;\s*((?:\d+\s*,\s*)*\d+)?\s*,?\s*(?:\(\s*((?:\d+\s*,\s*)*\d+)\s*\))?\s*)?\]\s*$"
)


def parse_cf(text: str) -> ContinuedFraction:
    """Inverse of ``str(ContinuedFraction)``; whitespace-insensitive."""
    m = _CF_RE.match(text)
    if m is None:
        # report where the well-formed prefix ends
        pos = 0
        for i in range(len(text), 0, -1):
            if _CF_PREFIX.match(text[:i]):
                pos = i
                break
        raise ParseError(f"malformed continued fraction {text!r}", pos)
    head = int(m.group(1))
    pre = tuple(int(t) for t in m.group(2).split(",")) if m.group(2) else ()
    per = tuple(int(t) for t in m.group(3).split(",")) if m.group(3) else ()
    return ContinuedFraction(head, pre, per)


_CF_PREFIX = re.compile(r"^\s*\[\s*-?\d*\s*(;[\d\s,]*(\([\d\s,]*\)?)?)?$")


class PQState(NamedTuple):
    """``(P + sqrt(D))/Q`` with ``Q | D - P**2``."""

    P: int
    Q: int
    D: int

    def value(self):
        return normalize(self.P, 1, self.Q, self.D)


@dataclass(frozen=True, eq=False)
class Matrix2:
    """Integer 2x2 matrix acting by fractional linear maps."""

    a: int
    b: int
    c: int
    d: int

    def __eq__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: "Matrix2") -> "Matrix2":
        m = Matrix2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
        return _promote(m)

    def inverse(self) -> "Matrix2":
        det = self.det
        if det not in (1, -1):
            raise DomainError("matrix is not invertible over Z")
        return _promote(Matrix2(det * self.d, -det * self.b, -det * self.c, det * self.a))

    def __neg__(self):
        return _promote(Matrix2(-self.a, -self.b, -self.c, -self.d))

    def act(self, x):
        """``(a*x + b)/(c*x + d)``; exact for surds and fractions."""
        return (self.a * x + self.b) / (self.c * x + self.d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"({self.a} {self.b}; {self.c} {self.d})"


@dataclass(frozen=True, eq=False)
class UnimodularMatrix(Matrix2):
    """Matrix2 with determinant exactly 1."""

    def __post_init__(self):
        if self.det != 1:
            raise DomainError(f"determinant {self.det} != 1")


def _promote(m: Matrix2) -> Matrix2:
    if m.det == 1 and not isinstance(m, UnimodularMatrix):
        return UnimodularMatrix(m.a, m.b, m.c, m.d)
    if m.det != 1 and isinstance(m, UnimodularMatrix):
        return Matrix2(m.a, m.b, m.c, m.d)
    return m


IDENTITY = UnimodularMatrix(1, 0, 0, 1)


@dataclass(frozen=True)
class Verdict:
    """Outcome of an equivalence test; truthy iff the equivalence holds."""

    holds: bool
    witness: Optional[Matrix2] = None

    def __bool__(self):
        return self.holds


# -- expansions ------------------------------------------------------------


@dataclass
class _Orbit:
    terms: list
    states: list
    start: int
    length: int
    D: int = field(default=0)

    def term(self, k: int) -> int:
        if k < len(self.terms):
            return self.terms[k]
        return self.terms[self.start + (k - self.start) % self.length]

    def quotient(self, k: int):
        if k >= len(self.states):
            k = self.start + (k - self.start) % self.length
        return self.states[k].value()

    def to_cf(self) -> ContinuedFraction:
        t = self.terms
        if self.start == 0:
            return ContinuedFraction(t[0], (), tuple(t[1:]) + (t[0],))
        return ContinuedFraction(t[0], tuple(t[1 : self.start]), tuple(t[self.start :]))


def _pq_start(x: QuadraticSurd) -> tuple[int, int, int]:
    p, q, r, d = x.fields()
    if q > 0:
        P, Q = p, r
    else:
        P, Q = -p, -r
    D = q * q * d
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, Q, D


def _orbit(P: int, Q: int, D: int, max_terms: Optional[int]) -> _Orbit:
    s = math.isqrt(D)
    if max_terms is None:
        max_terms = 4 * D + 64
    seen: dict = {}
    terms: list = []
    states: list = []
    while True:
        key = (P, Q)
        if key in seen:
            i = seen[key]
            return _Orbit(terms, states, i, len(terms) - i, D)
        if len(terms) >= max_terms:
            raise ResourceError(f"no period found within {max_terms} terms")
        seen[key] = len(terms)
        states.append(PQState(P, Q, D))
        a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        terms.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q


def _check_real_surd(x, name="x"):
    if not isinstance(x, QuadraticSurd) or x.d < 0:
        raise DomainError(f"{name} must be a real quadratic irrational, got {x!r}")


def sqrt_cf(D: int) -> ContinuedFraction:
    """Continued fraction of sqrt(D) by the (P, Q) recurrence from (0, 1)."""
    if not isinstance(D, int) or D < 2 or math.isqrt(D) ** 2 == D:
        raise DomainError(f"D = {D} must be a non-square integer >= 2")
    return _orbit(0, 1, D, None).to_cf()


def surd_cf(x: QuadraticSurd, max_terms: Optional[int] = None) -> ContinuedFraction:
    """Eventually periodic expansion of a real quadratic irrational.

    ``max_terms`` bounds the number of states visited.  The default,
    ``4*D + 64`` with ``D`` the discriminant of the (P, Q) form, always
    suffices: admissible reduced states number fewer than ``2*D``.
    """
    _check_real_surd(x)
    return _orbit(*_pq_start(x), max_terms).to_cf()


def rational_cf(x) -> ContinuedFraction:
    x = Fraction(x)
    terms = []
    n, d = x.numerator, x.denominator
    while d:
        a, rem = divmod(n, d)
        terms.append(a)
        n, d = d, rem
    # canonical form: last quotient > 1 unless it is the head
    if len(terms) > 1 and terms[-1] == 1:
        terms.pop()
        terms[-1] += 1
    return ContinuedFraction(terms[0], tuple(terms[1:]), ())


def convergents(cf: ContinuedFraction, n: int) -> list:
    """First ``n`` convergents p_k/q_k (fewer if a rational expansion ends)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    p0, p1 = 0, 1
    q0, q1 = 1, 0
    for a in cf.terms():
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        out.append(Fraction(p1, q1))
        if len(out) == n:
            break
    return out


def palindrome_check(cf: ContinuedFraction) -> bool:
    per = cf.period
    if not per:
        return False
    body = per[:-1]
    return per[-1] == 2 * cf.head and body == body[::-1]


# -- equivalence -----------------------------------------------------------


def _prefix_matrix(orbit: _Orbit, k: int) -> Matrix2:
    """Matrix M with x = M . x_k, built from the first k partial quotients."""
    p0, p1 = 0, 1
    q0, q1 = 1, 0
    for i in range(k):
        a = orbit.term(i)
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
    return _promote(Matrix2(p1, p0, q1, q0))


def _witness_key(m: Matrix2):
    return (max(abs(e) for e in m.entries()), m.entries())


def _sign_normal(m: Matrix2) -> Matrix2:
    if m.c < 0 or (m.c == 0 and m.d < 0):
        return -m
    return m


def _equivalence(x, y, det_one: bool) -> Optional[Matrix2]:
    _check_real_surd(x, "x")
    _check_real_surd(y, "y")
    if x.d != y.d:
        return None
    ox = _orbit(*_pq_start(x), None)
    oy = _orbit(*_pq_start(y), None)
    if ox.length != oy.length:
        return None
    k = ox.start
    target = ox.quotient(k)
    ell = ox.length
    for l in range(oy.start, oy.start + ell):
        if oy.quotient(l) == target:
            break
    else:
        return None
    if det_one and (k + l) % 2:
        if ell % 2 == 0:
            return None
        l += ell
    mk = _prefix_matrix(ox, k)
    w = _prefix_matrix(oy, l) @ mk.inverse()

    # the stabiliser of x is generated by its period automorph
    auto = _prefix_matrix(ox, k + ell) @ mk.inverse()
    if det_one and auto.det != 1:
        auto = auto @ auto
    candidates = []
    power = IDENTITY
    inv = auto.inverse()
    for g in (auto, inv):
        power = IDENTITY
        for _ in range(4):
            cand = w @ power
            candidates.append(_sign_normal(cand))
            power = power @ g
    best = min(candidates, key=_witness_key)
    assert best.act(x) == y
    return best


def sl2_equivalent(x: QuadraticSurd, y: QuadraticSurd) -> Optional[UnimodularMatrix]:
    """Witness W in SL2(Z) with ``y = W.act(x)``, or None.

    Tails of the two expansions must coincide after shifts k and l; each
    shift contributes determinant -1, so k + l must be even.  An odd period
    can always repair the parity; an even one cannot.
    """
    return _equivalence(x, y, det_one=True)


def gl2_equivalent(x: QuadraticSurd, y: QuadraticSurd) -> Optional[Matrix2]:
    """Serret's criterion: witness of determinant +-1, or None."""
    return _equivalence(x, y, det_one=False)
