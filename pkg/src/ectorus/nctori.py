"""Noncommutative tori: real multiplication, Morita equivalence, complexity.

A torus is described by its rotation number theta.  Only exact quadratic
theta are handled by the equivalence tests; floats are refused rather than
guessed at.  The complexity invariant c is computed by a named, pluggable
evaluator; the default reproduces the rank table shipped in
``data/gross_table.txt``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from numbers import Rational as _RationalABC
from typing import Callable, Optional

from .cfrac import ContinuedFraction, Verdict, parse_cf, sl2_equivalent, sqrt_cf
from .errors import (
    DegenerateError,
    DomainError,
    NotInDomainError,
    OutOfScopeError,
    ParameterError,
    ParseError,
    RefusalError,
)
from .exactnum import QuadraticSurd, sqrt

__all__ = [
    "TorusDescriptor",
    "ComplexityReport",
    "RankRecord",
    "RowCheck",
    "ReconciliationReport",
    "DEFAULT_EVALUATOR",
    "EVALUATORS",
    "register_evaluator",
    "is_prime",
    "rm_discriminant",
    "morita_equivalent",
    "functor_F",
    "arithmetic_complexity",
    "rank_from_complexity",
    "golden_table",
    "verify_reconciliation",
]


@dataclass(frozen=True)
class TorusDescriptor:
    """Rotation number theta of A_theta (relation vu = exp(2 pi i theta) uv)."""

    theta: object
    label: str = ""

    def __post_init__(self):
        t = self.theta
        if isinstance(t, QuadraticSurd):
            if t.d < 0:
                raise DomainError(f"theta = {t} is not real")
        elif isinstance(t, (int, _RationalABC)):
            object.__setattr__(self, "theta", Fraction(t))
        elif isinstance(t, float):
            pass
        else:
            raise DomainError(f"unsupported theta {t!r}")

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.theta, float)

    @property
    def degenerate(self) -> bool:
        """Rational theta: not an irrational rotation."""
        return isinstance(self.theta, Fraction)

    def __str__(self):
        return self.label or str(self.theta)


def _theta(t):
    return t.theta if isinstance(t, TorusDescriptor) else t


def rm_discriminant(theta) -> Optional[int]:
    """Squarefree D with theta in Q(sqrt(D)); None for a float theta."""
    t = _theta(theta)
    if isinstance(t, (int, _RationalABC)):
        raise DegenerateError(f"theta = {t} is rational")
    if isinstance(t, QuadraticSurd):
        if t.d < 0:
            raise DomainError("theta must be real")
        return t.d
    if isinstance(t, float):
        return None
    raise DomainError(f"unsupported theta {t!r}")


def morita_equivalent(t1, t2) -> Verdict:
    """A_theta1 ~ A_theta2 iff theta2 = (a theta1 + b)/(c theta1 + d) in SL2(Z)."""
    a, b = _theta(t1), _theta(t2)
    for t in (a, b):
        if isinstance(t, float):
            raise RefusalError("Morita equivalence needs exact theta, got a float")
        if isinstance(t, (int, _RationalABC)):
            raise DegenerateError(f"theta = {t} is rational")
    w = sl2_equivalent(a, b)
    return Verdict(w is not None, w)


def functor_F(tau) -> TorusDescriptor:
    """The torus attached to a CM curve: E_sqrt(-D) goes to A_sqrt(D).

    Defined only at CM points; anything else is refused.
    """
    from .curves.modulus import cm_discriminant

    try:
        D = cm_discriminant(tau)
    except DomainError as exc:
        raise NotInDomainError(str(exc)) from None
    if D is None:
        raise NotInDomainError("no CM detected for an inexact modulus")
    if D == 1:
        raise NotInDomainError("D = 1 would give the rational rotation theta = 1")
    return TorusDescriptor(sqrt(D), f"A_sqrt({D})")


# -- complexity ------------------------------------------------------------


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, probable prime above."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _period_length_class(period: tuple) -> int:
    return 2 if len(period) % 4 == 2 else 1


DEFAULT_EVALUATOR = "period-length-class"
EVALUATORS: dict[str, Callable[[tuple], int]] = {DEFAULT_EVALUATOR: _period_length_class}


def register_evaluator(name: str, fn: Callable[[tuple], int]):
    """Add an alternative definition of c, computed from the raw period."""
    EVALUATORS[name] = fn


def _in_theorem_scope(D: int) -> bool:
    return D % 4 == 3 and is_prime(D)


@dataclass(frozen=True)
class ComplexityReport:
    D: int
    period: tuple
    period_length: int
    complexity: int
    evaluator_name: str
    validated: bool
    notes: tuple = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["period"] = list(self.period)
        d["notes"] = list(self.notes)
        return d


def arithmetic_complexity(D: int, evaluator: str = DEFAULT_EVALUATOR) -> ComplexityReport:
    """c(A_sqrt(D)) by the named evaluator, with the raw period attached.

    The default rule is only validated for primes D = 3 mod 4 with an even
    period; other D are still computed but flagged.
    """
    if evaluator not in EVALUATORS:
        raise ParameterError(f"unknown evaluator {evaluator!r}; known: {sorted(EVALUATORS)}")
    cf = sqrt_cf(D)
    period = cf.period
    c = EVALUATORS[evaluator](period)
    if c < 1:
        raise ParameterError(f"evaluator {evaluator!r} returned c = {c} < 1")
    notes = []
    validated = evaluator == DEFAULT_EVALUATOR and _in_theorem_scope(D)
    if not _in_theorem_scope(D):
        notes.append("outside validated range: D is not a prime = 3 mod 4")
    if len(period) % 2:
        validated = False
        notes.append("odd period length; the rule has no printed value to match")
    if evaluator != DEFAULT_EVALUATOR:
        notes.append(f"alternative evaluator {evaluator!r}, not checked against the table")
    return ComplexityReport(D, period, len(period), c, evaluator, validated, tuple(notes))


def rank_from_complexity(D: int, evaluator: str = DEFAULT_EVALUATOR) -> int:
    """rk(E) = c(A) - 1, only for primes D = 3 mod 4."""
    if not isinstance(D, int) or not _in_theorem_scope(D):
        raise OutOfScopeError(f"D = {D} is not a prime congruent to 3 mod 4")
    return arithmetic_complexity(D, evaluator).complexity - 1


# -- golden table ----------------------------------------------------------


@dataclass(frozen=True)
class RankRecord:
    D: int
    rank: int
    cf: ContinuedFraction
    complexity: int


def _read_table_text(path) -> str:
    if path is None:
        return resources.files("ectorus").joinpath("data/gross_table.txt").read_text()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def golden_table(path=None) -> list[RankRecord]:
    """Rows of the rank/complexity table; ``path`` overrides the shipped file."""
    rows = []
    for lineno, line in enumerate(_read_table_text(path).splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = [p.strip() for p in line.split("\t")]
        if len(parts) != 4:
            raise ParseError(f"line {lineno}: expected 4 tab-separated fields", 0)
        try:
            D, rank, c = int(parts[0]), int(parts[1]), int(parts[3])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field", 0) from None
        rows.append(RankRecord(D, rank, parse_cf(parts[2]), c))
    return rows


@dataclass
class RowCheck:
    D: int
    rank: int
    stored_cf: str
    computed_cf: str
    stored_c: int
    computed_c: int
    cf_ok: bool
    c_ok: bool
    rank_ok: bool

    @property
    def ok(self) -> bool:
        return self.cf_ok and self.c_ok and self.rank_ok


@dataclass
class ReconciliationReport:
    rows: list = field(default_factory=list)
    evaluator: str = DEFAULT_EVALUATOR

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.rows)

    def summary(self) -> str:
        return f"{self.passed}/{len(self.rows)} rows pass"

    def to_dict(self) -> dict:
        rows = []
        for r in self.rows:
            d = asdict(r)
            d["ok"] = r.ok
            rows.append(d)
        return {
            "evaluator": self.evaluator,
            "passed": self.passed,
            "total": len(self.rows),
            "summary": self.summary(),
            "rows": rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_markdown(self) -> str:
        lines = [
            "| D | rank | continued fraction of sqrt(D) | c | check |",
            "|---|---|---|---|---|",
        ]
        for r in self.rows:
            lines.append(
                f"| {r.D} | {r.rank} | {r.stored_cf} | {r.stored_c} | {'pass' if r.ok else 'FAIL'} |"
            )
        lines.append("")
        lines.append(self.summary())
        return "\n".join(lines)


def verify_reconciliation(table=None, evaluator: str = DEFAULT_EVALUATOR) -> ReconciliationReport:
    """Recompute every row from D alone and compare with the stored values.

    A row passes when the expansion matches exactly, the evaluator gives
    the stored c, and the stored rank equals c - 1.  Failures are reported,
    never raised.
    """
    if table is None:
        table = golden_table()
    report = ReconciliationReport(evaluator=evaluator)
    for rec in sorted(table, key=lambda r: r.D):
        cf = sqrt_cf(rec.D)
        c = arithmetic_complexity(rec.D, evaluator).complexity
        try:
            rank_ok = rank_from_complexity(rec.D, evaluator) == rec.rank == c - 1
        except OutOfScopeError:
            rank_ok = False
        report.rows.append(
            RowCheck(
                D=rec.D,
                rank=rec.rank,
                stored_cf=str(rec.cf),
                computed_cf=str(cf),
                stored_c=rec.complexity,
                computed_c=c,
                cf_ok=cf == rec.cf,
                c_ok=c == rec.complexity,
                rank_ok=rank_ok,
            )
        )
    return report
