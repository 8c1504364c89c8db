"""Terms, relations and the named relation systems.

Generators are the integers 1..4 standing for x1..x4 (x1 = u, x2 = u*,
x3 = v, x4 = v*).  A word is a tuple of generator indices; the empty word is
the unit e.  Coefficients are formal monomials q^k mu^m s, with q the phase
exp(2 pi i theta), mu = |q| real and s rational, so every identity is
checked for all theta and mu at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "GENERATORS",
    "STAR",
    "Coefficient",
    "ONE",
    "Term",
    "Relation",
    "RuleSet",
    "EASY",
    "REL1",
    "REL2",
    "REL0",
    "SYSTEMS",
    "LinearRelation",
    "sklyanin_relations",
    "star_word",
    "word_str",
]

GENERATORS = (1, 2, 3, 4)
STAR = {1: 2, 2: 1, 3: 4, 4: 3}


def star_word(word: tuple) -> tuple:
    """Anti-automorphism on words: reverse and swap x1<->x2, x3<->x4."""
    return tuple(STAR[g] for g in reversed(word))


def word_str(word: tuple) -> str:
    return "*".join(f"x{g}" for g in word) if word else "e"


@dataclass(frozen=True, order=True)
class Coefficient:
    k: int = 0  # exponent of q
    m: int = 0  # exponent of mu
    s: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        if self.s == 0:
            raise ValueError("zero coefficient")

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        return Coefficient(self.k + other.k, self.m + other.m, self.s * other.s)

    def inverse(self) -> "Coefficient":
        return Coefficient(-self.k, -self.m, 1 / self.s)

    def __truediv__(self, other: "Coefficient") -> "Coefficient":
        return self * other.inverse()

    def conjugate(self) -> "Coefficient":
        # q is a phase, mu and s are real
        return Coefficient(-self.k, self.m, self.s)

    @property
    def is_one(self) -> bool:
        return self.k == 0 and self.m == 0 and self.s == 1

    def factors(self) -> list[str]:
        out = []
        if self.s != 1:
            out.append(str(self.s))
        for name, n in (("q", self.k), ("mu", self.m)):
            if n == 1:
                out.append(name)
            elif n:
                out.append(f"{name}^{n}")
        return out

    def __str__(self):
        return "*".join(self.factors()) or "1"


ONE = Coefficient()


@dataclass(frozen=True)
class Term:
    coeff: Coefficient = ONE
    word: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if any(g not in STAR for g in self.word):
            raise ValueError(f"bad word {self.word!r}")

    def __mul__(self, other: "Term") -> "Term":
        return Term(self.coeff * other.coeff, self.word + other.word)

    def star(self) -> "Term":
        return Term(self.coeff.conjugate(), star_word(self.word))

    def __str__(self):
        return "*".join(self.coeff.factors() + [word_str(self.word)])


@dataclass(frozen=True)
class Relation:
    """``lhs = rhs``; stored oriented, compared up to orientation and scaling."""

    lhs: Term
    rhs: Term
    label: str = field(default="", compare=False)

    def star(self) -> "Relation":
        return Relation(self.lhs.star(), self.rhs.star(), self.label + "*" if self.label else "")

    def key(self) -> tuple:
        """Orientation-free identity: words plus the ratio rhs/lhs."""
        ratio = self.rhs.coeff / self.lhs.coeff
        a = (self.lhs.word, self.rhs.word, ratio)
        b = (self.rhs.word, self.lhs.word, ratio.inverse())
        return min(a, b)

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


def _rel(text_lhs, k, m, text_rhs, label):
    return Relation(Term(ONE, text_lhs), Term(Coefficient(k, m), text_rhs), label)


@dataclass(frozen=True)
class RuleSet:
    name: str
    relations: tuple
    description: str = ""

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)

    def keys(self) -> set:
        return {r.key() for r in self.relations}


EASY = RuleSet(
    "EASY",
    (
        _rel((3, 1), 1, 0, (1, 3), "x3x1 = q x1x3"),
        _rel((1, 2), 0, 0, (), "x1x2 = e"),
        _rel((2, 1), 0, 0, (), "x2x1 = e"),
        _rel((3, 4), 0, 0, (), "x3x4 = e"),
        _rel((4, 3), 0, 0, (), "x4x3 = e"),
    ),
    "unitaries u = x1, v = x3 with vu = q uv",
)

REL1 = RuleSet(
    "REL1",
    (
        _rel((3, 1), 1, 1, (1, 3), "line 1"),
        _rel((4, 2), 1, -1, (2, 4), "line 2"),
        _rel((4, 1), -1, 1, (1, 4), "line 3"),
        _rel((3, 2), -1, -1, (2, 3), "line 4"),
        _rel((2, 1), 0, 0, (1, 2), "line 5"),
        _rel((4, 3), 0, 0, (3, 4), "line 6"),
    ),
    "skew-symmetric Sklyanin form S(q)",
)

REL2 = RuleSet(
    "REL2",
    (
        _rel((3, 1), 1, 0, (1, 3), "line 1"),
        _rel((4, 2), 1, 0, (2, 4), "line 2"),
        _rel((4, 1), -1, 0, (1, 4), "line 3"),
        _rel((3, 2), -1, 0, (2, 3), "line 4"),
        _rel((2, 1), 0, 0, (1, 2), "line 5a"),
        _rel((1, 2), 0, 0, (), "line 5b"),
        _rel((4, 3), 0, 0, (3, 4), "line 6a"),
        _rel((3, 4), 0, 0, (), "line 6b"),
    ),
    "the EASY system with all four phase commutations",
)

REL0 = RuleSet(
    "REL0",
    (
        _rel((1, 2), 0, -1, (), "x1x2 = mu^-1 e"),
        _rel((3, 4), 0, -1, (), "x3x4 = mu^-1 e"),
    ),
    "scaling of the unit",
)

SYSTEMS = {rs.name: rs for rs in (EASY, REL1, REL2, REL0)}


@dataclass(frozen=True)
class LinearRelation:
    """``sum lhs = sum rhs`` with numeric coefficients on words.

    Used for the general four-generator Sklyanin relations, which are not
    monomial; no normal form is computed for them.
    """

    lhs: tuple  # of (coefficient, word)
    rhs: tuple

    def __str__(self):
        def side(terms):
            return " + ".join(f"{c}*{word_str(w)}" if c != 1 else word_str(w) for c, w in terms)

        return f"{side(self.lhs)} = {side(self.rhs)}"

    def residual(self, evaluate) -> object:
        """``lhs - rhs`` with words mapped through ``evaluate(word)``."""
        total = 0
        for c, w in self.lhs:
            total = total + c * evaluate(w)
        for c, w in self.rhs:
            total = total - c * evaluate(w)
        return total


def sklyanin_relations(alpha, beta, gamma) -> tuple:
    """The six quadratic relations of S(alpha, beta, gamma)."""
    out = []
    for (i, j, k, l), p in (((1, 2, 3, 4), alpha), ((1, 3, 4, 2), beta), ((1, 4, 2, 3), gamma)):
        out.append(LinearRelation(((1, (i, j)), (-1, (j, i))), ((p, (k, l)), (p, (l, k)))))
        out.append(LinearRelation(((1, (i, j)), (1, (j, i))), ((1, (k, l)), (-1, (l, k)))))
    return tuple(out)
