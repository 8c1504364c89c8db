"""Monomial rewriting to the normal form coefficient * x1^a x3^b.

Relations are oriented so that every step either shortens the word or
moves an x1/x2 letter in front of an x3/x4 letter; rewriting therefore
terminates, and for EASY and REL2 it is confluent (checked exhaustively
on short words in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import ParameterError, ResourceError
from .terms import EASY, REL2, Coefficient, Relation, RuleSet, Term, word_str

__all__ = [
    "Rule",
    "NormalForm",
    "orient",
    "rules_for",
    "rewrite_once",
    "normal_form",
    "normal_form_trace",
    "closed_form",
    "verify_relation",
]

_BLOCK = {1: 0, 2: 0, 3: 1, 4: 1}


@dataclass(frozen=True)
class Rule:
    """``lhs -> coeff * rhs`` as a rewrite on words."""

    lhs: tuple
    rhs: tuple
    coeff: Coefficient
    label: str = ""

    def __str__(self):
        c = str(self.coeff)
        rhs = word_str(self.rhs)
        return f"{word_str(self.lhs)} -> {rhs if c == '1' else c + '*' + rhs}"


def _weight(word: tuple) -> tuple:
    inversions = sum(
        1
        for i in range(len(word))
        for j in range(i + 1, len(word))
        if _BLOCK[word[i]] > _BLOCK[word[j]]
    )
    return (len(word), inversions, word)


def orient(rel: Relation) -> Rule:
    """Turn a monomial relation into a rule decreasing (length, inversions, word)."""
    l, r = rel.lhs, rel.rhs
    if _weight(l.word) < _weight(r.word):
        l, r = r, l
    if l.word == r.word:
        raise ParameterError(f"relation {rel} does not rewrite anything")
    return Rule(l.word, r.word, r.coeff / l.coeff, rel.label)


@dataclass(frozen=True)
class NormalForm:
    coefficient: Coefficient
    a: int
    b: int

    @property
    def k(self) -> int:
        return self.coefficient.k

    def word(self) -> tuple:
        x = (1,) * self.a if self.a >= 0 else (2,) * -self.a
        y = (3,) * self.b if self.b >= 0 else (4,) * -self.b
        return x + y

    def term(self) -> Term:
        return Term(self.coefficient, self.word())

    def star(self) -> "NormalForm":
        # (x1^a x3^b)* = x3^-b x1^-a = q^(ab) x1^-a x3^-b
        c = self.coefficient.conjugate() * Coefficient(self.a * self.b)
        return NormalForm(c, -self.a, -self.b)

    def __str__(self):
        return str(self.term())


@lru_cache(maxsize=None)
def rules_for(system_name: str) -> tuple:
    if system_name == "REL2":
        return tuple(orient(r) for r in REL2)
    if system_name == "EASY":
        from .proofs import lemma1_check

        report = lemma1_check()
        if not report.forward_ok:
            raise ResourceError("EASY companions could not all be derived; no normal form")
        derived = [orient(item.target) for item in report.items]
        base = [orient(r) for r in EASY]
        seen, rules = set(), []
        for rule in base + derived:
            if (rule.lhs, rule.rhs, rule.coeff) not in seen:
                seen.add((rule.lhs, rule.rhs, rule.coeff))
                rules.append(rule)
        return tuple(rules)
    raise ParameterError(f"no normal form for system {system_name!r}; use EASY or REL2")


def _system_name(system) -> str:
    return system.name if isinstance(system, RuleSet) else str(system)


def rewrite_once(term: Term, rules) -> tuple:
    """Apply the leftmost applicable rule; returns ``(term, rule)`` or ``(term, None)``."""
    w = term.word
    for i in range(len(w)):
        for rule in rules:
            n = len(rule.lhs)
            if w[i : i + n] == rule.lhs:
                return Term(term.coeff * rule.coeff, w[:i] + rule.rhs + w[i + n :]), rule
    return term, None


def normal_form_trace(term: Term, system="REL2") -> tuple:
    """Normal form plus the list of ``(rule, term_after)`` steps taken."""
    rules = rules_for(_system_name(system))
    steps = []
    while True:
        term, rule = rewrite_once(term, rules)
        if rule is None:
            break
        steps.append((rule, term))
    return _to_nf(term), steps


def _to_nf(term: Term) -> NormalForm:
    w = term.word
    split = 0
    while split < len(w) and _BLOCK[w[split]] == 0:
        split += 1
    head, tail = w[:split], w[split:]
    if any(_BLOCK[g] == 0 for g in tail) or len(set(head)) > 1 or len(set(tail)) > 1:
        raise ParameterError(f"rewriting stopped at non-canonical word {word_str(w)}")
    a = len(head) if head[:1] != (2,) else -len(head)
    b = len(tail) if tail[:1] != (4,) else -len(tail)
    return NormalForm(term.coeff, a, b)


def normal_form(term, system="REL2") -> NormalForm:
    if isinstance(term, tuple):
        term = Term(word=term)
    return normal_form_trace(term, system)[0]


def closed_form(term: Term) -> NormalForm:
    """Normal form by the exponent bookkeeping of the right action.

    Appending x1 to q^k x1^a x3^b moves it past x3^b, giving k += b.
    """
    k, a, b = 0, 0, 0
    for g in term.word:
        if g == 1:
            k, a = k + b, a + 1
        elif g == 2:
            k, a = k - b, a - 1
        elif g == 3:
            b += 1
        else:
            b -= 1
    return NormalForm(term.coeff * Coefficient(k), a, b)


def verify_relation(rel: Relation, system="REL2") -> bool:
    """Whether ``rel`` holds in the quotient: equal normal forms on both sides."""
    return normal_form(rel.lhs, system) == normal_form(rel.rhs, system)
