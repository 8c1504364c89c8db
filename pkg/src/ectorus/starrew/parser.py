"""Parser for the relation language.

    relation := product "=" product
    product  := factor {"*" factor}
    factor   := "x1" | "x2" | "x3" | "x4" | "e" | "q" | "q^" int
              | "mu" | "mu^" int | rational

Whitespace is ignored.  Errors carry the 0-based character position.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError, UnknownSymbolError
from .terms import ONE, Coefficient, Relation, Term

__all__ = ["parse_relation", "parse_term"]

_RATIONAL = re.compile(r"\d+(?:/\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_EXP = re.compile(r"\s*(-?\d+)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self, what: str):
        self._skip()
        if self.pos >= len(self.text):
            raise ParseError(f"unexpected end of input, expected {what}", self.pos)
        raise ParseError(f"unexpected {self.text[self.pos]!r}, expected {what}", self.pos)

    def _exponent(self) -> int:
        if self._peek() != "^":
            return 1
        self.pos += 1
        m = _EXP.match(self.text, self.pos)
        if not m:
            self._fail("integer exponent")
        self.pos = m.end()
        return int(m.group(1))

    def factor(self):
        """Return a Term for one factor."""
        self._skip()
        start = self.pos
        m = _RATIONAL.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            try:
                value = Fraction(m.group())
            except ZeroDivisionError:
                raise ParseError("zero denominator", start) from None
            if value == 0:
                raise ParseError("zero coefficient", start)
            return Term(Coefficient(0, 0, value))
        m = _NAME.match(self.text, self.pos)
        if not m:
            self._fail("a factor")
        name = m.group()
        self.pos = m.end()
        if name in ("x1", "x2", "x3", "x4"):
            return Term(ONE, (int(name[1]),))
        if name == "e":
            return Term()
        if name == "q":
            return Term(Coefficient(self._exponent(), 0))
        if name == "mu":
            return Term(Coefficient(0, self._exponent()))
        raise UnknownSymbolError(f"unknown symbol {name!r}", start)

    def product(self) -> Term:
        t = self.factor()
        while self._peek() == "*":
            self.pos += 1
            t = t * self.factor()
        return t

    def relation(self) -> Relation:
        lhs = self.product()
        if self._peek() != "=":
            self._fail("'='")
        self.pos += 1
        rhs = self.product()
        if self._peek():
            self._fail("end of input")
        return Relation(lhs, rhs)


def parse_relation(text: str) -> Relation:
    return _Parser(text).relation()


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.product()
    if p._peek():
        p._fail("end of input")
    return t
