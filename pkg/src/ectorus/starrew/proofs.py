"""Mechanical checks on the relation systems.

* ``lemma1_check``: EASY and REL2 define the same quotient.  Forward, each
  REL2 relation is derived from the EASY axioms by a breadth-first search
  over the moves a hand proof uses: multiply both sides by a generator on
  the left or right, or rewrite a subword with an EASY relation.  Backward,
  each EASY relation is checked by REL2 normal forms.
* ``rel1_decomposition_check``: REL1 against REL2 plus REL0, with explicit
  q and mu exponent ledgers per relation.
* ``involution_check``: closure of a system under the star operation.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .rewrite import closed_form, normal_form, verify_relation
from .terms import (
    EASY,
    ONE,
    REL0,
    REL1,
    REL2,
    SYSTEMS,
    Coefficient,
    Relation,
    RuleSet,
    Term,
    word_str,
)

__all__ = [
    "MAX_DEPTH",
    "MAX_LENGTH",
    "Step",
    "Derivation",
    "Lemma1Report",
    "lemma1_check",
    "replay",
    "LedgerRow",
    "DecompositionReport",
    "rel1_decomposition_check",
    "InvolutionReport",
    "involution_report",
    "involution_check",
    "sklyanin_constraint",
]

MAX_DEPTH = 12
MAX_LENGTH = 6

# EASY rewrites usable inside a derivation: u = q^c v, applied in either
# direction; unit relations may delete a subword but never insert one
_SWAPS = (((3, 1), (1, 3), 1), ((1, 2), (2, 1), 0), ((3, 4), (4, 3), 0))
_UNITS = ((1, 2), (2, 1), (3, 4), (4, 3))


def _state_relation(state) -> Relation:
    l, r, k = state
    return Relation(Term(ONE, l), Term(Coefficient(k), r))


def _relation_state(rel: Relation) -> tuple:
    ratio = rel.rhs.coeff / rel.lhs.coeff
    if ratio.m or ratio.s != 1:
        raise ValueError(f"{rel} is not a pure q-relation")
    return (rel.lhs.word, rel.rhs.word, ratio.k)


def _canonical(state) -> tuple:
    l, r, k = state
    return min((l, r, k), (r, l, -k))


@dataclass(frozen=True)
class Step:
    move: tuple  # ("axiom",) | ("left", g) | ("right", g) | ("rewrite", side, pos, u, v, c)
    state: tuple

    def describe(self) -> str:
        kind = self.move[0]
        if kind == "axiom":
            return "EASY axiom"
        if kind in ("left", "right"):
            return f"multiply on the {kind} by x{self.move[1]}"
        _, side, pos, u, v, c = self.move
        rhs = word_str(v)
        if c:
            rhs = f"{Coefficient(c)}*{rhs}"
        return f"rewrite {word_str(u)} -> {rhs} in the {side} side at position {pos}"

    def to_dict(self) -> dict:
        return {"move": self.describe(), "relation": str(_state_relation(self.state))}


@dataclass
class Derivation:
    target: Relation
    line: str
    status: str  # "derived" | "inconclusive"
    steps: list = field(default_factory=list)

    @property
    def uses_multiplication(self) -> bool:
        return any(s.move[0] in ("left", "right") for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "relation": str(self.target),
            "line": self.line,
            "status": self.status,
            "derivation": [s.to_dict() for s in self.steps],
        }


def _moves(state):
    l, r, k = state
    for g in (1, 2, 3, 4):
        yield ("left", g), ((g,) + l, (g,) + r, k)
        yield ("right", g), (l + (g,), r + (g,), k)
    for side in ("lhs", "rhs"):
        w = l if side == "lhs" else r
        for pos in range(len(w)):
            for a, b, c in _SWAPS:
                for u, v, cc in ((a, b, c), (b, a, -c)):
                    if w[pos : pos + 2] == u:
                        yield ("rewrite", side, pos, u, v, cc), _apply(state, side, pos, u, v, cc)
            for u in _UNITS:
                if w[pos : pos + 2] == u:
                    yield ("rewrite", side, pos, u, (), 0), _apply(state, side, pos, u, (), 0)


def _apply(state, side, pos, u, v, c):
    """Replace u by q^c v; the phase moves across to keep lhs = q^k rhs."""
    l, r, k = state
    if side == "lhs":
        return (l[:pos] + v + l[pos + len(u) :], r, k - c)
    return (l, r[:pos] + v + r[pos + len(u) :], k + c)


def _legal(move) -> bool:
    if move[0] in ("left", "right"):
        return move[1] in (1, 2, 3, 4)
    if move[0] != "rewrite":
        return False
    _, side, pos, u, v, c = move
    if side not in ("lhs", "rhs"):
        return False
    if v == () and c == 0:
        return u in _UNITS
    return any((u, v, c) in ((a, b, cc), (b, a, -cc)) for a, b, cc in _SWAPS)


def replay(derivation: Derivation) -> bool:
    """Re-execute a derivation step by step from its EASY axiom."""
    steps = derivation.steps
    if not steps or steps[0].move != ("axiom",):
        return False
    axioms = {_canonical(_relation_state(r)) for r in EASY}
    state = steps[0].state
    if _canonical(state) not in axioms:
        return False
    for step in steps[1:]:
        if not _legal(step.move):
            return False
        kind = step.move[0]
        l, r, k = state
        if kind == "left":
            state = ((step.move[1],) + l, (step.move[1],) + r, k)
        elif kind == "right":
            state = (l + (step.move[1],), r + (step.move[1],), k)
        else:
            _, side, pos, u, v, c = step.move
            w = l if side == "lhs" else r
            if w[pos : pos + len(u)] != u:
                return False
            state = _apply(state, side, pos, u, v, c)
        if state != step.state:
            return False
    return _canonical(state) == _canonical(_relation_state(derivation.target))


def _search(targets: dict, max_depth: int, max_length: int) -> dict:
    """BFS from the EASY axioms; returns canonical target -> list of Steps."""
    parent: dict = {}
    frontier = deque()
    for rel in EASY:
        s = _relation_state(rel)
        key = _canonical(s)
        if key not in parent:
            parent[key] = (None, ("axiom",), s)
            frontier.append((s, 0))
    remaining = set(targets) - set(parent)
    while frontier and remaining:
        state, depth = frontier.popleft()
        if depth == max_depth:
            continue
        for move, nxt in _moves(state):
            if len(nxt[0]) + len(nxt[1]) > max_length:
                continue
            key = _canonical(nxt)
            if key in parent:
                continue
            parent[key] = (_canonical(state), move, nxt)
            remaining.discard(key)
            frontier.append((nxt, depth + 1))
    found = {}
    for key in targets:
        if key not in parent:
            continue
        chain = []
        cur = key
        while cur is not None:
            prev, move, s = parent[cur]
            chain.append(Step(move, s))
            cur = prev
        found[key] = chain[::-1]
    return found


_LINES = {
    "line 1": "line 1",
    "line 2": "line 2",
    "line 3": "line 3",
    "line 4": "line 4",
    "line 5a": "line 5",
    "line 5b": "line 5",
    "line 6a": "line 6",
    "line 6b": "line 6",
}


@dataclass
class Lemma1Report:
    items: list
    converse: list  # (relation, holds)

    @property
    def forward_ok(self) -> bool:
        return all(d.status == "derived" and replay(d) for d in self.items)

    @property
    def converse_ok(self) -> bool:
        return all(ok for _, ok in self.converse)

    @property
    def ok(self) -> bool:
        return self.forward_ok and self.converse_ok

    def lines(self) -> dict:
        out: dict = {}
        for d in self.items:
            out.setdefault(d.line, []).append(d)
        return out

    def find(self, text: str) -> Optional[Derivation]:
        from .parser import parse_relation

        key = parse_relation(text).key()
        for d in self.items:
            if d.target.key() == key:
                return d
        return None

    def to_dict(self) -> dict:
        return {
            "forward": [d.to_dict() for d in self.items],
            "converse": [{"relation": str(r), "status": "holds" if ok else "fails"} for r, ok in self.converse],
            "status": "verified" if self.ok else "inconclusive",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        out = []
        for line, ds in self.lines().items():
            for d in ds:
                out.append(f"{line}: {d.target}  [{d.status}, {len(d.steps) - 1} steps]")
                for s in d.steps:
                    out.append(f"    {_state_relation(s.state)}    ({s.describe()})")
        out.append("converse, EASY under REL2 normal forms:")
        for r, ok in self.converse:
            out.append(f"    {r}: {'holds' if ok else 'FAILS'}")
        out.append("lemma verified" if self.ok else "lemma NOT verified")
        return "\n".join(out)


@lru_cache(maxsize=None)
def _lemma1(max_depth: int, max_length: int) -> Lemma1Report:
    targets = {_canonical(_relation_state(r)): r for r in REL2}
    found = _search(targets, max_depth, max_length)
    items = []
    for key, rel in targets.items():
        steps = found.get(key, [])
        items.append(Derivation(rel, _LINES[rel.label], "derived" if steps else "inconclusive", steps))
    converse = [(r, verify_relation(r, "REL2")) for r in EASY]
    return Lemma1Report(items, converse)


def lemma1_check(max_depth: int = MAX_DEPTH, max_length: int = MAX_LENGTH) -> Lemma1Report:
    """Derive every REL2 relation from EASY and check EASY under REL2."""
    return _lemma1(max_depth, max_length)


# -- REL1 versus REL2 + REL0 -----------------------------------------------


@dataclass
class LedgerRow:
    direction: str
    relation: str
    counterpart: str
    dk: int  # q exponent left over
    dm: int  # mu exponent left over
    words_match: bool = True

    @property
    def balanced(self) -> bool:
        return self.words_match and self.dk == 0 and self.dm == 0


@dataclass
class DecompositionReport:
    mu_exponent: int
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.balanced for r in self.rows)

    def direction_ok(self, direction: str) -> bool:
        return all(r.balanced for r in self.rows if r.direction == direction)

    def to_dict(self) -> dict:
        return {
            "substitution": f"x2 := mu^{self.mu_exponent}*x1^-1, x4 := mu^{self.mu_exponent}*x3^-1",
            "rows": [
                {
                    "direction": r.direction,
                    "relation": r.relation,
                    "counterpart": r.counterpart,
                    "q_left_over": r.dk,
                    "mu_left_over": r.dm,
                    "balanced": r.balanced,
                }
                for r in self.rows
            ],
            "status": "balanced" if self.ok else "unbalanced",
        }

    def to_text(self) -> str:
        out = [f"substitution x2 := mu^{self.mu_exponent} x1^-1, x4 := mu^{self.mu_exponent} x3^-1"]
        for r in self.rows:
            flag = "ok" if r.balanced else "UNBALANCED"
            out.append(
                f"  [{r.direction}] {r.relation}  vs  {r.counterpart}: q^{r.dk} mu^{r.dm}  {flag}"
            )
        return "\n".join(out)


def _substitute(term: Term, mu_exponent: int):
    """x2 -> mu^e x1^-1, x4 -> mu^e x3^-1 in the free group; returns (coeff, word)."""
    coeff = term.coeff
    out: list = []
    for g in term.word:
        letter = {1: 1, 2: -1, 3: 3, 4: -3}[g]
        if g in (2, 4):
            coeff = coeff * Coefficient(0, mu_exponent)
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return coeff, tuple(out)


def _group_nf(coeff: Coefficient, word: tuple):
    gens = tuple({1: 1, -1: 2, 3: 3, -3: 4}[x] for x in word)
    return closed_form(Term(coeff, gens))


def rel1_decomposition_check(mu_exponent: int = -1, rel1: RuleSet = REL1) -> DecompositionReport:
    """Compare REL1 with REL2 + REL0 through exponent ledgers.

    forward: substitute into each REL1 relation and into its REL2
    counterpart (where x2 = x1^-1); the two must agree with nothing left
    over in q or mu.  converse: substitute into each REL1 relation and
    reduce both sides with the REL2 commutations; the REL0 rows check that
    the substitution itself reproduces the unit scaling.
    """
    rows = []
    counterparts = [r for r in REL2 if not r.rhs.word == ()]
    for rel, twin in zip(rel1, counterparts):
        cl, wl = _substitute(rel.lhs, mu_exponent)
        cr, wr = _substitute(rel.rhs, mu_exponent)
        tl, vl = _substitute(twin.lhs, 0)
        tr, vr = _substitute(twin.rhs, 0)
        ledger = (cr / cl) / (tr / tl)
        rows.append(LedgerRow("forward", str(rel), str(twin), ledger.k, ledger.m, (wl, wr) == (vl, vr)))
    for rel in list(rel1) + list(REL0):
        left = _group_nf(*_substitute(rel.lhs, mu_exponent))
        right = _group_nf(*_substitute(rel.rhs, mu_exponent))
        diff = right.coefficient / left.coefficient
        same = (left.a, left.b) == (right.a, right.b)
        source = "REL0" if rel in REL0.relations else "REL2"
        rows.append(LedgerRow("converse", str(rel), f"{source} reduction", diff.k, diff.m, same))
    return DecompositionReport(mu_exponent, rows)


# -- involution ------------------------------------------------------------


@dataclass
class InvolutionReport:
    system: str
    syntactic: bool
    quotient: Optional[bool]
    images: list = field(repr=False, default_factory=list)

    @property
    def ok(self) -> bool:
        return self.syntactic or bool(self.quotient)

    def __bool__(self):
        return self.ok


def involution_report(system) -> InvolutionReport:
    """Apply * to every relation and compare with the system.

    When the image set differs literally, systems with a normal form (EASY,
    REL2) are still invariant if every image holds in the quotient.
    """
    if isinstance(system, str):
        system = SYSTEMS[system]
    images = [r.star() for r in system]
    syntactic = {r.key() for r in images} == system.keys()
    quotient = None
    if not syntactic and system.name in ("EASY", "REL2") and system in (EASY, REL2):
        quotient = all(verify_relation(r, system.name) for r in images)
    return InvolutionReport(system.name, syntactic, quotient, images)


def involution_check(system) -> bool:
    return involution_report(system).ok


def sklyanin_constraint(alpha, beta, gamma, tol: float = 1e-12) -> bool:
    """alpha + beta + gamma + alpha beta gamma = 0, to ``tol``."""
    return abs(alpha + beta + gamma + alpha * beta * gamma) <= tol
