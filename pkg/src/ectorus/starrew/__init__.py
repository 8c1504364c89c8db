"""Relation language and rewriting for the *-algebra presentations."""

from .parser import parse_relation, parse_term
from .proofs import (
    involution_check,
    involution_report,
    lemma1_check,
    rel1_decomposition_check,
    replay,
    sklyanin_constraint,
)
from .rewrite import NormalForm, closed_form, normal_form, normal_form_trace, verify_relation
from .terms import (
    EASY,
    REL0,
    REL1,
    REL2,
    SYSTEMS,
    Coefficient,
    LinearRelation,
    Relation,
    RuleSet,
    Term,
    sklyanin_relations,
)

__all__ = [
    "parse_relation",
    "parse_term",
    "normal_form",
    "normal_form_trace",
    "closed_form",
    "verify_relation",
    "NormalForm",
    "lemma1_check",
    "replay",
    "rel1_decomposition_check",
    "involution_check",
    "involution_report",
    "sklyanin_constraint",
    "Coefficient",
    "Term",
    "Relation",
    "RuleSet",
    "LinearRelation",
    "EASY",
    "REL1",
    "REL2",
    "REL0",
    "SYSTEMS",
    "sklyanin_relations",
]
