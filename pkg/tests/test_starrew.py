from fractions import Fraction

import pytest

import oracles
from ectorus.errors import ParameterError, ParseError, UnknownSymbolError
from ectorus.starrew import (
    EASY,
    REL0,
    REL1,
    REL2,
    Coefficient,
    NormalForm,
    Relation,
    RuleSet,
    Term,
    closed_form,
    involution_check,
    involution_report,
    lemma1_check,
    normal_form,
    normal_form_trace,
    parse_relation,
    parse_term,
    rel1_decomposition_check,
    replay,
    sklyanin_constraint,
    sklyanin_relations,
    verify_relation,
)


# -- parser ------------------------------------------------------------------


def test_parse_first_rel2_line():
    r = parse_relation("x3*x1 = q*x1*x3")
    assert r.key() == REL2.relations[0].key()


def test_parse_unit_scaling():
    r = parse_relation("x1*x2 = mu^-1*e")
    assert r.key() == REL0.relations[0].key()


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_relation("x3*x1 = q*")
    assert exc.value.position == 10


def test_parse_unknown_symbol():
    with pytest.raises(UnknownSymbolError) as exc:
        parse_relation("x1*x5 = e")
    assert exc.value.position == 3


@pytest.mark.parametrize("text", ["x1 x2 = e", "x1*x2 =", "= e", "x1*x2 = e = e", "q^ = e", "3/0*x1 = e"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_relation(text)


def test_parse_coefficients():
    t = parse_term("2/3*q^-2*mu*x4*e*x1")
    assert t.coeff == Coefficient(-2, 1, Fraction(2, 3))
    assert t.word == (4, 1)


# -- normal forms --------------------------------------------------------------


def test_normal_form_examples():
    assert normal_form((3, 1)) == NormalForm(Coefficient(1), 1, 1)
    assert normal_form((1, 2, 3, 4)) == NormalForm(Coefficient(0), 0, 0)
    nf = normal_form((4, 1, 3, 2))
    assert (nf.k, nf.a, nf.b) == (-1, 0, 0)


def test_normal_form_trace_steps():
    nf, steps = normal_form_trace(Term(word=(4, 1, 3, 2)))
    assert steps and steps[-1][1].word == ()


def test_confluence_all_words_up_to_six():
    # every rewriting order reaches the same irreducible term, and it is ours
    for w in oracles.words(6):
        finals = oracles.all_normal_forms(w)
        assert len(finals) == 1, w
        (k, word), = finals
        nf = normal_form(w)
        assert (nf.k, nf.word()) == (k, word), w


def test_closed_form_agrees_with_rewriting():
    for w in oracles.words(6):
        assert closed_form(Term(word=w)) == normal_form(w)


def test_easy_and_rel2_normal_forms_agree():
    for w in oracles.words(5):
        assert normal_form(w, "EASY") == normal_form(w, "REL2")


def test_normal_form_matches_clock_shift_matrices():
    n = 5
    w, U, V = oracles.clock_shift(n)
    longer = [(4, 1, 3, 2, 3, 1), (2, 2, 3, 3, 1, 4), (3, 3, 3, 1, 1, 4, 2)]
    for word in list(oracles.words(3)) + longer:
        nf = normal_form(word)
        rhs = w ** nf.k * oracles.word_matrix(nf.word(), n)
        assert oracles.matrix_close(oracles.word_matrix(word, n), rhs), word


def test_star_of_normal_form():
    for w in oracles.words(5):
        t = Term(word=w)
        assert normal_form(t.star()) == normal_form(t).star()


def test_unsupported_system():
    with pytest.raises(ParameterError):
        normal_form((1, 2), "REL1")


def test_verify_relation_examples():
    assert verify_relation(parse_relation("x1*x4 = q*x4*x1"))
    assert not verify_relation(parse_relation("x1*x4 = q^-1*x4*x1"))
    assert not verify_relation(parse_relation("x1*x3 = x3*x1"))
    assert verify_relation(parse_relation("x2*x1 = x1*x2"), "EASY")


# -- Lemma 1 -------------------------------------------------------------------


def test_lemma1_report():
    rep = lemma1_check()
    assert rep.ok and rep.forward_ok and rep.converse_ok
    assert len(rep.items) == 8 and set(rep.lines()) == {f"line {i}" for i in range(1, 7)}
    assert all(len(d.steps) - 1 <= 12 for d in rep.items)
    assert all(replay(d) for d in rep.items)


def test_lemma1_x1x4_uses_unit_moves():
    d = lemma1_check().find("x1*x4 = q*x4*x1")
    assert d.status == "derived" and d.uses_multiplication and len(d.steps) - 1 <= 8


def test_lemma1_x4x2_found():
    d = lemma1_check().find("x4*x2 = q*x2*x4")
    assert d is not None and d.status == "derived"


def test_lemma1_inconclusive_under_tight_caps():
    rep = lemma1_check(max_depth=2)
    assert not rep.ok
    assert any(d.status == "inconclusive" for d in rep.items)


def test_replay_rejects_tampering():
    d = lemma1_check().find("x1*x4 = q*x4*x1")
    bad = type(d)(d.target, d.line, d.status, d.steps[:1] + d.steps[2:])
    assert not replay(bad)


def test_lemma1_json_and_text():
    rep = lemma1_check()
    assert '"status": "verified"' in rep.to_json()
    assert rep.to_text().endswith("lemma verified")


# -- REL1 decomposition --------------------------------------------------------


def test_decomposition_rows_shape():
    rep = rel1_decomposition_check()
    fwd = [r for r in rep.rows if r.direction == "forward"]
    conv = [r for r in rep.rows if r.direction == "converse"]
    assert len(fwd) == 6 and len(conv) == 8
    assert all(r.words_match for r in rep.rows)
    # q exponents always cancel; only mu is at stake
    assert all(r.dk == 0 for r in rep.rows)


def test_decomposition_lines_five_six_and_rel0_balance():
    rep = rel1_decomposition_check()
    fwd = [r for r in rep.rows if r.direction == "forward"]
    assert all(r.balanced for r in fwd[4:])
    rel0_rows = rep.rows[-2:]
    assert all(r.balanced for r in rel0_rows)


def test_decomposition_mu_ledger_of_lines_one_to_four():
    # REL1 lines 1-4 carry mu^(+-1) that the substitution cannot cancel:
    # x2 x1 and x4 x3 stay units, so the mu factors survive unchanged
    rep = rel1_decomposition_check()
    fwd = [r for r in rep.rows if r.direction == "forward"]
    assert [r.dm for r in fwd[:4]] == [1, -1, 1, -1]


def test_decomposition_fault_injection():
    faulty = rel1_decomposition_check(mu_exponent=0)
    assert not all(r.balanced for r in faulty.rows[-2:])


# -- involution ----------------------------------------------------------------


@pytest.mark.parametrize("system", [EASY, REL1, REL2, REL0])
def test_involution_systems(system):
    assert involution_check(system)


def test_involution_easy_needs_quotient():
    rep = involution_report(EASY)
    assert not rep.syntactic and rep.quotient


def test_involution_mutated():
    rels = list(REL1.relations)
    r = rels[0]
    rels[0] = Relation(r.lhs, Term(Coefficient(2, 1), r.rhs.word), r.label)
    assert not involution_check(RuleSet("REL1-mutated", tuple(rels)))


def test_star_is_involutive():
    for system in (EASY, REL1, REL2, REL0):
        for r in system:
            assert r.star().star().key() == r.key()


# -- Sklyanin --------------------------------------------------------------------


def test_sklyanin_constraint():
    assert sklyanin_constraint(0, 0, 0)
    assert sklyanin_constraint(1, 1, -1)
    assert not sklyanin_constraint(1, 1, 1)


def test_sklyanin_relations_shape():
    rels = sklyanin_relations("a", "b", "c")
    assert [str(r) for r in rels] == [
        "x1*x2 + -1*x2*x1 = a*x3*x4 + a*x4*x3",
        "x1*x2 + x2*x1 = x3*x4 + -1*x4*x3",
        "x1*x3 + -1*x3*x1 = b*x4*x2 + b*x2*x4",
        "x1*x3 + x3*x1 = x4*x2 + -1*x2*x4",
        "x1*x4 + -1*x4*x1 = c*x2*x3 + c*x3*x2",
        "x1*x4 + x4*x1 = x2*x3 + -1*x3*x2",
    ]


def test_sklyanin_residual():
    # at alpha = beta = gamma = 0 the odd relations say x_i commutes with x1
    rels = sklyanin_relations(0, 0, 0)
    ev = lambda word: 1  # noqa: E731
    assert rels[0].residual(ev) == 0 and rels[2].residual(ev) == 0
