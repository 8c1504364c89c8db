from fractions import Fraction

import mpmath
import pytest

from ectorus.cfrac import parse_cf, sqrt_cf
from ectorus.errors import (
    DegenerateError,
    NotInDomainError,
    OutOfScopeError,
    ParameterError,
    ParseError,
    RefusalError,
)
from ectorus.exactnum import QuadraticSurd, sqrt
from ectorus.nctori import (
    DEFAULT_EVALUATOR,
    EVALUATORS,
    RankRecord,
    TorusDescriptor,
    arithmetic_complexity,
    functor_F,
    golden_table,
    is_prime,
    morita_equivalent,
    rank_from_complexity,
    register_evaluator,
    rm_discriminant,
    verify_reconciliation,
)


def test_rm_discriminant():
    assert rm_discriminant(sqrt(7)) == 7
    assert rm_discriminant(QuadraticSurd(3, 2, 4, 5)) == 5
    assert rm_discriminant(0.5) is None
    with pytest.raises(DegenerateError):
        rm_discriminant(Fraction(22, 7))


def test_morita_translation_and_inversion():
    t = sqrt(7)
    v = morita_equivalent(t, t + 1)
    assert v and v.witness.entries() == (1, 1, 0, 1)
    v = morita_equivalent(t, -1 / t)
    assert v and v.witness.entries() == (0, -1, 1, 0)


def test_morita_false_and_refusals():
    assert not morita_equivalent(sqrt(2), sqrt(7))
    with pytest.raises(RefusalError):
        morita_equivalent(1.4142, sqrt(2))
    with pytest.raises(DegenerateError):
        morita_equivalent(Fraction(1, 2), sqrt(2))


def test_morita_accepts_descriptors():
    assert morita_equivalent(TorusDescriptor(sqrt(3)), TorusDescriptor(sqrt(3) + 5))


def test_functor_F():
    assert functor_F(sqrt(-7)).theta == sqrt(7)
    assert functor_F(sqrt(-3)).theta == sqrt(3)
    with pytest.raises(NotInDomainError):
        functor_F(mpmath.mpc(0.1, 2))
    with pytest.raises(NotInDomainError):
        functor_F(sqrt(-1))


def test_is_prime_against_sieve():
    N = 5000
    sieve = [True] * N
    sieve[0] = sieve[1] = False
    for i in range(2, N):
        if sieve[i]:
            for j in range(i * i, N, i):
                sieve[j] = False
    assert [n for n in range(N) if is_prime(n)] == [n for n in range(N) if sieve[n]]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


@pytest.mark.parametrize("D, c, ell", [(3, 2, 2), (31, 1, 8), (67, 2, 10)])
def test_complexity_examples(D, c, ell):
    rep = arithmetic_complexity(D)
    assert rep.complexity == c and rep.period_length == ell and rep.validated


def test_complexity_flags():
    rep = arithmetic_complexity(13)  # odd period, 13 = 1 mod 4
    assert not rep.validated and len(rep.notes) == 2
    with pytest.raises(ParameterError):
        arithmetic_complexity(7, "nope")
    with pytest.raises(Exception):
        arithmetic_complexity(16)


def test_register_evaluator():
    register_evaluator("ell-over-2", lambda period: max(1, len(period) // 2))
    try:
        rep = arithmetic_complexity(19, "ell-over-2")
        assert rep.complexity == 3 and not rep.validated
        assert verify_reconciliation(evaluator="ell-over-2").passed < 13
    finally:
        del EVALUATORS["ell-over-2"]


@pytest.mark.parametrize("D, rank", [(43, 1), (79, 0), (11, 1)])
def test_rank_examples(D, rank):
    assert rank_from_complexity(D) == rank


@pytest.mark.parametrize("D", [5, 21, 15, 2])
def test_rank_out_of_scope(D):
    with pytest.raises(OutOfScopeError):
        rank_from_complexity(D)


def test_golden_table_rows():
    rows = {r.D: r for r in golden_table()}
    assert len(rows) == 13
    assert rows[59].rank == 1 and str(rows[59].cf) == "[7; (1,2,7,2,1,14)]" and rows[59].complexity == 2
    assert rows[47].rank == 0 and str(rows[47].cf) == "[6; (1,5,1,12)]" and rows[47].complexity == 1


def test_reconciliation_full():
    rep = verify_reconciliation()
    assert rep.ok and rep.summary() == "13/13 rows pass"
    assert {r.D: r for r in rep.rows}[83].computed_cf == "[9; (9,18)]"


def test_reconciliation_tampered():
    table = [RankRecord(r.D, 1 if r.D == 7 else r.rank, r.cf, r.complexity) for r in golden_table()]
    rep = verify_reconciliation(table)
    assert rep.passed == 12
    bad = [r for r in rep.rows if not r.ok]
    assert [r.D for r in bad] == [7] and not bad[0].rank_ok


def test_reconciliation_tampered_cf():
    table = [
        RankRecord(r.D, r.rank, parse_cf("[4; (2,1,3,1,2,9)]") if r.D == 19 else r.cf, r.complexity)
        for r in golden_table()
    ]
    rep = verify_reconciliation(table)
    assert rep.passed == 12 and not {r.D: r for r in rep.rows}[19].cf_ok


def test_table_file_override(tmp_path):
    f = tmp_path / "t.txt"
    f.write_text("# D\trank\tcf\tc\n3\t1\t[1; (1,2)]\t2\n7\t0\t[2; (1,1,1,4)]\t1\n")
    assert [r.D for r in golden_table(str(f))] == [3, 7]
    f.write_text("3\t1\t[1; (1,2)]\n")
    with pytest.raises(ParseError):
        golden_table(str(f))


def test_report_renderings():
    rep = verify_reconciliation()
    md = rep.to_markdown()
    assert md.splitlines()[0] == "| D | rank | continued fraction of sqrt(D) | c | check |"
    assert "| 19 | 1 | [4; (2,1,3,1,2,8)] | 2 | pass |" in md
    assert '"passed": 13' in rep.to_json()


def test_torus_descriptor():
    assert TorusDescriptor(Fraction(1, 3)).degenerate
    assert not TorusDescriptor(0.3).is_exact
