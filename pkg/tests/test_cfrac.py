import random
from fractions import Fraction

import pytest

import oracles
from ectorus.cfrac import (
    ContinuedFraction,
    Matrix2,
    UnimodularMatrix,
    convergents,
    gl2_equivalent,
    palindrome_check,
    parse_cf,
    rational_cf,
    sl2_equivalent,
    sqrt_cf,
    surd_cf,
)
from ectorus.errors import DomainError, ParseError
from ectorus.exactnum import QuadraticSurd, floor, sqrt

GOLDEN = QuadraticSurd(1, 1, 2, 5)


@pytest.mark.parametrize(
    "D, head, period",
    [(19, 4, (2, 1, 3, 1, 2, 8)), (3, 1, (1, 2)), (2, 1, (2,)), (7, 2, (1, 1, 1, 4))],
)
def test_sqrt_cf_examples(D, head, period):
    cf = sqrt_cf(D)
    assert (cf.head, cf.preperiod, cf.period) == (head, (), period)


def test_sqrt_cf_against_float_oracle():
    for D in list(range(2, 200)) + [991, 9999, 10**6 + 3]:
        if int(D**0.5) ** 2 == D:
            continue
        cf = sqrt_cf(D)
        n = 1 + 3 * len(cf.period)
        got = [a for a, _ in zip(cf.terms(), range(n))]
        assert got == oracles.sqrt_cf_float(D, n), D


@pytest.mark.parametrize("D", [0, 1, 4, 49, -3])
def test_sqrt_cf_refuses(D):
    with pytest.raises(DomainError):
        sqrt_cf(D)


def test_surd_cf_golden_ratio():
    cf = surd_cf(GOLDEN)
    assert (cf.head, cf.preperiod, cf.period) == (1, (), (1,))


def test_surd_cf_consistency():
    assert surd_cf(sqrt(3)) == sqrt_cf(3)
    assert str(surd_cf(sqrt(7))) == "[2; (1,1,1,4)]"


def test_surd_cf_generic_against_oracle():
    import mpmath

    rng = random.Random(5)
    for _ in range(40):
        p, q, r, d = rng.randint(-40, 40), rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 12), rng.choice([2, 3, 6, 13, 61])
        x = QuadraticSurd(p, q, r, d)
        cf = surd_cf(x)
        n = len(cf.preperiod) + 2 * len(cf.period) + 1
        with mpmath.workprec(3000):
            v = (p + q * mpmath.sqrt(d)) / r
            ref = []
            for _ in range(n):
                a = int(mpmath.floor(v))
                ref.append(a)
                v = 1 / (v - a)
        assert [a for a, _ in zip(cf.terms(), range(n))] == ref


def test_surd_cf_refuses_imaginary():
    with pytest.raises(DomainError):
        surd_cf(sqrt(-2))


def test_convergents():
    assert convergents(sqrt_cf(2), 3) == [1, Fraction(3, 2), Fraction(7, 5)]
    assert convergents(sqrt_cf(3), 4) == [1, 2, Fraction(5, 3), Fraction(7, 4)]
    assert convergents(ContinuedFraction(2), 1) == [2]


def test_convergents_against_recurrence_oracle():
    cf = sqrt_cf(19)
    terms = [a for a, _ in zip(cf.terms(), range(15))]
    assert convergents(cf, 15) == oracles.convergents_by_recurrence(terms)


def test_rational_cf_round_trip():
    for x in (Fraction(355, 113), Fraction(-7, 3), Fraction(5)):
        cf = rational_cf(x)
        assert convergents(cf, 50)[-1] == x


def test_palindrome_check():
    assert palindrome_check(ContinuedFraction(4, (), (2, 1, 3, 1, 2, 8)))
    assert palindrome_check(ContinuedFraction(1, (), (1, 2)))
    assert not palindrome_check(ContinuedFraction(1, (), (2, 3)))


def test_parse_cf_round_trip():
    for text in ("[4; (2,1,3,1,2,8)]", "[3]", "[0; 1,2, (3)]", "[-2; 5]"):
        assert str(parse_cf(text)) == text.replace(", (", ", (")
    assert parse_cf("[4;(2,1,3,1,2,8)]") == sqrt_cf(19)


def test_parse_cf_error_position():
    with pytest.raises(ParseError) as exc:
        parse_cf("[4; (2,1,x)]")
    assert exc.value.position == 9


def test_sl2_translation():
    w = sl2_equivalent(sqrt(2), 1 + sqrt(2))
    assert w.entries() == (1, 1, 0, 1)


def test_sl2_inequivalent_fields_and_tails():
    assert sl2_equivalent(sqrt(2), sqrt(3)) is None
    assert sl2_equivalent(sqrt(2), sqrt(7)) is None


def test_sl2_constructed():
    rng = random.Random(1)
    x = sqrt(19)
    for _ in range(20):
        while True:
            a, b, c = (rng.randint(-9, 9) for _ in range(3))
            if a and (1 + b * c) % a == 0:
                d = (1 + b * c) // a
                break
        y = Matrix2(a, b, c, d).act(x)
        w = sl2_equivalent(x, y)
        assert isinstance(w, UnimodularMatrix) and w.act(x) == y


def test_sl2_parity_obstruction():
    # sqrt(3) has even period; its negative-determinant image is not SL2-equivalent
    y = Matrix2(0, 1, 1, 0).act(sqrt(3))  # 1/sqrt(3), det -1
    assert gl2_equivalent(sqrt(3), y) is not None
    assert sl2_equivalent(sqrt(3), y) is None


def test_gl2_shifted_tail():
    for x in (sqrt(19), GOLDEN, QuadraticSurd(3, 2, 7, 5)):
        tail = 1 / (x - floor(x))
        w = gl2_equivalent(x, tail)
        assert w is not None and w.act(x) == tail and abs(w.det) == 1


def test_gl2_golden_against_brute_force():
    y = 1 / GOLDEN
    w = gl2_equivalent(GOLDEN, y)
    hits = oracles.brute_sl2(GOLDEN, y, B=5, det=(1, -1))
    assert hits
    assert max(map(abs, w.entries())) == min(max(map(abs, h)) for h in hits)


def test_sl2_witness_minimal_against_brute_force():
    rng = random.Random(11)
    x = sqrt(7)
    for _ in range(4):
        while True:
            a, b, c = (rng.randint(-6, 6) for _ in range(3))
            if a and (1 + b * c) % a == 0:
                d = (1 + b * c) // a
                break
        y = Matrix2(a, b, c, d).act(x)
        w = sl2_equivalent(x, y)
        hits = oracles.brute_sl2(x, y, B=20)
        assert max(map(abs, w.entries())) == min(max(map(abs, h)) for h in hits)


def test_matrix_algebra():
    m = UnimodularMatrix(2, 1, 1, 1)
    assert (m @ m.inverse()).entries() == (1, 0, 0, 1)
    with pytest.raises(DomainError):
        UnimodularMatrix(2, 0, 0, 1)
    with pytest.raises(DomainError):
        Matrix2(2, 0, 0, 1).inverse()
