from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qpfaff.errors import DomainError, ParseError, ZeroBase
from qpfaff.scalar import (
    ONE,
    Q,
    Q_INV,
    ZERO,
    LaurentScalar,
    as_q_power,
    eval_at,
    format_compact,
    format_scalar,
    parse_scalar,
    q_binomial,
    q_factorial,
    q_integer,
)

coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=4)
scalars = st.dictionaries(st.integers(-3, 3), coeffs, max_size=4).map(LaurentScalar)
points = st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda x: x != 0)


def to_sympy(a: LaurentScalar):
    q = sympy.Symbol("q")
    return sum((sympy.Rational(c.numerator, c.denominator) * q**k for k, c in a.items()), sympy.Integer(0))


def test_zero_is_empty_and_no_zero_coefficients():
    assert ZERO.terms == {}
    assert LaurentScalar({2: 0, 1: 3}).terms == {1: Fraction(3)}
    assert (Q - Q).terms == {}


def test_examples_mul():
    assert (Q - Q_INV) * (Q + Q_INV) == LaurentScalar({2: 1, -2: -1})
    assert LaurentScalar({3: 1}) * LaurentScalar({-3: 1}) == ONE
    assert ZERO * (Q + 5) == ZERO


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * ONE == a and a + ZERO == a
    assert a - a == ZERO


def test_ring_axioms_exhaustive_monomials():
    mons = [LaurentScalar({k: c}) for k in range(-3, 4) for c in range(-2, 3)]
    for a, b in product(mons, repeat=2):
        assert a * b == b * a
        assert a + b == b + a
        assert (a + b) * Q == a * Q + b * Q


@given(scalars, scalars, points)
def test_eval_is_a_homomorphism(a, b, x):
    assert eval_at(a * b, x) == eval_at(a, x) * eval_at(b, x)
    assert eval_at(a + b, x) == eval_at(a, x) + eval_at(b, x)


@given(scalars, points)
def test_eval_matches_sympy(a, x):
    expected = to_sympy(a).subs(sympy.Symbol("q"), sympy.Rational(x.numerator, x.denominator))
    assert eval_at(a, x) == Fraction(int(sympy.fraction(expected)[0]), int(sympy.fraction(expected)[1]))


def test_eval_examples():
    assert eval_at(1 - Q**2, 1) == 0
    assert eval_at(Q**2, 2) == 4
    assert eval_at(q_integer(3), 1) == 3
    assert eval_at(Q_INV, Fraction(1, 2)) == 2


def test_eval_at_zero():
    assert eval_at(Q + 3, 0) == 3
    with pytest.raises(ZeroBase):
        eval_at(Q_INV, 0)


def test_as_q_power():
    assert as_q_power(LaurentScalar({2: -1})) == (-1, 2)
    assert as_q_power(ONE) == (1, 0)
    assert as_q_power(Q + 1) is None
    assert as_q_power(ZERO) is None


def test_inverse_and_divexact():
    assert LaurentScalar({3: Fraction(2)}).inverse() == LaurentScalar({-3: Fraction(1, 2)})
    with pytest.raises((DomainError, ZeroDivisionError)):
        (Q + 1).inverse()
    assert (Q * Q - 1).divexact(Q - 1) == Q + 1
    assert (Q * Q + 1).divexact(Q - 1) is None


@given(scalars, scalars)
def test_divexact_recovers_factor(a, b):
    if not b:
        return
    assert (a * b).divexact(b) == a


def test_q_integer_examples():
    assert q_integer(0) == ZERO
    assert q_integer(1) == ONE
    assert q_integer(3) == 1 + Q + Q**2


@pytest.mark.parametrize("n", range(0, 9))
def test_q_integer_classical_limit(n):
    assert eval_at(q_integer(n), 1) == n


@pytest.mark.parametrize("n", range(0, 8))
def test_q_factorial_classical_limit(n):
    from math import factorial

    assert eval_at(q_factorial(n), 1) == factorial(n)


def _binomial_by_division(n, k):
    q = sympy.Symbol("q")

    def fact(m):
        out = sympy.Integer(1)
        for i in range(1, m + 1):
            out *= sum(q**j for j in range(i))
        return out

    quo, rem = sympy.div(sympy.expand(fact(n)), sympy.expand(fact(k) * fact(n - k)), q)
    assert rem == 0
    poly = sympy.Poly(quo, q)
    return LaurentScalar({m[0]: Fraction(int(c)) for m, c in poly.terms()})


@pytest.mark.parametrize("n,k", [(n, k) for n in range(0, 9) for k in range(0, n + 1)])
def test_q_binomial_matches_division_oracle(n, k):
    b = q_binomial(n, k)
    assert b == _binomial_by_division(n, k)
    assert all(c > 0 and c.denominator == 1 for _, c in b.items())
    assert b.max_exponent() == k * (n - k)


def test_q_binomial_example_and_errors():
    assert q_binomial(4, 2) == LaurentScalar({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
    with pytest.raises(DomainError):
        q_binomial(2, 3)


def test_format_canonical():
    a = LaurentScalar({-1: -1, 0: 2, 2: 3})
    assert format_scalar(a) == "-1*q^-1 + 2 + 3*q^2"
    assert format_scalar(ZERO) == "0"
    assert format_compact(Q - Q_INV) == "q - q^-1"


@pytest.mark.parametrize(
    "text,expected",
    [
        ("-1*q^-1 + 2 + 3*q^2", LaurentScalar({-1: -1, 0: 2, 2: 3})),
        ("q - q^-1", Q - Q_INV),
        ("(q - q^-1)", Q - Q_INV),
        ("1/2*q^3", LaurentScalar({3: Fraction(1, 2)})),
        ("0", ZERO),
        ("-q", LaurentScalar({1: -1})),
    ],
)
def test_parse(text, expected):
    assert parse_scalar(text) == expected


@given(scalars)
def test_text_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a
    assert parse_scalar(format_compact(a)) == a


@pytest.mark.parametrize("bad", ["", "q^", "2**q", "x + 1", "q^1.5"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_hash_consistent_with_eq():
    assert hash(LaurentScalar({1: 2})) == hash(LaurentScalar({1: Fraction(4, 2)}))
    assert len({Q, LaurentScalar({1: 1}), ONE}) == 2


@settings(max_examples=50)
@given(scalars, st.integers(0, 4))
def test_pow(a, e):
    out = ONE
    for _ in range(e):
        out = out * a
    assert a**e == out
