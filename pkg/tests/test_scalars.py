from fractions import Fraction

import pytest

from vertexscreen.scalars import (QQ, RationalFunctionField, p_gcd,
                                  p_linear_factors, p_mul, p_rational_roots)


@pytest.fixture
def F():
    return RationalFunctionField("k")


def test_field_is_cached_per_symbol():
    assert RationalFunctionField("k") is RationalFunctionField("k")
    assert RationalFunctionField("k") is not RationalFunctionField("s")


def test_reduction_is_canonical(F):
    k = F.gen
    x = (k * k - 1) / (k - 1)
    assert x == k + 1
    y = (k + 1) / (2 * k + 2)
    assert y == F.lift(Fraction(1, 2))
    assert str((k + 2) / (k + 3)) == "(k+2)/(k+3)"


def test_arithmetic_exact(F):
    k = F.gen
    a = (k + 1) / (k + 2)
    b = (k - 1) / (k + 2)
    assert a + b == (2 * k) / (k + 2)
    assert a - b == 2 / (k + 2)
    assert a * b == (k * k - 1) / ((k + 2) * (k + 2))
    assert (a / b) * b == a
    assert -(a - a) == F.zero
    assert not (a - a)


def test_hash_consistency(F):
    k = F.gen
    assert hash((k + 1) / (k + 1)) == hash(F.one)
    d = {k + 1: "x"}
    assert d[(k * k - 1) / (k - 1)] == "x"


def test_evaluate_and_denominator_roots(F):
    k = F.gen
    x = (k + 1) / ((k + 2) * (2 * k - 3))
    assert x.evaluate(Fraction(0)) == Fraction(1, -6)
    assert x.denominator_roots() == {Fraction(-2), Fraction(3, 2)}
    assert x.denominator_labels() == {"k+2", "2*k-3"}
    with pytest.raises(ZeroDivisionError):
        x.evaluate(Fraction(-2))


def test_poly_gcd_and_roots():
    a = p_mul((1, 1), (2, 1))      # (x+1)(x+2)
    b = p_mul((1, 1), (-3, 1))     # (x+1)(x-3)
    assert p_gcd(a, b) == (1, 1)
    assert p_rational_roots(a) == {Fraction(-1), Fraction(-2)}
    factors, residual = p_linear_factors(p_mul(a, (1, 0, 1)))
    assert sorted(factors) == [(1, 1), (2, 1)]
    assert residual == (1, 0, 1)


def test_parse_round_trip(F):
    k = F.gen
    for x in (k, (k + 2) / (3 * k - 1), F.lift(Fraction(-7, 3)),
              (k * k + 4) / (k + 1)):
        assert F.parse(str(x)) == x
    assert F.parse("(k+1)^2/(k-1)") == (k + 1) * (k + 1) / (k - 1)
    assert QQ.lift(Fraction(3, 4)) == Fraction(3, 4)


def test_division_by_zero(F):
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero
