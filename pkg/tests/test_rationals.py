from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilpoisson.rationals import (GaussianRational, MalformedRational, format_rational,
                                  gauss, parse_rational)


def test_multiplication_by_i():
    assert gauss(Fraction(1, 2)) * gauss(0, 1) == gauss(0, Fraction(1, 2))


def test_conjugation():
    assert gauss(0, Fraction(-1, 2)).conjugate() == gauss(0, Fraction(1, 2))


def test_division_verified_by_multiplying_back():
    quotient = gauss(0, Fraction(1, 4)) / gauss(Fraction(-1, 4))
    assert quotient == gauss(0, -1)
    assert gauss(Fraction(-1, 4)) * quotient == gauss(0, Fraction(1, 4))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        gauss(1) / gauss(0)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        GaussianRational(0.5)
    with pytest.raises(TypeError):
        gauss(0, 0.25)


def test_lowest_terms_invariant():
    value = gauss(Fraction(2, 4), Fraction(-3, -6))
    assert value.re == Fraction(1, 2) and value.re.denominator == 2
    assert value.im == Fraction(1, 2) and value.im.denominator == 2


rationals = st.fractions(max_denominator=50)
scalars = st.builds(GaussianRational, rationals, rationals)


@given(scalars, scalars)
def test_roundtrip_mul_div(a, b):
    if not b:
        return
    assert (a * b) / b == a


@given(scalars, scalars)
def test_add_sub_roundtrip(a, b):
    assert (a + b) - b == a


@given(scalars)
def test_conjugation_is_an_involution(a):
    assert a.conjugate().conjugate() == a


@given(scalars, scalars)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(scalars)
def test_json_roundtrip(a):
    assert GaussianRational.from_json(a.to_json()) == a


@pytest.mark.parametrize("text,expected", [
    ("3", Fraction(3)),
    ("-3", Fraction(-3)),
    ("1/2", Fraction(1, 2)),
    ("-7/4", Fraction(-7, 4)),
    ("+2/6", Fraction(1, 3)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", ["1/0", "", "0.5", "1e3", "a/b", "1/-2", "//"])
def test_parse_rational_rejects(bad):
    with pytest.raises(MalformedRational):
        parse_rational(bad)


@given(rationals)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q
