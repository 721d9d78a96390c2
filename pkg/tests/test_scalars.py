import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twoport.scalars import (
    FieldMismatchError,
    Scalar,
    ScalarParseError,
    field,
    get_field,
    parse_scalar,
    sqrt_d,
    to_scalar,
)

R2 = sqrt_d()

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)
scalars = st.builds(Scalar, fracs, fracs)
nonzero = scalars.filter(lambda x: not x.is_zero())


def test_examples():
    assert (1 + R2) * (1 - R2) == Scalar(-1)
    assert 1 / (1 + R2) == -1 + R2
    assert (1 / (1 + R2)) * (1 + R2) == 1
    assert (10 - 2 * R2) - (8 - 5 * R2) == 2 + 3 * R2


def test_sign_examples():
    assert (10 - 2 * R2).sign() == 1
    assert Scalar(0).sign() == 0
    assert (1 - R2).sign() == -1
    assert (Scalar(Fraction(99, 70)) - R2).sign() == 1  # 99/70 is just above sqrt(2)
    assert (Scalar(Fraction(140, 99)) - R2).sign() == -1


def test_is_rational_examples():
    assert Scalar(4).is_rational()
    assert not (1 + R2).is_rational()
    assert ((1 + R2) / (1 + R2)).is_rational()


def test_lowest_terms():
    x = Scalar(Fraction(4, -6), Fraction(10, 20))
    assert (x.a, x.b) == (Fraction(-2, 3), Fraction(1, 2))
    assert x.a.denominator > 0


@given(scalars, scalars, scalars)
def test_ring_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == 0


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == 1
    assert (x / x).is_rational()


@given(scalars, scalars)
def test_sign_multiplicative(x, y):
    assert (x * y).sign() == x.sign() * y.sign()


@given(scalars)
def test_sign_matches_float(x):
    # independent oracle: floating-point evaluation, only where it is unambiguous
    approx = float(x.a) + float(x.b) * math.sqrt(2)
    if abs(approx) > 1e-9:
        assert x.sign() == (1 if approx > 0 else -1)


@given(scalars)
def test_text_round_trip(x):
    assert parse_scalar(str(x)) == x


@pytest.mark.parametrize("text,expected", [
    ("3/2", Scalar(Fraction(3, 2))),
    ("-sqrt(2)", -R2),
    ("10 - 2*sqrt(2)", 10 - 2 * R2),
    (" 1/2 * sqrt( 2 ) + 3 ", 3 + R2 / 2),
    ("0", Scalar(0)),
])
def test_parse(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("text", ["1.5", "1e3", "", "2 3", "sqrt(2) sqrt(2)", "x", "1/"])
def test_parse_rejects(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text)


def test_parse_wrong_root():
    with pytest.raises(FieldMismatchError):
        parse_scalar("sqrt(3)")


def test_to_scalar_rejects_float():
    with pytest.raises(TypeError):
        to_scalar(0.5)
    assert to_scalar(Fraction(1, 3)) == Scalar(Fraction(1, 3))


def test_field_context():
    assert get_field() == 2
    with field(3):
        r3 = sqrt_d()
        assert r3 * r3 == 3
        assert parse_scalar("1 + sqrt(3)") == 1 + r3
        with pytest.raises(FieldMismatchError):
            r3 + R2
    assert get_field() == 2


def test_mixing_fields_rejected_even_for_rationals():
    with pytest.raises(FieldMismatchError):
        Scalar(1, 0, 2) + Scalar(1, 0, 3)


def test_rational_mode():
    with field(0):
        assert Scalar(Fraction(1, 2)) * 2 == 1
        with pytest.raises(FieldMismatchError):
            Scalar(0, 1)
        with pytest.raises(FieldMismatchError):
            sqrt_d()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


def test_ordering():
    assert 1 < R2 < Scalar(Fraction(3, 2))
    assert sorted([R2, Scalar(1), -R2]) == [-R2, Scalar(1), R2]
    assert abs(1 - R2) == R2 - 1
