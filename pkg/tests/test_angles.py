from __future__ import annotations

import math
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cyclewalk.angles import Angle, InexactAngleWarning, as_angle, parse_angle
from cyclewalk.errors import InvalidArgumentError


@pytest.mark.parametrize("text, multiple", [
    ("7pi/5", Fraction(7, 5)),
    ("pi/3", Fraction(1, 3)),
    ("pi", Fraction(1)),
    ("2pi", Fraction(0)),
    ("3π/2", Fraction(3, 2)),
    ("-pi/3", Fraction(5, 3)),
    ("0", Fraction(0)),
    ("pi/113", Fraction(1, 113)),
    (" 7 * pi / 5 ", Fraction(7, 5)),
])
def test_parse_rational(text, multiple):
    a = parse_angle(text)
    assert a.multiple == multiple
    assert a.is_exact


def test_seven_fifths_round_trips_text():
    a = parse_angle("7pi/5")
    assert (a.multiple.numerator, a.multiple.denominator) == (7, 5)
    assert str(a) == "7pi/5"


def test_offset_literal():
    a = parse_angle("pi/3+0.01")
    assert a.multiple == Fraction(1, 3)
    assert a.offset == pytest.approx(0.01)
    assert parse_angle(str(a)) == a


def test_decimal_warns_and_keeps_value():
    with pytest.warns(InexactAngleWarning):
        a = parse_angle("1.25")
    assert a.radians == 1.25
    assert not a.is_exact


@pytest.mark.parametrize("bad", ["", "pie", "pi/0", "nan", "inf", "3pi/"])
def test_parse_rejects(bad):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InexactAngleWarning)
        with pytest.raises(InvalidArgumentError):
            parse_angle(bad)


def test_reduction_keeps_rational_part_in_range():
    a = Angle(Fraction(-7, 5))
    assert a.multiple == Fraction(3, 5)
    assert 0 <= a.radians < 2 * math.pi


def test_as_angle_coercions():
    assert as_angle("pi/2") == Angle(Fraction(1, 2))
    assert as_angle(Fraction(1, 2)) == Angle(Fraction(1, 2))
    assert as_angle(0.5).radians == 0.5
    a = Angle.pi_fraction(1, 3)
    assert as_angle(a) is a


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_round_trip_rational(num, den):
    a = Angle(Fraction(num, den))
    again = parse_angle(str(a))
    assert again == a
    assert str(again) == str(a)


@pytest.mark.filterwarnings("ignore::cyclewalk.angles.InexactAngleWarning")
@given(st.integers(0, 50), st.integers(1, 50),
       st.floats(-1, 1, allow_nan=False).filter(lambda x: x != 0))
def test_round_trip_with_offset(num, den, offset):
    a = Angle(Fraction(num, den), offset)
    assert parse_angle(str(a)) == a
