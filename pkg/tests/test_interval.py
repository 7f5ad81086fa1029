import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectralcert.interval import (Interval, decimal_string, iroot_bounds, parse_decimal,
                                   sqrt_down, sqrt_up)

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


@st.composite
def intervals(draw):
    a, b = draw(fractions), draw(fractions)
    return Interval(min(a, b), max(a, b))


@settings(max_examples=200, deadline=None)
@given(intervals(), intervals(), fractions, fractions)
def test_arithmetic_encloses(x, y, p, q):
    p = x.lo + (x.hi - x.lo) * ((p % 1) if p >= 0 else 0)
    q = y.lo + (y.hi - y.lo) * ((q % 1) if q >= 0 else 0)
    assert (x + y).contains(p + q)
    assert (x - y).contains(p - q)
    assert (x * y).contains(p * q)
    if not y.contains_zero():
        assert (x / y).contains(p / q)


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**6))
def test_sqrt_brackets(q):
    lo, hi = sqrt_down(q), sqrt_up(q)
    assert lo * lo <= q <= hi * hi
    assert hi - lo < Fraction(1, 10**30) * (1 + hi)


def test_iroot_bounds():
    lo, hi = iroot_bounds(Fraction(100), 5)
    assert lo ** 5 <= 100 <= hi ** 5
    assert abs(float(lo) - 100 ** 0.2) < 1e-12


def test_directed_decimals():
    third = Interval(Fraction(1, 3), Fraction(2, 3))
    lo, hi = third.to_strings(5)
    assert parse_decimal(lo) <= Fraction(1, 3) and parse_decimal(hi) >= Fraction(2, 3)
    assert decimal_string(Fraction(-1, 3), 3, "down") == "-3.34e-1"
    assert decimal_string(Fraction(0), 3) == "0"


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        Interval(1, 0)


def test_reciprocal_of_zero_straddling():
    with pytest.raises(ZeroDivisionError):
        Interval(-1, 1).reciprocal()


def test_sqrt_interval():
    r = Interval(2, 3).sqrt()
    assert r.lo <= math.sqrt(2) and r.hi >= math.sqrt(3)
