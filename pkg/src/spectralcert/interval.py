"""Closed intervals with exact rational endpoints and outward rounding.

Arithmetic is carried out exactly on :class:`fractions.Fraction` endpoints and
the result is then rounded outward to dyadic rationals with ``prec``
significant bits.  The enclosure property therefore never depends on
floating-point behaviour.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

DEFAULT_PREC = 256

Number = Union[int, Fraction, "Interval"]


def round_down(q: Fraction, prec: int = DEFAULT_PREC) -> Fraction:
    """Largest dyadic with ``prec`` significant bits that is <= q."""
    num, den = q.numerator, q.denominator
    if num == 0 or (den & (den - 1) == 0 and abs(num).bit_length() <= prec):
        return q
    shift = prec - (abs(num).bit_length() - den.bit_length())
    if shift >= 0:
        return Fraction((num << shift) // den, 1 << shift)
    return Fraction((num // (den << -shift)) << -shift)


def round_up(q: Fraction, prec: int = DEFAULT_PREC) -> Fraction:
    return -round_down(-q, prec)


def sqrt_down(q: Fraction, prec: int = DEFAULT_PREC) -> Fraction:
    if q < 0:
        raise ValueError("square root of a negative number")
    if q == 0:
        return Fraction(0)
    # scale so the integer square root carries about prec bits
    k = max(0, prec - (q.numerator.bit_length() - q.denominator.bit_length()) // 2 + 2)
    r = math.isqrt((q.numerator << (2 * k)) // q.denominator)
    return Fraction(r, 1 << k)


def sqrt_up(q: Fraction, prec: int = DEFAULT_PREC) -> Fraction:
    lo = sqrt_down(q, prec)
    if lo * lo == q:
        return lo
    k = max(0, prec - (q.numerator.bit_length() - q.denominator.bit_length()) // 2 + 2)
    return lo + Fraction(1, 1 << k)


def iroot_bounds(q: Fraction, k: int, prec: int = DEFAULT_PREC) -> tuple[Fraction, Fraction]:
    """Dyadic bounds ``lo <= q**(1/k) <= hi`` for ``q >= 0``."""
    if q < 0 or k < 1:
        raise ValueError("iroot needs q >= 0 and k >= 1")
    if q == 0:
        return Fraction(0), Fraction(0)
    e = max(0, prec - (q.numerator.bit_length() - q.denominator.bit_length()) // k + 2)
    target = (q.numerator << (k * e)) // q.denominator
    r = _iroot_floor(target, k)
    lo = Fraction(r, 1 << e)
    hi = lo if lo ** k == q else Fraction(r + 1, 1 << e)
    return lo, hi


def _iroot_floor(x: int, k: int) -> int:
    if x < 2:
        return x
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite endpoint")
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _as_fraction(self.lo))
        object.__setattr__(self, "hi", _as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> Interval:
        x = _as_fraction(x)
        return cls(x, x)

    @classmethod
    def coerce(cls, x) -> Interval:
        return x if isinstance(x, Interval) else cls.point(x)

    # -- properties ----------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = _as_fraction(x)
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def rounded(self, prec: int = DEFAULT_PREC) -> Interval:
        return Interval(round_down(self.lo, prec), round_up(self.hi, prec))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: Number) -> Interval:
        o = Interval.coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi).rounded()

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: Number) -> Interval:
        return self + (-Interval.coerce(other))

    def __rsub__(self, other: Number) -> Interval:
        return Interval.coerce(other) - self

    def __mul__(self, other: Number) -> Interval:
        o = Interval.coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps)).rounded()

    __rmul__ = __mul__

    def reciprocal(self) -> Interval:
        if self.contains_zero():
            raise ZeroDivisionError("interval reciprocal across zero")
        return Interval(1 / self.hi, 1 / self.lo).rounded()

    def __truediv__(self, other: Number) -> Interval:
        return self * Interval.coerce(other).reciprocal()

    def __rtruediv__(self, other: Number) -> Interval:
        return Interval.coerce(other) * self.reciprocal()

    def __pow__(self, k: int) -> Interval:
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return (self ** -k).reciprocal()
        if k == 0:
            return Interval.point(1)
        a, b = self.lo ** k, self.hi ** k
        if k % 2 == 1 or self.lo >= 0:
            return Interval(a, b).rounded()
        if self.hi <= 0:
            return Interval(b, a).rounded()
        return Interval(Fraction(0), max(a, b)).rounded()

    def sqrt(self) -> Interval:
        if self.lo < 0:
            raise ValueError("square root of an interval with negative part")
        return Interval(sqrt_down(self.lo), sqrt_up(self.hi))

    def abs(self) -> Interval:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def hull(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    # -- rendering -----------------------------------------------------

    def to_strings(self, digits: int = 20) -> tuple[str, str]:
        return decimal_string(self.lo, digits, "down"), decimal_string(self.hi, digits, "up")

    def __str__(self) -> str:
        lo, hi = self.to_strings(12)
        return f"[{lo}, {hi}]"

    def __float__(self) -> float:
        return float(self.mid)


def decimal_string(q: Fraction, digits: int = 20, direction: str = "down") -> str:
    """Decimal rendering of ``q`` with ``digits`` significant digits, rounded
    toward -inf (``down``) or +inf (``up``)."""
    q = _as_fraction(q)
    rounding = decimal.ROUND_FLOOR if direction == "down" else decimal.ROUND_CEILING
    ctx = decimal.Context(prec=digits, rounding=rounding)
    value = ctx.divide(decimal.Decimal(q.numerator), decimal.Decimal(q.denominator))
    return format(value, "e") if value != 0 else "0"


def parse_decimal(text: str) -> Fraction:
    return Fraction(decimal.Decimal(text))
