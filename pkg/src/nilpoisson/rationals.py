"""Exact scalars over the Gaussian rationals Q(i).

Every coefficient in this package is a :class:`GaussianRational`: a complex
number ``a + b*i`` whose real and imaginary parts are arbitrary-precision
``fractions.Fraction`` values.  There is no floating point anywhere; a scalar
is zero iff both numerators are zero, and equality is exact structural
equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")

Rationalish = Union[int, Fraction]


class MalformedRational(ValueError):
    """A rational string is not of the form ``p`` or ``p/q`` with q > 0."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into an exact Fraction.

    Anything else (decimals, empty strings, zero denominators) raises
    :class:`MalformedRational`.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise MalformedRational(f"not a rational 'p' or 'p/q' string: {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise MalformedRational(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``p`` or ``p/q`` (lowest terms, q > 0)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class GaussianRational:
    """An element ``re + im*i`` of Q(i).

    Instances are immutable by convention and hashable, so they can serve as
    matrix entries and memoization keys.  ``Fraction`` keeps both components
    in lowest terms with positive denominator.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rationalish = 0, im: Rationalish = 0):
        # floats are rejected, not converted: Fraction(0.1) would silently
        # smuggle the binary expansion into an exact computation
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("GaussianRational components must be int or Fraction, not float")
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_strings(cls, re: str, im: str = "0") -> "GaussianRational":
        return cls(parse_rational(re), parse_rational(im))

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if not isinstance(obj, dict) or set(obj) - {"re", "im"}:
            raise MalformedRational(f"expected {{'re': ..., 'im': ...}}, got {obj!r}")
        return cls.from_strings(str(obj.get("re", "0")), str(obj.get("im", "0")))

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    # -- predicates ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self

    # -- field arithmetic ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparison, hashing, display -----------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def sort_key(self):
        """Deterministic total order, used only for canonical serialization."""
        return (self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator)

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return _format_imaginary(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{_format_imaginary(abs(self.im)).lstrip('+')}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _format_imaginary(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    if im.denominator == 1:
        return f"{im.numerator}i"
    return f"{im.numerator}i/{im.denominator}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gauss(re: Rationalish = 0, im: Rationalish = 0) -> GaussianRational:
    """Shorthand constructor; accepts ints and Fractions."""
    return GaussianRational(re, im)
