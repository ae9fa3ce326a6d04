"""Exact rational values and their wire format.

A rational is a stdlib :class:`fractions.Fraction`; construction already
enforces the canonical form (positive denominator, lowest terms), so equality
is plain ``==`` everywhere in this package.  On the wire every rational is the
string ``"num/den"`` in lowest terms, ``"0/1"`` for zero.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def format_rational(value: Fraction) -> str:
    """Render `value` as the canonical "num/den" string."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" (or a bare integer / decimal literal) exactly."""
    return Fraction(text.strip())


def decimal_ceil_str(value: Fraction, digits: int = 4) -> str:
    """Smallest `digits`-place decimal >= value; for rendering upper bounds."""
    f = Fraction(value)
    scaled = -((-f.numerator * 10**digits) // f.denominator)  # ceil
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def decimal_str(value: Fraction, digits: int = 9) -> str:
    """Fixed-point decimal rendering (round half to even), for display only."""
    f = Fraction(value)
    sign = "-" if f < 0 else ""
    n, d = abs(f.numerator), f.denominator
    scaled, rem = divmod(n * 10**digits, d)
    if 2 * rem > d or (2 * rem == d and scaled % 2 == 1):
        scaled += 1
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"
