"""Univariate polynomials with exact rational coefficients.

These carry the bias polynomials s_p (the expected value of a set function
under the p-biased product distribution, as a polynomial in p), so everything
here is exact: evaluation, differentiation and Sturm-sequence real-root
isolation.  Floats never enter the certification path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import format_rational, parse_rational


class ZeroPolynomialError(ValueError):
    """Raised when root isolation is asked about the zero polynomial.

    Distinct from other failures on purpose: for an objective whose derivative
    is identically zero the maximum is attained everywhere, and callers handle
    that case rather than treating it as "no roots".
    """


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Polynomial:
    """Immutable dense polynomial; ``coeffs[i]`` is the coefficient of p**i.

    Trailing zero coefficients are trimmed at construction, so two equal
    polynomials always compare equal.  The zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, p: Fraction) -> Fraction:
        return poly_eval(self, p)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Polynomial([x - y for x, y in zip(a, b)])

    def scale(self, factor: Fraction) -> "Polynomial":
        return Polynomial([c * factor for c in self.coeffs])

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Polynomial":
        return cls([parse_rational(s) for s in data])


# The bias polynomial s_p(f) is just a Polynomial; alias for readability.
BiasPolynomial = Polynomial


def poly_eval(poly: Polynomial, p: Fraction) -> Fraction:
    """Exact Horner evaluation."""
    acc = Fraction(0)
    for c in reversed(poly.coeffs):
        acc = acc * p + c
    return acc


def poly_derivative(poly: Polynomial) -> Polynomial:
    """Exact formal derivative."""
    return Polynomial([i * c for i, c in enumerate(poly.coeffs)][1:])


def _poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    assert not b.is_zero()
    rem = list(a.coeffs)
    bc = b.coeffs
    q = [Fraction(0)] * max(0, len(rem) - len(bc) + 1)
    for i in range(len(rem) - len(bc), -1, -1):
        factor = rem[i + len(bc) - 1] / bc[-1]
        q[i] = factor
        if factor:
            for j, bj in enumerate(bc):
                rem[i + j] -= factor * bj
    return Polynomial(q), Polynomial(rem)


def _monic(poly: Polynomial) -> Polynomial:
    if poly.is_zero():
        return poly
    lead = poly.coeffs[-1]
    return poly if lead == 1 else poly.scale(1 / lead)


def _gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, _poly_divmod(a, b)[1]
        b = _monic(b)  # keeps coefficient growth in check
    return _monic(a)


def square_free_part(poly: Polynomial) -> Polynomial:
    """poly divided by gcd(poly, poly'): same roots, all simple."""
    if poly.degree < 1:
        return poly
    g = _gcd(poly, poly_derivative(poly))
    if g.degree < 1:
        return poly
    return _poly_divmod(poly, g)[0]


def _sturm_sequence(poly: Polynomial) -> list[Polynomial]:
    seq = [poly, poly_derivative(poly)]
    while not seq[-1].is_zero():
        rem = _poly_divmod(seq[-2], seq[-1])[1]
        rem = -rem
        if not rem.is_zero():
            # normalize by a positive scalar only: sign patterns must survive
            rem = rem.scale(1 / abs(rem.coeffs[-1]))
        seq.append(rem)
    seq.pop()
    return seq


def _sign_variations(seq: list[Polynomial], p: Fraction) -> int:
    signs = []
    for q in seq:
        v = poly_eval(q, p)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class RootInterval:
    """Certified isolating interval: exactly one root of the (square-free part
    of the) polynomial lies in the open interval (lo, hi).

    ``sign_change`` describes the crossing of the square-free part, which is
    guaranteed to flip sign across a simple root: "down-up" for - to +,
    "up-down" for + to -.  (The original polynomial itself does not change
    sign across even-multiplicity roots, which is why the square-free part is
    the reference.)
    """

    lo: Fraction
    hi: Fraction
    sign_change: str

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")
        if self.sign_change not in ("down-up", "up-down"):
            raise ValueError(f"bad sign_change {self.sign_change!r}")

    def contains(self, p: Fraction) -> bool:
        return self.lo < p < self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo


def isolate_real_roots(
    poly: Polynomial,
    interval: tuple[Fraction, Fraction],
    tol: Fraction,
) -> list[RootInterval]:
    """Isolate every real root of `poly` within the closed interval.

    Returns disjoint intervals of width <= tol, each containing exactly one
    root (roots sitting exactly on the requested endpoints are enclosed by an
    interval that may extend slightly outside).  Fully exact: counting uses
    Sturm's theorem on the square-free part, refinement is bisection.

    Raises ZeroPolynomialError for the identically-zero polynomial, and
    ValueError for an empty interval or non-positive tolerance.
    """
    a, b = Fraction(interval[0]), Fraction(interval[1])
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a >= b:
        raise ValueError("need interval[0] < interval[1]")
    if poly.is_zero():
        raise ZeroPolynomialError(
            "zero polynomial: every point is a root (maximum attained everywhere)")

    q = square_free_part(poly)
    if q.degree < 1:
        return []
    seq = _sturm_sequence(q)

    def qval(p: Fraction) -> Fraction:
        return poly_eval(q, p)

    def count(lo: Fraction, hi: Fraction) -> int:
        # number of roots of q in the half-open interval (lo, hi]
        return _sign_variations(seq, lo) - _sign_variations(seq, hi)

    out: list[RootInterval] = []

    def emit(lo: Fraction, hi: Fraction) -> None:
        # endpoints are non-roots, exactly one root strictly inside
        out.append(RootInterval(lo, hi, "down-up" if qval(lo) < 0 else "up-down"))

    def enclose_exact(root: Fraction, cap: Fraction) -> tuple[Fraction, Fraction]:
        # tight interval around an exactly-hit rational root; radius halving
        # always terminates because q has finitely many roots
        r = cap
        while (qval(root - r) == 0 or qval(root + r) == 0
               or count(root - r, root + r) != 1):
            r /= 2
        emit(root - r, root + r)
        return root - r, root + r

    def refine(lo: Fraction, hi: Fraction) -> None:
        # invariant: q(lo) != 0
        c = count(lo, hi)
        if c == 0:
            return
        if c == 1:
            while True:
                if qval(hi) == 0:  # the single root is exactly hi
                    enclose_exact(hi, min(tol, hi - lo) / 4)
                    return
                if hi - lo <= tol:
                    emit(lo, hi)
                    return
                mid = (lo + hi) / 2
                if qval(mid) == 0:  # the single root is exactly mid
                    enclose_exact(mid, min(tol, hi - lo) / 4)
                    return
                if count(lo, mid) == 1:
                    hi = mid
                else:
                    lo = mid
            return
        mid = (lo + hi) / 2
        if qval(mid) == 0:
            _, enc_hi = enclose_exact(mid, min(tol, (hi - lo) / 2) / 4)
            enc_lo = 2 * mid - enc_hi
            refine(lo, enc_lo)
            refine(enc_hi, hi)
        else:
            refine(lo, mid)
            refine(mid, hi)

    # roots exactly at the requested endpoints fall outside (a, b], so both
    # endpoints get explicit enclosures (which may poke slightly past [a, b])
    lo, hi = a, b
    cap = min(tol, b - a) / 4
    if qval(a) == 0:
        lo = enclose_exact(a, cap)[1]
    if qval(b) == 0:
        hi = enclose_exact(b, cap)[0]
    if lo < hi:
        refine(lo, hi)

    # exact-root enclosures may poke into a sibling subinterval's root-free
    # margin; clip such overlaps (the clipped endpoint is never a root)
    out.sort(key=lambda r: (r.lo, r.hi))
    clipped: list[RootInterval] = []
    for r in out:
        if clipped and r.lo < clipped[-1].hi:
            start = clipped[-1].hi
            r = RootInterval(start, r.hi,
                             "down-up" if qval(start) < 0 else "up-down")
        clipped.append(r)
    return clipped
