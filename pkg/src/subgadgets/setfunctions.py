"""Dense set functions on the boolean hypercube {0,1}^k.

A point is an integer bitmask in [0, 2**k): bit i (with bit 0 the least
significant) records membership of coordinate i.  All JSON/CSV serialization
uses this order.  Values are exact rationals and every operation here is
exact; floats appear only in user-facing display code elsewhere.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import kernels
from .polynomials import BiasPolynomial, Polynomial
from .rational import format_rational, parse_rational

MAX_ARITY = 20  # dense 2**k storage stays trivially verifiable up to here


@dataclass(frozen=True)
class SubmodularityViolation:
    """A triple (S, i, j) violating the local pair condition.

    slack = f(S) - f(S+i) - f(S+j) + f(S+i+j) > 0, i.e. the amount by which
    the inequality fails.  i and j are 0-based coordinates not in S.
    """

    base: int
    i: int
    j: int
    slack: Fraction


class SetFunction:
    """Immutable dense table of 2**k nonnegative rational values."""

    __slots__ = ("k", "values")

    def __init__(self, k: int, values: Sequence[Fraction]):
        if not 1 <= k <= MAX_ARITY:
            raise ValueError(f"arity must be in [1, {MAX_ARITY}], got {k}")
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != 1 << k:
            raise ValueError(f"need {1 << k} values for k={k}, got {len(vals)}")
        if any(v < 0 for v in vals):
            raise ValueError("set-function values must be nonnegative")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("SetFunction is immutable")

    def __getitem__(self, point: int) -> Fraction:
        return self.values[point]

    def __eq__(self, other) -> bool:
        return (isinstance(other, SetFunction) and self.k == other.k
                and self.values == other.values)

    def __hash__(self) -> int:
        return hash((self.k, self.values))

    def __repr__(self) -> str:
        return f"SetFunction(k={self.k}, {len(self.values)} values)"

    @classmethod
    def from_callable(cls, k: int, fn: Callable[[int], Fraction]) -> "SetFunction":
        return cls(k, [fn(x) for x in range(1 << k)])

    def scaled_values(self) -> tuple[int, list[int]]:
        """(denominator, integer table) with values[x] == table[x]/denominator."""
        den = math.lcm(*(v.denominator for v in self.values))
        return den, [int(v * den) for v in self.values]

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"k": self.k, "values": [format_rational(v) for v in self.values]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SetFunction":
        return cls(int(data["k"]), [parse_rational(s) for s in data["values"]])

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "SetFunction":
        return cls.from_json_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        for x, v in enumerate(self.values):
            w.writerow([x, format_rational(v)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SetFunction":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        table = {int(r[0]): parse_rational(r[1]) for r in rows}
        k = max(table) .bit_length()
        if len(table) != 1 << k:
            raise ValueError("CSV does not cover a full hypercube")
        return cls(k, [table[x] for x in range(1 << k)])


def check_submodular(f: SetFunction) -> list[SubmodularityViolation]:
    """Every violating triple of the pair condition, lexicographic in (S, i, j).

    Empty result means f is submodular.  Violations are exhaustive (not
    fail-fast) so callers can assert on slack values.
    """
    den, table = f.scaled_values()
    raw = kernels.scan_submodularity(table, f.k)
    return [SubmodularityViolation(s, i, j, Fraction(sl, den))
            for s, i, j, sl in raw]


def check_symmetric(f: SetFunction) -> bool:
    """True iff f(x) equals f on the bitwise complement of x, for all x."""
    full = (1 << f.k) - 1
    return all(f.values[x] == f.values[x ^ full] for x in range(1 << f.k))


@dataclass(frozen=True)
class WeightProfile:
    """Per-Hamming-weight averages a(0..k) of a set function."""

    averages: tuple[Fraction, ...]

    def nondecreasing_to_midpoint(self) -> bool:
        half = (len(self.averages) - 1) // 2
        return all(self.averages[t] <= self.averages[t + 1] for t in range(half))


def weight_profile(f: SetFunction) -> WeightProfile:
    """Exact average of f over each Hamming-weight level."""
    sums = [Fraction(0)] * (f.k + 1)
    for x, v in enumerate(f.values):
        sums[x.bit_count()] += v
    return WeightProfile(tuple(s / math.comb(f.k, t) for t, s in enumerate(sums)))


def biased_expectation_poly(f: SetFunction) -> BiasPolynomial:
    """The expectation of f under the p-biased distribution, as a polynomial.

    Expands sum_x f(x) p^|x| (1-p)^(k-|x|) into monomial coefficients, so
    evaluation at p=0 gives f(empty set) and at p=1 gives f(full set).
    """
    k = f.k
    wsum = [Fraction(0)] * (k + 1)
    for x, v in enumerate(f.values):
        wsum[x.bit_count()] += v
    coeffs = [Fraction(0)] * (k + 1)
    for w, s in enumerate(wsum):
        if s == 0:
            continue
        # p^w (1-p)^(k-w) = sum_j C(k-w, j) (-1)^j p^(w+j)
        for j in range(k - w + 1):
            coeffs[w + j] += s * math.comb(k - w, j) * (-1 if j % 2 else 1)
    return Polynomial(coeffs)


def eval_product_extension(f: SetFunction, z: Sequence[Fraction]) -> Fraction:
    """Multilinear extension of f at z in [0,1]^k.

    Equals the expectation of f(w) with w_i independently 1 with probability
    z_i; agrees with f exactly on hypercube vertices.  Computed by contracting
    one coordinate at a time, so 0/1 coordinates cost a table selection only.
    """
    if len(z) != f.k:
        raise ValueError(f"need {f.k} coordinates, got {len(z)}")
    zs = [Fraction(v) for v in z]
    if any(v < 0 or v > 1 for v in zs):
        raise ValueError("coordinates must lie in [0, 1]")
    fixed = 0
    frac_pos = []
    for i, v in enumerate(zs):
        if v == 1:
            fixed |= 1 << i
        elif v != 0:
            frac_pos.append(i)
    if not frac_pos:  # a vertex: the extension agrees with f
        return f.values[fixed]
    # gather the subcube over the fractional coordinates, then contract them
    table = []
    for y in range(1 << len(frac_pos)):
        idx = fixed
        yy = y
        for p in frac_pos:
            if yy & 1:
                idx |= 1 << p
            yy >>= 1
        table.append(f.values[idx])
    for p in frac_pos:
        v = zs[p]
        w = 1 - v
        table = [w * table[2 * u] + v * table[2 * u + 1]
                 for u in range(len(table) // 2)]
    return table[0]
