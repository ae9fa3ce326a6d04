"""Hadamard-style pairwise-independent supports and their orbit structure.

Two constructions are provided.  The asymmetric one, parameterized by l,
lives on k = 2**l - 1 coordinates indexed by the nonempty subsets of
{0,...,l-1}; a sample point sets coordinate T to the XOR of a uniformly
random y over the positions in T.  The symmetric one uses only the odd-size
subsets (k = 2**(l-1)) and is closed under complement.  Subsets are ordered
by (size, lexicographic members), so all outputs are byte-stable.

The support point list drops the all-zeros string (and for the symmetric
construction the all-ones string), while the generating distribution keeps
them: completeness is always computed against the true distribution.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels
from .rational import format_rational, parse_rational


@dataclass(frozen=True)
class FiniteDistribution:
    """Finitely supported distribution on {0,1}^k; atoms sorted by point."""

    k: int
    atoms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        pts = [p for p, _ in self.atoms]
        if pts != sorted(set(pts)):
            raise ValueError("atoms must be sorted and distinct")
        if any(not 0 <= p < (1 << self.k) for p in pts):
            raise ValueError("atom outside the hypercube")
        if any(pr <= 0 for _, pr in self.atoms):
            raise ValueError("atom probabilities must be positive")
        if sum(pr for _, pr in self.atoms) != 1:
            raise ValueError("probabilities must sum to 1")

    def probability(self, point: int) -> Fraction:
        for p, pr in self.atoms:
            if p == point:
                return pr
        return Fraction(0)

    def expectation(self, values: Sequence[Fraction]) -> Fraction:
        return sum((pr * values[p] for p, pr in self.atoms), Fraction(0))

    def to_json_dict(self) -> list:
        return [[p, format_rational(pr)] for p, pr in self.atoms]

    @classmethod
    def from_json_dict(cls, k: int, data) -> "FiniteDistribution":
        return cls(k, tuple((int(p), parse_rational(s)) for p, s in data))


@dataclass(frozen=True)
class SupportFamily:
    """A set of hypercube points plus the distribution that generated it."""

    k: int
    points: tuple[int, ...]
    origin: str  # "asymmetric-<l>", "symmetric-<l>" or "custom"
    mu: FiniteDistribution

    def __post_init__(self):
        if list(self.points) != sorted(set(self.points)):
            raise ValueError("points must be sorted and distinct")
        if self.mu.k != self.k:
            raise ValueError("distribution arity mismatch")
        kind, l = self.origin_kind()
        full = (1 << self.k) - 1
        if kind == "asymmetric":
            if self.k != (1 << l) - 1 or len(self.points) != (1 << l) - 1:
                raise ValueError("asymmetric family has wrong shape")
            if 0 in self.points:
                raise ValueError("asymmetric family must exclude the all-zeros point")
        elif kind == "symmetric":
            if self.k != 1 << (l - 1) or len(self.points) != (1 << l) - 2:
                raise ValueError("symmetric family has wrong shape")
            if 0 in self.points or full in self.points:
                raise ValueError("symmetric family must exclude 0 and the full set")
            if not self.closed_under_complement():
                raise ValueError("symmetric family must be closed under complement")

    def origin_kind(self) -> tuple[str, int | None]:
        if self.origin == "custom":
            return "custom", None
        kind, _, l = self.origin.partition("-")
        return kind, int(l)

    def closed_under_complement(self) -> bool:
        full = (1 << self.k) - 1
        pts = set(self.points)
        return all(p ^ full in pts for p in pts)

    def to_json_dict(self) -> dict:
        return {"k": self.k, "origin": self.origin, "points": list(self.points),
                "mu": self.mu.to_json_dict()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SupportFamily":
        k = int(data["k"])
        return cls(k, tuple(int(p) for p in data["points"]), data["origin"],
                   FiniteDistribution.from_json_dict(k, data["mu"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def coordinate_subsets(l: int, odd_only: bool) -> list[tuple[int, ...]]:
    """The subsets of {0,...,l-1} indexing the coordinates, in fixed order."""
    subs = []
    for size in range(1, l + 1):
        if odd_only and size % 2 == 0:
            continue
        subs.extend(itertools.combinations(range(l), size))
    subs.sort(key=lambda t: (len(t), t))
    return subs


def _xor_image(l: int, subs: list[tuple[int, ...]]) -> list[int]:
    points = []
    for y in range(1 << l):
        x = 0
        for pos, T in enumerate(subs):
            parity = 0
            for i in T:
                parity ^= (y >> i) & 1
            x |= parity << pos
        points.append(x)
    return points


def _family(l: int, odd_only: bool, origin: str, excluded: set[int]) -> SupportFamily:
    subs = coordinate_subsets(l, odd_only)
    k = len(subs)
    image = _xor_image(l, subs)
    counts: dict[int, int] = {}
    for x in image:
        counts[x] = counts.get(x, 0) + 1
    atoms = tuple((x, Fraction(c, 1 << l)) for x, c in sorted(counts.items()))
    mu = FiniteDistribution(k, atoms)
    points = tuple(sorted(set(image) - excluded))
    return SupportFamily(k, points, origin, mu)


def build_asymmetric_support(l: int) -> SupportFamily:
    """The 2**l - 1 nonzero XOR-image points on k = 2**l - 1 coordinates."""
    if not 2 <= l <= 4:
        raise ValueError(f"asymmetric construction supports l in [2, 4], got {l}")
    return _family(l, odd_only=False, origin=f"asymmetric-{l}", excluded={0})


def build_symmetric_support(l: int) -> SupportFamily:
    """The complement-closed 2**l - 2 points on k = 2**(l-1) coordinates."""
    if not 2 <= l <= 5:
        raise ValueError(f"symmetric construction supports l in [2, 5], got {l}")
    k = 1 << (l - 1)
    return _family(l, odd_only=True, origin=f"symmetric-{l}",
                   excluded={0, (1 << k) - 1})


def verify_pairwise_independent(d: FiniteDistribution) -> bool:
    """Exact check that every two-coordinate marginal is uniform (all 1/4)."""
    quarter = Fraction(1, 4)
    for i in range(d.k):
        for j in range(i + 1, d.k):
            marg = [Fraction(0)] * 4
            for p, pr in d.atoms:
                marg[((p >> i) & 1) | (((p >> j) & 1) << 1)] += pr
            if any(m != quarter for m in marg):
                return False
    return True


@dataclass(frozen=True)
class DistanceMultiset:
    """Sorted Hamming distances from one point to every support point."""

    distances: tuple[int, ...]

    def compact(self) -> str:
        """Render as d1^m1 d2^m2 ... (distances ascending)."""
        parts = []
        for d in sorted(set(self.distances)):
            parts.append(f"{d}^{self.distances.count(d)}")
        return " ".join(parts)


def distance_multiset(point: int, fam: SupportFamily) -> DistanceMultiset:
    if not 0 <= point < (1 << fam.k):
        raise ValueError("point outside the family's hypercube")
    return DistanceMultiset(tuple(sorted((point ^ c).bit_count()
                                         for c in fam.points)))


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of the hypercube by the key (|S|, distance multiset).

    In complement-closed mode each class is merged with its complement class,
    so any function constant on orbits is automatically symmetric.  Orbit ids
    are contiguous from 0, assigned in order of first occurrence along point
    order; `representatives[o]` is the smallest point of orbit o.
    """

    k: int
    mode: str  # "plain" | "complement-closed"
    orbit_of: tuple[int, ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def n_orbits(self) -> int:
        return len(self.sizes)

    def members(self, orbit: int) -> list[int]:
        return [x for x, o in enumerate(self.orbit_of) if o == orbit]


def orbit_partition(fam: SupportFamily, mode: str = "plain") -> OrbitPartition:
    """Group points sharing (|S|, distance multiset to the support).

    This is a symmetry heuristic, not a computed automorphism group: any
    solution expressed on orbits is re-verified on the full hypercube
    downstream, so an over-coarse class can only surface as a detected
    failure, never silently.
    """
    if mode not in ("plain", "complement-closed"):
        raise ValueError(f"unknown mode {mode!r}")
    if fam.k > 16:
        raise ValueError("orbit partition supported for arity <= 16")
    if mode == "complement-closed" and not fam.closed_under_complement():
        raise ValueError("complement-closed mode needs a complement-closed support")
    n = 1 << fam.k
    rows = kernels.sorted_distance_rows(fam.k, fam.points)
    keys = [bytes([x.bit_count()]) + rows[x] for x in range(n)]
    if mode == "complement-closed":
        full = n - 1
        keys = [min(keys[x], keys[x ^ full]) for x in range(n)]
    ids: dict[bytes, int] = {}
    orbit_of = []
    reps = []
    sizes = []
    for x in range(n):
        o = ids.get(keys[x])
        if o is None:
            o = len(ids)
            ids[keys[x]] = o
            reps.append(x)
            sizes.append(0)
        orbit_of.append(o)
        sizes[o] += 1
    return OrbitPartition(fam.k, mode, tuple(orbit_of), tuple(reps), tuple(sizes))
