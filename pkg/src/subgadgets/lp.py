"""Minimum-submodular-upper-bound programs and their exact solutions.

The program for a support family C and bias p minimizes the p-biased
expectation of f subject to f being submodular (the local pair condition for
every (S, i, j)), f >= 1 on C and f >= 0; the symmetric variant additionally
requires f(S) = f(complement of S).  Orbit reduction collapses variables over
points sharing (|S|, distance multiset), shrinking the k = 15, 16 programs to
a few dozen variables; every reduced optimum is lifted back to the full
hypercube and re-verified there.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import simplex
from .rational import format_rational, parse_rational
from .setfunctions import SetFunction, check_submodular, check_symmetric
from .supports import OrbitPartition, SupportFamily, orbit_partition
from . import kernels

SparseRow = tuple[tuple[int, Fraction], ...]


def _sparse(pairs) -> SparseRow:
    merged: dict[int, Fraction] = {}
    for j, a in pairs:
        merged[j] = merged.get(j, Fraction(0)) + Fraction(a)
    return tuple(sorted((j, a) for j, a in merged.items() if a != 0))


@dataclass(frozen=True)
class Constraint:
    row: SparseRow
    sense: str  # "<=", ">=", "="
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """Minimization program; variables default to lower bound 0."""

    n_vars: int
    objective: SparseRow
    constraints: tuple[Constraint, ...]
    lower_bounds: tuple[Fraction, ...]

    @classmethod
    def build(cls, n_vars, objective, constraints, lower_bounds=None):
        lbs = tuple(Fraction(v) for v in lower_bounds) if lower_bounds \
            else tuple([Fraction(0)] * n_vars)
        cons = tuple(Constraint(_sparse(r), s, Fraction(b)) for r, s, b in constraints)
        return cls(n_vars, _sparse(objective), cons, lbs)


@dataclass(frozen=True)
class LPSolution:
    """Exact solve outcome; `values`/`duals`/`objective` only when optimal.

    When optimal, the solution carries its own proof: the primal point is
    feasible, the duals are feasible with the right signs, and both objectives
    agree exactly (checked by the solver before returning).
    """

    status: str
    values: Optional[tuple[Fraction, ...]]
    objective: Optional[Fraction]
    duals: Optional[tuple[Fraction, ...]]

    def to_json_dict(self) -> dict:
        out = {"status": self.status}
        if self.status == simplex.OPTIMAL:
            out["objective"] = format_rational(self.objective)
            out["values"] = [format_rational(v) for v in self.values]
            out["duals"] = [format_rational(v) for v in self.duals]
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "LPSolution":
        if data["status"] != simplex.OPTIMAL:
            return cls(data["status"], None, None, None)
        return cls(data["status"],
                   tuple(parse_rational(s) for s in data["values"]),
                   parse_rational(data["objective"]),
                   tuple(parse_rational(s) for s in data["duals"]))


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Exact simplex solve with deterministic pivoting and a dual certificate."""
    status, values, duals, obj = simplex.solve_canonical(
        lp.n_vars, lp.objective, [(c.row, c.sense, c.rhs) for c in lp.constraints],
        lp.lower_bounds)
    if status != simplex.OPTIMAL:
        return LPSolution(status, None, None, None)
    return LPSolution(status, tuple(values), obj, tuple(duals))


def lp_to_text(lp: LinearProgram) -> str:
    """Plain-text export, one constraint per line, exact rationals."""
    def render(row: SparseRow) -> str:
        if not row:
            return "0/1"
        return " + ".join(f"{format_rational(a)} x{j}" for j, a in row)

    lines = [f"min {render(lp.objective)}", "subject to"]
    for idx, c in enumerate(lp.constraints):
        lines.append(f"c{idx}: {render(c.row)} {c.sense} {format_rational(c.rhs)}")
    lines.append("bounds")
    for j, lb in enumerate(lp.lower_bounds):
        lines.append(f"x{j} >= {format_rational(lb)}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GadgetBuildSpec:
    """What to build: support family, bias, symmetry flag, reduction mode."""

    family: SupportFamily
    p: Fraction = Fraction(1, 2)
    symmetric: bool = False
    reduction: str = "orbit"  # "none" | "orbit"

    def __post_init__(self):
        if self.reduction not in ("none", "orbit"):
            raise ValueError(f"unknown reduction {self.reduction!r}")
        if not 0 <= self.p <= 1:
            raise ValueError("bias must lie in [0, 1]")
        if self.symmetric and not self.family.closed_under_complement():
            raise ValueError("symmetric program needs a complement-closed support")


@dataclass(frozen=True)
class BuiltProgram:
    lp: LinearProgram
    partition: Optional[OrbitPartition]  # present iff reduction == "orbit"


def _bias_weight(p: Fraction, weight: int, k: int) -> Fraction:
    return p**weight * (1 - p) ** (k - weight)


def build_min_submodular_lp(spec: GadgetBuildSpec) -> BuiltProgram:
    """Assemble the program (orbit-reduced or full)."""
    fam = spec.family
    k = fam.k
    p = Fraction(spec.p)
    if spec.reduction == "orbit":
        if k > 16:
            raise ValueError("orbit-reduced build supports arity <= 16")
        mode = "complement-closed" if spec.symmetric else "plain"
        part = orbit_partition(fam, mode)
        rows = kernels.reduced_constraint_rows(part.orbit_of, k)
        constraints = [(((pa, Fraction(1)), (pb, Fraction(1)),
                         (ma, Fraction(-1)), (mb, Fraction(-1))), "<=", Fraction(0))
                       for pa, pb, ma, mb in rows]
        for o in sorted({part.orbit_of[c] for c in fam.points}):
            constraints.append((((o, Fraction(1)),), ">=", Fraction(1)))
        weights = [Fraction(0)] * part.n_orbits
        for x in range(1 << k):
            weights[part.orbit_of[x]] += _bias_weight(p, x.bit_count(), k)
        objective = [(o, w) for o, w in enumerate(weights)]
        lp = LinearProgram.build(part.n_orbits, objective, constraints)
        return BuiltProgram(lp, part)

    if k > 8:
        raise ValueError("full (unreduced) build supports arity <= 8")
    n = 1 << k
    constraints = []
    for s in range(n):
        for i in range(k):
            bi = 1 << i
            if s & bi:
                continue
            for j in range(i + 1, k):
                bj = 1 << j
                if s & bj:
                    continue
                constraints.append((((s, Fraction(1)), (s | bi, Fraction(-1)),
                                     (s | bj, Fraction(-1)),
                                     (s | bi | bj, Fraction(1))), "<=", Fraction(0)))
    for c in fam.points:
        constraints.append((((c, Fraction(1)),), ">=", Fraction(1)))
    if spec.symmetric:
        full = n - 1
        for x in range(n):
            if x < x ^ full:
                constraints.append((((x, Fraction(1)), (x ^ full, Fraction(-1))),
                                    "=", Fraction(0)))
    objective = [(x, _bias_weight(p, x.bit_count(), k)) for x in range(n)]
    lp = LinearProgram.build(n, objective, constraints)
    return BuiltProgram(lp, None)


def lift_solution(partition: OrbitPartition, sol: LPSolution) -> SetFunction:
    """Expand an orbit-space optimum to the full 2**k table."""
    if sol.status != simplex.OPTIMAL:
        raise ValueError(f"cannot lift a solution with status {sol.status!r}")
    if len(sol.values) != partition.n_orbits:
        raise ValueError("solution/partition size mismatch")
    return SetFunction(partition.k,
                       [sol.values[partition.orbit_of[x]]
                        for x in range(1 << partition.k)])


@dataclass(frozen=True)
class LiftVerification:
    """Full-hypercube audit of a candidate optimum."""

    submodular: bool
    n_violations: int
    support_lower_bounds: bool
    symmetric_ok: bool  # vacuously true when symmetry is not required
    objective: Fraction
    objective_matches: Optional[bool]  # None when no expected value was given

    @property
    def passed(self) -> bool:
        return (self.submodular and self.support_lower_bounds and self.symmetric_ok
                and self.objective_matches is not False)

    def to_json_dict(self) -> dict:
        return {"submodular": self.submodular, "n_violations": self.n_violations,
                "support_lower_bounds": self.support_lower_bounds,
                "symmetric_ok": self.symmetric_ok,
                "objective": format_rational(self.objective),
                "objective_matches": self.objective_matches,
                "passed": self.passed}


def verify_lift(f: SetFunction, spec: GadgetBuildSpec,
                expected_objective: Optional[Fraction] = None) -> LiftVerification:
    """Check a full table against everything the program demanded of it."""
    fam = spec.family
    if f.k != fam.k:
        raise ValueError("arity mismatch")
    violations = check_submodular(f)
    support_ok = all(f[c] >= 1 for c in fam.points)
    symmetric_ok = check_symmetric(f) if spec.symmetric else True
    obj = sum((_bias_weight(spec.p, x.bit_count(), f.k) * v
               for x, v in enumerate(f.values)), Fraction(0))
    matches = None if expected_objective is None else obj == expected_objective
    return LiftVerification(not violations, len(violations), support_ok,
                            symmetric_ok, obj, matches)


def solution_to_json(sol: LPSolution) -> str:
    return json.dumps(sol.to_json_dict())
