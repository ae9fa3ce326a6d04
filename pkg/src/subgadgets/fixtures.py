"""Bundled reference gadgets and their audits.

Four concrete optima ship with the package: the closed-form k=8 symmetric
gadget (fsym4), the k=16 symmetric gadget given by a (size, error-count)
value table (fsym5), the k=7 asymmetric gadget given by a small case split
(f3), and the k=15 asymmetric gadget given by a 46-row distance-multiset
table (f4).  The tables live in data/ as human-readable JSON; expansion
turns them into full hypercube tables and refuses to invent values: any
point not covered by exactly one rule raises instead of guessing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional

from .lp import GadgetBuildSpec, build_min_submodular_lp, solve_lp
from .rational import format_rational
from .setfunctions import (SetFunction, check_submodular, check_symmetric,
                           weight_profile)
from .supports import (SupportFamily, build_asymmetric_support,
                       build_symmetric_support, distance_multiset,
                       orbit_partition)

FIXTURE_IDS = ("fsym4", "fsym5", "f3", "f4")


class FixtureRuleError(ValueError):
    """A hypercube point is not covered by exactly one table rule."""


def _load_rules(name: str) -> dict:
    with resources.files("subgadgets.data").joinpath(name).open() as fh:
        return json.load(fh)


def fixture_family(gadget_id: str) -> SupportFamily:
    if gadget_id == "fsym4":
        return build_symmetric_support(4)
    if gadget_id == "fsym5":
        return build_symmetric_support(5)
    if gadget_id == "f3":
        return build_asymmetric_support(3)
    if gadget_id == "f4":
        return build_asymmetric_support(4)
    raise KeyError(f"unknown fixture {gadget_id!r}")


def _expand_fsym4() -> SetFunction:
    fam = build_symmetric_support(4)
    support = set(fam.points)
    full = (1 << 8) - 1

    def value(x: int) -> Fraction:
        w = x.bit_count()
        if w > 4:
            return value(x ^ full)
        if w < 4:
            return Fraction(w, 4)
        return Fraction(1) if x in support else Fraction(3, 4)

    return SetFunction.from_callable(8, value)


def _min_errors(x: int, points) -> int:
    # fewest elements of x outside a support point
    return min((x & ~c).bit_count() for c in points)


def _expand_fsym5() -> SetFunction:
    rules = _load_rules("fsym5_rules.json")
    scale = rules["value_scale"]
    table = {(r["size"], r["errors"]): Fraction(r["scaled_value"], scale)
             for r in rules["rows"]}
    fam = build_symmetric_support(5)
    full = (1 << 16) - 1
    half: dict[int, Fraction] = {}
    for x in range(1 << 16):
        w = x.bit_count()
        if w > 8:
            continue
        key = (w, _min_errors(x, fam.points))
        if key not in table:
            raise FixtureRuleError(f"unlisted size/error class {key} reached")
        half[x] = table[key]
    values = [half[x] if x in half else half[x ^ full] for x in range(1 << 16)]
    return SetFunction(16, values)


def _expand_f3() -> SetFunction:
    fam = build_asymmetric_support(3)
    points = fam.points

    def no_errors(x: int) -> bool:
        return any((x & ~c) == 0 or (c & ~x) == 0 for c in points)

    def value(x: int) -> Fraction:
        w = x.bit_count()
        if no_errors(x):
            return Fraction(w, 4) if w <= 4 else Fraction(7 - w, 3)
        if w == 3:
            return Fraction(11, 24)
        if w == 4:
            return Fraction(17, 24)
        raise FixtureRuleError(
            f"point {x:#09b} (size {w}) has errors but no rule covers it")

    return SetFunction.from_callable(7, value)


def _expand_f4() -> SetFunction:
    rules = _load_rules("f4_rules.json")
    scale = rules["value_scale"]
    table = {(r["size"], r["distances"]): Fraction(r["scaled_value"], scale)
             for r in rules["rows"]}
    fam = build_asymmetric_support(4)
    values = []
    for x in range(1 << 15):
        key = (x.bit_count(), distance_multiset(x, fam).compact())
        if key not in table:
            raise FixtureRuleError(f"no table row for {key}")
        values.append(table[key])
    return SetFunction(15, values)


_EXPANDERS = {"fsym4": _expand_fsym4, "fsym5": _expand_fsym5,
              "f3": _expand_f3, "f4": _expand_f4}
_SYMMETRIC = {"fsym4": True, "fsym5": True, "f3": False, "f4": False}


def expand_fixture(gadget_id: str) -> SetFunction:
    """Full hypercube table of a bundled gadget."""
    try:
        expander = _EXPANDERS[gadget_id]
    except KeyError:
        raise KeyError(f"unknown fixture {gadget_id!r}; "
                       f"known: {', '.join(FIXTURE_IDS)}") from None
    return expander()


@dataclass(frozen=True)
class FixtureAudit:
    """Exhaustive exact audit of one bundled gadget."""

    gadget_id: str
    submodular: bool
    n_violations: int
    symmetric_required: bool
    symmetric_ok: Optional[bool]
    support_ok: bool
    profile_ok: Optional[bool]  # weight profile nondecreasing to k/2, symmetric only
    orbit_constant: bool
    s_half: Fraction
    lp_objective: Fraction
    attains_lp_optimum: bool
    row_counts_ok: Optional[bool]  # table row counts vs orbit sizes (f4 only)

    @property
    def passed(self) -> bool:
        checks = [self.submodular, self.support_ok, self.orbit_constant,
                  self.attains_lp_optimum]
        for opt in (self.symmetric_ok, self.profile_ok, self.row_counts_ok):
            if opt is not None:
                checks.append(opt)
        return all(checks)

    def to_json_dict(self) -> dict:
        return {
            "gadget": self.gadget_id,
            "submodular": self.submodular,
            "n_violations": self.n_violations,
            "symmetric_required": self.symmetric_required,
            "symmetric_ok": self.symmetric_ok,
            "support_lower_bounds": self.support_ok,
            "weight_profile_nondecreasing": self.profile_ok,
            "orbit_constant": self.orbit_constant,
            "s_half": format_rational(self.s_half),
            "lp_objective": format_rational(self.lp_objective),
            "attains_lp_optimum": self.attains_lp_optimum,
            "row_counts_match": self.row_counts_ok,
            "passed": self.passed,
        }


def audit_fixture(gadget_id: str, f: Optional[SetFunction] = None) -> FixtureAudit:
    """Run every exact check on a fixture (or a caller-supplied table).

    Passing `f` lets callers audit an externally loaded (possibly corrupted)
    table against the fixture's contract.
    """
    if gadget_id not in _EXPANDERS:
        raise KeyError(f"unknown fixture {gadget_id!r}")
    if f is None:
        f = expand_fixture(gadget_id)
    fam = fixture_family(gadget_id)
    symmetric = _SYMMETRIC[gadget_id]
    if f.k != fam.k:
        raise ValueError("table arity does not match the fixture's family")

    violations = check_submodular(f)
    sym_ok = check_symmetric(f) if symmetric else None
    support_ok = all(f[c] >= 1 for c in fam.points)
    profile_ok = weight_profile(f).nondecreasing_to_midpoint() if symmetric else None

    mode = "complement-closed" if symmetric else "plain"
    part = orbit_partition(fam, mode)
    orbit_constant = all(
        f[x] == f[part.representatives[part.orbit_of[x]]] for x in range(1 << f.k))

    s_half = sum(f.values, Fraction(0)) / (1 << f.k)
    spec = GadgetBuildSpec(fam, Fraction(1, 2), symmetric=symmetric, reduction="orbit")
    sol = solve_lp(build_min_submodular_lp(spec).lp)
    attains = sol.status == "optimal" and sol.objective == s_half

    counts_ok = None
    if gadget_id == "f4":
        rules = _load_rules("f4_rules.json")
        expected = {(r["size"], r["distances"]): r["count"] for r in rules["rows"]}
        computed = {}
        for o in range(part.n_orbits):
            rep = part.representatives[o]
            key = (rep.bit_count(), distance_multiset(rep, fam).compact())
            computed[key] = part.sizes[o]
        counts_ok = computed == expected

    return FixtureAudit(gadget_id, not violations, len(violations), symmetric,
                        sym_ok, support_ok, profile_ok, orbit_constant,
                        s_half, sol.objective, attains, counts_ok)
