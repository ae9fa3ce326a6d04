"""Completeness, certified soundness maxima, and gadget hardness reports.

The soundness of a gadget is the maximum of its bias polynomial over [0, 1].
That maximum is certified, never estimated: critical points are isolated with
exact Sturm arithmetic, the polynomial is evaluated exactly at every candidate
and a derivative bound converts interval widths into a proven enclosure
[s_lower, s_upper] of the true maximum.  For symmetric functions whose
weight profile is nondecreasing up to k/2, the maximum provably sits at
p = 1/2 and the certificate is exact (the enclosure then serves as a
cross-check of the shortcut).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .lp import (GadgetBuildSpec, LiftVerification, build_min_submodular_lp,
                 lift_solution, solve_lp, verify_lift)
from .polynomials import Polynomial, isolate_real_roots, poly_derivative, poly_eval
from .rational import decimal_ceil_str, decimal_str, format_rational
from .setfunctions import (SetFunction, biased_expectation_poly, check_symmetric,
                           weight_profile)
from .supports import (FiniteDistribution, build_asymmetric_support,
                       build_symmetric_support)


def completeness(f: SetFunction, mu: FiniteDistribution) -> Fraction:
    """Exact expectation of f under the generating distribution."""
    if mu.k != f.k:
        raise ValueError(f"arity mismatch: f has k={f.k}, mu has k={mu.k}")
    return mu.expectation(f.values)


@dataclass(frozen=True)
class SoundnessCertificate:
    """Certified enclosure of max_p s_p(f) with an interval locating an argmax.

    s_lower is attained (it is an exact evaluation of the polynomial),
    s_upper is proven; when via_lemma is set both equal s_half exactly and
    the argmax interval degenerates to [1/2, 1/2].
    """

    s_half: Fraction
    argmax_lo: Fraction
    argmax_hi: Fraction
    s_lower: Fraction
    s_upper: Fraction
    via_lemma: bool

    def to_json_dict(self) -> dict:
        return {
            "s_half": format_rational(self.s_half),
            "s_half_decimal": decimal_str(self.s_half),
            "argmax_interval": [format_rational(self.argmax_lo),
                                format_rational(self.argmax_hi)],
            "s_lower": format_rational(self.s_lower),
            "s_upper": format_rational(self.s_upper),
            "s_upper_decimal": decimal_str(self.s_upper),
            "via_lemma": self.via_lemma,
        }


def _enclosure(poly: Polynomial, tol: Fraction):
    """Certified (s_lower, s_upper, argmax_lo, argmax_hi) for max of poly on [0,1]."""
    deriv = poly_derivative(poly)
    bound = sum((abs(c) for c in deriv.coeffs), Fraction(0))  # |poly'| on [0,1]
    delta = tol / (2 * max(Fraction(1), bound))
    intervals = isolate_real_roots(deriv, (Fraction(0), Fraction(1)), delta)

    candidates = []  # (lo, hi, achieved, upper)
    for p in (Fraction(0), Fraction(1)):
        v = poly_eval(poly, p)
        candidates.append((p, p, v, v))
    for r in intervals:
        lo, hi = max(r.lo, Fraction(0)), min(r.hi, Fraction(1))
        if lo >= hi:
            continue  # enclosure entirely outside [0, 1]
        mid = (lo + hi) / 2
        v_lo, v_hi = poly_eval(poly, lo), poly_eval(poly, hi)
        v_mid = poly_eval(poly, mid)
        achieved = max(v_lo, v_hi, v_mid)
        # exactly-known critical point: the interval max is an exact evaluation
        exact_root = next((p for p in (lo, hi, mid) if poly_eval(deriv, p) == 0), None)
        if exact_root is not None:
            upper = achieved if exact_root == mid else max(v_lo, v_hi,
                                                           poly_eval(poly, exact_root))
        elif r.sign_change == "down-up":
            # the single interior critical point is a local minimum
            upper = max(v_lo, v_hi)
        else:
            # local maximum: bounded from both sides by the derivative bound
            upper = (v_lo + v_hi) / 2 + bound * (hi - lo) / 2
        candidates.append((lo, hi, achieved, max(achieved, upper)))

    s_lower = max(c[2] for c in candidates)
    s_upper = max(c[3] for c in candidates)
    # every candidate that could still hold the maximum stays in the hull
    kept = [c for c in candidates if c[3] >= s_lower]
    return s_lower, s_upper, min(c[0] for c in kept), max(c[1] for c in kept)


def check_symmetrybias_hypothesis(f: SetFunction) -> bool:
    """True iff the weight profile is nondecreasing on [0, k/2].

    Requires a symmetric f (raises otherwise); together with symmetry this
    guarantees the biased expectation is maximized by the unbiased p = 1/2.
    """
    if not check_symmetric(f):
        raise ValueError("weight-profile shortcut applies to symmetric functions only")
    return weight_profile(f).nondecreasing_to_midpoint()


def certify_soundness(f: SetFunction, tol: Fraction = Fraction(1, 10**9)) -> SoundnessCertificate:
    """Certified maximum of the bias polynomial of f over all biases."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    poly = biased_expectation_poly(f)
    s_half = poly_eval(poly, Fraction(1, 2))

    if poly_derivative(poly).is_zero():
        # constant expectation: the maximum is attained everywhere
        return SoundnessCertificate(s_half, Fraction(0), Fraction(1),
                                    s_half, s_half, via_lemma=False)

    s_lower, s_upper, arg_lo, arg_hi = _enclosure(poly, tol)

    if check_symmetric(f) and weight_profile(f).nondecreasing_to_midpoint():
        # the maximum sits exactly at 1/2; the enclosure must agree
        if not s_lower <= s_half <= s_upper:
            raise AssertionError("shortcut and polynomial enclosure disagree")
        return SoundnessCertificate(s_half, Fraction(1, 2), Fraction(1, 2),
                                    s_half, s_half, via_lemma=True)
    return SoundnessCertificate(s_half, arg_lo, arg_hi, s_lower, s_upper,
                                via_lemma=False)


# -- pivotal-derivative validation ---------------------------------------


def _is_monotone_boolean(f: SetFunction) -> bool:
    if any(v not in (0, 1) for v in f.values):
        return False
    for x in range(1 << f.k):
        for i in range(f.k):
            if not x & (1 << i) and f.values[x] > f.values[x | (1 << i)]:
                return False
    return True


@dataclass(frozen=True)
class PivotalCheck:
    p: Fraction
    poly_derivative_value: Fraction
    pivotal_sum: Fraction

    @property
    def equal(self) -> bool:
        return self.poly_derivative_value == self.pivotal_sum


@dataclass(frozen=True)
class PivotalReport:
    checks: tuple[PivotalCheck, ...]

    @property
    def all_equal(self) -> bool:
        return all(c.equal for c in self.checks)


def validate_margulis_russo(f: SetFunction, p_grid: Sequence[Fraction]) -> PivotalReport:
    """Compare d/dp of the bias polynomial against the pivotal-coordinate sum.

    For monotone 0/1-valued f the two are equal at every p; both sides are
    computed exactly and independently (formal derivative vs. direct
    enumeration of pivotal configurations).
    """
    if not _is_monotone_boolean(f):
        raise ValueError("requires a monotone function with values in {0, 1}")
    deriv = poly_derivative(biased_expectation_poly(f))
    k = f.k
    checks = []
    for p in p_grid:
        p = Fraction(p)
        lhs = poly_eval(deriv, p)
        rhs = Fraction(0)
        for i in range(k):
            bit = 1 << i
            for x in range(1 << k):
                if x & bit:
                    continue
                if f.values[x] == 0 and f.values[x | bit] == 1:
                    w = x.bit_count()
                    rhs += p**w * (1 - p) ** (k - 1 - w)
        checks.append(PivotalCheck(p, lhs, rhs))
    return PivotalReport(tuple(checks))


# -- full gadget pipeline --------------------------------------------------


@dataclass(frozen=True)
class GadgetReport:
    """End-to-end result for one support family: build, solve, lift, certify."""

    gadget_id: str
    origin: str
    l: int
    completeness: Fraction
    certificate: SoundnessCertificate
    ratio_upper: Fraction  # s_upper / completeness, exact
    verification: LiftVerification
    objective: Fraction
    cross_check_consistent: Optional[bool]
    function: SetFunction = field(repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return (self.verification.passed
                and self.cross_check_consistent is not False)

    def to_json_dict(self) -> dict:
        return {
            "gadget": self.gadget_id,
            "origin": self.origin,
            "l": self.l,
            "completeness": format_rational(self.completeness),
            "completeness_decimal": decimal_str(self.completeness),
            "objective": format_rational(self.objective),
            "soundness": self.certificate.to_json_dict(),
            "ratio_upper": format_rational(self.ratio_upper),
            "ratio_upper_decimal": decimal_str(self.ratio_upper),
            "verification": self.verification.to_json_dict(),
            "cross_check_consistent": self.cross_check_consistent,
            "passed": self.passed,
        }


def build_support(origin: str, l: int):
    if origin == "asymmetric":
        return build_asymmetric_support(l)
    if origin == "symmetric":
        return build_symmetric_support(l)
    raise ValueError(f"unknown origin {origin!r}")


def gadget_report(origin: str, l: int, tol: Fraction = Fraction(1, 10**9),
                  cross_check: bool = False) -> GadgetReport:
    """Run the whole pipeline for one family and assemble the report."""
    fam = build_support(origin, l)
    spec = GadgetBuildSpec(fam, Fraction(1, 2), symmetric=origin == "symmetric",
                           reduction="orbit")
    built = build_min_submodular_lp(spec)
    sol = solve_lp(built.lp)
    if sol.status != "optimal":
        raise RuntimeError(f"gadget program unexpectedly {sol.status}")
    f = lift_solution(built.partition, sol)
    verification = verify_lift(f, spec, expected_objective=sol.objective)
    c = completeness(f, fam.mu)
    cert = certify_soundness(f, tol)
    ratio = cert.s_upper / c

    cross = None
    if cross_check:
        p0 = (cert.argmax_lo + cert.argmax_hi) / 2
        re_spec = GadgetBuildSpec(fam, p0, symmetric=spec.symmetric, reduction="orbit")
        re_sol = solve_lp(build_min_submodular_lp(re_spec).lp)
        s_p0 = poly_eval(biased_expectation_poly(f), p0)
        cross = re_sol.status == "optimal" and re_sol.objective == s_p0

    return GadgetReport(f"{origin}-{l}", origin, l, c, cert, ratio,
                        verification, sol.objective, cross, f)


def render_gadget_table(reports: Sequence[GadgetReport]) -> str:
    """Text table: one row per gadget, exact entries where certified exact."""
    lines = ["l | c | s | ratio"]
    for r in reports:
        if r.certificate.via_lemma:
            s_txt = format_rational(r.certificate.s_upper)
            ratio_txt = format_rational(r.ratio_upper)
        else:
            s_txt = "< " + decimal_ceil_str(r.certificate.s_upper)
            ratio_txt = "< " + decimal_ceil_str(r.ratio_upper)
        lines.append(f"{r.l} | {format_rational(r.completeness)} | {s_txt} | {ratio_txt}")
    return "\n".join(lines) + "\n"
