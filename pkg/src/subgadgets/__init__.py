"""Exact gadgetry for submodular-maximization hardness bounds.

Builds pairwise-independent supports from XOR codes, solves the associated
minimum-submodular-upper-bound linear programs with an exact rational
simplex, certifies soundness maxima over all biased product distributions,
and simulates the k-query acceptance test — everything on the certification
path is exact rational arithmetic.
"""

from .rational import Rational, decimal_str, format_rational, parse_rational
from .polynomials import (BiasPolynomial, Polynomial, RootInterval,
                          ZeroPolynomialError, isolate_real_roots,
                          poly_derivative, poly_eval)
from .setfunctions import (SetFunction, SubmodularityViolation, WeightProfile,
                           biased_expectation_poly, check_submodular,
                           check_symmetric, eval_product_extension,
                           weight_profile)
from .supports import (DistanceMultiset, FiniteDistribution, OrbitPartition,
                       SupportFamily, build_asymmetric_support,
                       build_symmetric_support, distance_multiset,
                       orbit_partition, verify_pairwise_independent)
from .lp import (BuiltProgram, Constraint, GadgetBuildSpec, LPSolution,
                 LinearProgram, LiftVerification, build_min_submodular_lp,
                 lift_solution, lp_to_text, solve_lp, verify_lift)
from .soundness import (GadgetReport, PivotalReport, SoundnessCertificate,
                        certify_soundness, check_symmetrybias_hypothesis,
                        completeness, gadget_report, render_gadget_table,
                        validate_margulis_russo)
from .dictatorship import (TestFunction, TestRunResult, constant, custom,
                           dictator, exact_dictator_acceptance, majority,
                           run_test, smooth_distribution)
from .fixtures import (FIXTURE_IDS, FixtureAudit, FixtureRuleError,
                       audit_fixture, expand_fixture, fixture_family)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "Rational", "decimal_str", "format_rational", "parse_rational",
    "BiasPolynomial", "Polynomial", "RootInterval", "ZeroPolynomialError",
    "isolate_real_roots", "poly_derivative", "poly_eval",
    "SetFunction", "SubmodularityViolation", "WeightProfile",
    "biased_expectation_poly", "check_submodular", "check_symmetric",
    "eval_product_extension", "weight_profile",
    "DistanceMultiset", "FiniteDistribution", "OrbitPartition", "SupportFamily",
    "build_asymmetric_support", "build_symmetric_support", "distance_multiset",
    "orbit_partition", "verify_pairwise_independent",
    "BuiltProgram", "Constraint", "GadgetBuildSpec", "LPSolution",
    "LinearProgram", "LiftVerification", "build_min_submodular_lp",
    "lift_solution", "lp_to_text", "solve_lp", "verify_lift",
    "GadgetReport", "PivotalReport", "SoundnessCertificate",
    "certify_soundness", "check_symmetrybias_hypothesis", "completeness",
    "gadget_report", "render_gadget_table", "validate_margulis_russo",
    "TestFunction", "TestRunResult", "constant", "custom", "dictator",
    "exact_dictator_acceptance", "majority", "run_test", "smooth_distribution",
    "FIXTURE_IDS", "FixtureAudit", "FixtureRuleError", "audit_fixture",
    "expand_fixture", "fixture_family",
    "KERNEL_BACKEND",
]
