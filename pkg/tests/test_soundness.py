import random
from fractions import Fraction as F

import pytest

from subgadgets.polynomials import poly_derivative, poly_eval
from subgadgets.setfunctions import SetFunction, biased_expectation_poly
from subgadgets.soundness import (certify_soundness, check_symmetrybias_hypothesis,
                                  completeness, gadget_report, render_gadget_table,
                                  validate_margulis_russo)
from subgadgets.supports import FiniteDistribution, build_asymmetric_support


def or_function(k):
    return SetFunction(k, [F(1) if x else F(0) for x in range(1 << k)])


def odd_parity_distribution():
    atoms = tuple((x, F(1, 4)) for x in range(8) if x.bit_count() % 2 == 1)
    return FiniteDistribution(3, atoms)


def test_completeness_zero_function():
    f = SetFunction(3, [F(0)] * 8)
    assert completeness(f, odd_parity_distribution()) == 0


def test_completeness_or3_under_odd_parity():
    assert completeness(or_function(3), odd_parity_distribution()) == 1


def test_completeness_of_k15_gadget(reports):
    rep = reports("asymmetric", 4)
    fam = build_asymmetric_support(4)
    assert completeness(rep.function, fam.mu) == F(15, 16)


def test_completeness_arity_mismatch():
    with pytest.raises(ValueError):
        completeness(or_function(4), odd_parity_distribution())


def test_certify_constant_function():
    f = SetFunction(3, [F(2, 5)] * 8)
    cert = certify_soundness(f)
    assert cert.s_lower == cert.s_upper == F(2, 5)
    assert (cert.argmax_lo, cert.argmax_hi) == (F(0), F(1))
    assert not cert.via_lemma


def test_certify_k16_gadget_exact(tables):
    cert = certify_soundness(tables("fsym5"))
    assert cert.via_lemma
    assert cert.s_lower == cert.s_upper == F(709, 1024)
    assert cert.argmax_lo == cert.argmax_hi == F(1, 2)


def test_certify_k7_gadget_enclosure(tables):
    cert = certify_soundness(tables("f3"))
    assert not cert.via_lemma
    # the enclosure agrees with the reported 6-digit maximum up to rounding
    assert abs(cert.s_lower - F(627434, 10**6)) <= F(1, 10**6)
    assert abs(cert.s_upper - F(627434, 10**6)) <= F(1, 10**6)
    assert cert.s_upper < F(6275, 10**4)
    assert cert.argmax_lo <= F(542404, 10**6) + F(1, 10**4)
    assert cert.argmax_hi >= F(542404, 10**6) - F(1, 10**4)
    assert cert.s_upper - cert.s_lower <= F(1, 10**9)


def test_certificate_is_an_upper_bound_everywhere(tables):
    f = tables("f3")
    cert = certify_soundness(f)
    poly = biased_expectation_poly(f)
    rng = random.Random(3)
    for _ in range(100):
        p = F(rng.randrange(0, 10**6), 10**6)
        assert poly_eval(poly, p) <= cert.s_upper


def test_certify_or3_maximum_at_one():
    cert = certify_soundness(or_function(3))
    assert cert.s_lower == cert.s_upper == F(1)
    assert cert.argmax_hi == F(1)
    assert cert.s_half == F(7, 8)


def test_symmetric_argmax_interval_straddles_half(tables):
    for gadget in ("fsym4", "fsym5"):
        cert = certify_soundness(tables(gadget))
        assert cert.argmax_lo <= F(1, 2) <= cert.argmax_hi


def test_dictator_soundness_is_one():
    f = SetFunction(3, [F((x >> 1) & 1) for x in range(8)])
    cert = certify_soundness(f)
    assert cert.s_upper == F(1) and cert.s_lower == F(1)


def test_weight_profile_hypothesis_band_indicator():
    # indicator of k/2 - d <= |x| <= k/2 + d
    k, d = 6, 1
    f = SetFunction(k, [F(1) if abs(2 * x.bit_count() - k) <= 2 * d else F(0)
                        for x in range(1 << k)])
    assert check_symmetrybias_hypothesis(f)


def test_weight_profile_hypothesis_holds_for_k16_gadget(tables):
    assert check_symmetrybias_hypothesis(tables("fsym5"))


def test_weight_profile_hypothesis_extremes_indicator():
    k = 4
    f = SetFunction(k, [F(1) if x in (0, (1 << k) - 1) else F(0)
                        for x in range(1 << k)])
    assert not check_symmetrybias_hypothesis(f)


def test_weight_profile_hypothesis_requires_symmetry():
    f = SetFunction(3, [F(x.bit_count()) for x in range(8)])
    with pytest.raises(ValueError):
        check_symmetrybias_hypothesis(f)


def pivotal_sum_oracle(f, p):
    """Independent enumeration of the pivotal-coordinate sum."""
    total = F(0)
    for i in range(f.k):
        bit = 1 << i
        for x in range(1 << f.k):
            if x & bit:
                continue
            if f[x] == 0 and f[x | bit] == 1:
                w = x.bit_count()
                total += p**w * (1 - p) ** (f.k - 1 - w)
    return total


def test_pivotal_formula_dictator():
    f = SetFunction(4, [F((x >> 2) & 1) for x in range(16)])
    report = validate_margulis_russo(f, [F(1, 3), F(1, 2), F(9, 10)])
    assert report.all_equal
    assert all(c.poly_derivative_value == 1 for c in report.checks)


def test_pivotal_formula_threshold_k5():
    f = SetFunction(5, [F(1) if x.bit_count() >= 2 else F(0) for x in range(32)])
    report = validate_margulis_russo(f, [F(1, 3)])
    assert report.all_equal
    # cross-check one side against the in-test oracle
    assert report.checks[0].pivotal_sum == pivotal_sum_oracle(f, F(1, 3))


def test_pivotal_formula_or3_at_half():
    report = validate_margulis_russo(or_function(3), [F(1, 2)])
    assert report.all_equal
    assert report.checks[0].pivotal_sum == F(3, 4)
    # derivative of 1 - (1-p)^3 is 3 (1-p)^2
    d = poly_derivative(biased_expectation_poly(or_function(3)))
    assert poly_eval(d, F(1, 2)) == F(3, 4)


def monotone_zoo():
    zoo = []
    zoo.append(("dictator", SetFunction(3, [F((x >> 0) & 1) for x in range(8)])))
    zoo.append(("or3", or_function(3)))
    zoo.append(("and3", SetFunction(3, [F(1) if x == 7 else F(0) for x in range(8)])))
    zoo.append(("majority5", SetFunction(
        5, [F(1) if x.bit_count() >= 3 else F(0) for x in range(32)])))
    for k, t in ((5, 2), (6, 3), (6, 4)):
        zoo.append((f"threshold{k}_{t}", SetFunction(
            k, [F(1) if x.bit_count() >= t else F(0) for x in range(1 << k)])))
    pairs = SetFunction(6, [F(1) if (x & 3) == 3 or (x >> 2 & 3) == 3
                            or (x >> 4 & 3) == 3 else F(0) for x in range(64)])
    zoo.append(("tribes2x3", pairs))
    return zoo


def test_pivotal_formula_across_the_zoo():
    biases = [F(i, 11) for i in range(1, 11)]
    for name, f in monotone_zoo():
        report = validate_margulis_russo(f, biases)
        assert report.all_equal, name


def test_pivotal_formula_rejects_bad_inputs():
    not_monotone = SetFunction(2, [F(1), F(0), F(0), F(1)])
    with pytest.raises(ValueError):
        validate_margulis_russo(not_monotone, [F(1, 2)])
    not_boolean = SetFunction(2, [F(0), F(1, 2), F(1, 2), F(1)])
    with pytest.raises(ValueError):
        validate_margulis_russo(not_boolean, [F(1, 2)])


def test_gadget_report_symmetric_rows(reports):
    r3 = reports("symmetric", 3)
    assert (r3.completeness, r3.certificate.s_upper, r3.ratio_upper) == \
        (F(3, 4), F(5, 8), F(5, 6))
    r4 = reports("symmetric", 4)
    assert (r4.completeness, r4.certificate.s_upper, r4.ratio_upper) == \
        (F(7, 8), F(43, 64), F(43, 56))
    r5 = reports("symmetric", 5)
    assert r5.ratio_upper == F(709, 960)


def test_gadget_report_asymmetric_l4(reports):
    r = reports("asymmetric", 4)
    assert r.completeness == F(15, 16)
    assert r.certificate.s_upper < F(6508, 10**4)
    assert r.ratio_upper < F(6942, 10**4)
    assert r.passed


def test_gadget_report_cross_check_near_argmax(reports):
    r = reports("asymmetric", 3, cross_check=True)
    assert r.cross_check_consistent is True


def test_render_table_contains_exact_entries(reports):
    text = render_gadget_table([reports("symmetric", l) for l in (3, 4, 5)])
    assert "3/4 | 5/8 | 5/6" in text
    assert "7/8 | 43/64 | 43/56" in text
    assert "15/16 | 709/1024 | 709/960" in text


def test_report_json_shape(reports):
    d = reports("symmetric", 4).to_json_dict()
    assert d["completeness"] == "7/8"
    assert d["soundness"]["s_upper"] == "43/64"
    assert d["ratio_upper"] == "43/56"
    assert d["passed"] is True
    assert d["completeness_decimal"].startswith("0.875")
