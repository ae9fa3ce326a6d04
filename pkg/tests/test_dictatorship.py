import math
from fractions import Fraction as F

import pytest

from subgadgets.dictatorship import (constant, custom, dictator,
                                     exact_dictator_acceptance, majority,
                                     run_test, smooth_distribution)
from subgadgets.polynomials import poly_eval
from subgadgets.setfunctions import SetFunction, biased_expectation_poly
from subgadgets.soundness import completeness
from subgadgets.supports import (FiniteDistribution, build_asymmetric_support,
                                 build_symmetric_support,
                                 verify_pairwise_independent)


def or_function(k):
    return SetFunction(k, [F(1) if x else F(0) for x in range(1 << k)])


def odd_parity_distribution():
    atoms = tuple((x, F(1, 4)) for x in range(8) if x.bit_count() % 2 == 1)
    return FiniteDistribution(3, atoms)


def test_smooth_is_the_exact_mixture():
    mu = odd_parity_distribution()
    eps = F(1, 10)
    mup = smooth_distribution(mu, eps)
    for x in range(8):
        expected = (1 - eps) * mu.probability(x) + eps / 8
        assert mup.probability(x) == expected


def test_smooth_gives_full_support_on_k7():
    mup = smooth_distribution(build_asymmetric_support(3).mu, F(1, 8))
    assert len(mup.atoms) == 128
    assert all(pr > 0 for _, pr in mup.atoms)
    # uniform part alone contributes 2^-10 to each atom
    assert all(pr >= F(1, 1024) for _, pr in mup.atoms)


def test_smooth_fixed_point_on_uniform():
    uniform = FiniteDistribution(2, tuple((x, F(1, 4)) for x in range(4)))
    assert smooth_distribution(uniform, F(1, 3)) == uniform


def test_smooth_rejects_bad_eps():
    mu = odd_parity_distribution()
    for eps in (F(0), F(1), F(-1, 2), F(3, 2)):
        with pytest.raises(ValueError):
            smooth_distribution(mu, eps)


@pytest.mark.parametrize("build,l", [(build_asymmetric_support, 3),
                                     (build_symmetric_support, 4)])
@pytest.mark.parametrize("eps", [F(1, 100), F(1, 10)])
def test_smoothing_preserves_pairwise_independence(build, l, eps):
    assert verify_pairwise_independent(smooth_distribution(build(l).mu, eps))


def test_exact_acceptance_of_constant_one():
    f = SetFunction(3, [F(1)] * 8)
    assert exact_dictator_acceptance(f, odd_parity_distribution()) == 1


def test_exact_acceptance_of_k8_gadget(tables):
    f = tables("fsym4")
    mu = build_symmetric_support(4).mu
    mup = smooth_distribution(mu, F(1, 100))
    got = exact_dictator_acceptance(f, mup)
    assert got == F(99, 100) * F(7, 8) + F(1, 100) * F(43, 64)
    # independent oracle: plain summation over all atoms
    assert got == sum(pr * f[x] for x, pr in mup.atoms)


def test_exact_acceptance_unsmoothed_or3():
    assert exact_dictator_acceptance(or_function(3), odd_parity_distribution()) == 1


def test_exact_acceptance_arity_mismatch():
    with pytest.raises(ValueError):
        exact_dictator_acceptance(or_function(4), odd_parity_distribution())


def test_dictator_estimate_within_four_stderr(tables):
    f = tables("fsym4")
    mup = smooth_distribution(build_symmetric_support(4).mu, F(1, 100))
    exact = exact_dictator_acceptance(f, mup)
    res = run_test(f, mup, dictator(10, 3), n=10, trials=100_000, seed=11)
    assert abs(float(res.acceptance - exact)) <= 4 * res.std_error
    assert res.std_error > 0


def test_constant_test_function_has_zero_variance(tables):
    f = tables("fsym4")
    mup = smooth_distribution(build_symmetric_support(4).mu, F(1, 10))
    poly = biased_expectation_poly(f)
    for p in (F(1, 2), F(2, 7)):
        res = run_test(f, mup, constant(6, p), n=6, trials=500, seed=5)
        assert res.acceptance == poly_eval(poly, p)
        assert res.std_error == 0.0


def test_constant_half_on_or3_is_exactly_seven_eighths():
    mup = smooth_distribution(odd_parity_distribution(), F(1, 10))
    res = run_test(or_function(3), mup, constant(4, F(1, 2)), n=4, trials=50, seed=0)
    assert res.acceptance == F(7, 8)


def test_equal_seeds_reproduce():
    f = or_function(3)
    mup = smooth_distribution(odd_parity_distribution(), F(1, 100))
    a = run_test(f, mup, majority(7), n=7, trials=2000, seed=42)
    b = run_test(f, mup, majority(7), n=7, trials=2000, seed=42)
    assert a == b
    c = run_test(f, mup, majority(7), n=7, trials=2000, seed=43)
    assert c.acceptance != a.acceptance  # different stream


def test_majority_soundness_direction(tables):
    # a far-from-dictator function should score near s_p, not near completeness
    f = tables("fsym4")
    mu = build_symmetric_support(4).mu
    mup = smooth_distribution(mu, F(1, 100))
    res = run_test(f, mup, majority(9), n=9, trials=4000, seed=9)
    c = completeness(f, mu)
    s_half = poly_eval(biased_expectation_poly(f), F(1, 2))
    assert abs(float(res.acceptance) - float(s_half)) < 0.02
    assert float(res.acceptance) < float(c) - 0.1


def test_run_test_validation(tables):
    f = tables("fsym4")
    mup = smooth_distribution(build_symmetric_support(4).mu, F(1, 100))
    with pytest.raises(ValueError):
        run_test(f, mup, dictator(5, 0), n=5, trials=0, seed=1)
    with pytest.raises(ValueError):
        run_test(f, mup, dictator(5, 0), n=6, trials=10, seed=1)


def test_custom_test_function_values_are_checked():
    f = or_function(3)
    mup = smooth_distribution(odd_parity_distribution(), F(1, 2))
    bad = custom(4, lambda x: F(2))
    with pytest.raises(ValueError):
        run_test(f, mup, bad, n=4, trials=5, seed=1)


def test_test_function_constructors_validate():
    with pytest.raises(ValueError):
        dictator(4, 4)
    with pytest.raises(ValueError):
        constant(4, F(3, 2))
    with pytest.raises(ValueError):
        dictator(30, 0)
