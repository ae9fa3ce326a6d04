"""Desk-scale simulation of the k-query acceptance test.

One round of the test draws n independent columns from the smoothed
distribution, reads the tested function on the k row strings, and accepts
with probability given by the multilinear extension of the gadget at those
replies.  The simulator accumulates the exact per-round acceptance
probability instead of flipping the final coin: identical expectation,
strictly smaller variance, which is what makes completeness/soundness gaps of
a few hundredths resolvable at 10^5 rounds.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .rational import format_rational
from .setfunctions import SetFunction, eval_product_extension
from .supports import FiniteDistribution

MAX_TEST_ARITY = 24


def smooth_distribution(mu: FiniteDistribution, eps: Fraction) -> FiniteDistribution:
    """The mixture (1-eps)*mu + eps*uniform; full support for eps > 0."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    n = 1 << mu.k
    base = {p: pr for p, pr in mu.atoms}
    uniform = eps / n
    atoms = tuple((x, (1 - eps) * base.get(x, Fraction(0)) + uniform)
                  for x in range(n))
    return FiniteDistribution(mu.k, atoms)


def exact_dictator_acceptance(f: SetFunction, mu_prime: FiniteDistribution) -> Fraction:
    """Acceptance probability on a dictator: the exact mean of f under mu'."""
    if f.k != mu_prime.k:
        raise ValueError("arity mismatch between gadget and distribution")
    return mu_prime.expectation(f.values)


@dataclass(frozen=True)
class TestFunction:
    """A function {0,1}^n -> [0,1] under test, evaluated lazily on bitmasks."""

    n: int
    kind: str
    evaluator: Callable[[int], Fraction]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_TEST_ARITY:
            raise ValueError(f"test-function arity must be in [1, {MAX_TEST_ARITY}]")

    def __call__(self, x: int) -> Fraction:
        v = Fraction(self.evaluator(x))
        if not 0 <= v <= 1:
            raise ValueError(f"test function value {v} outside [0, 1]")
        return v


def dictator(n: int, coord: int) -> TestFunction:
    if not 0 <= coord < n:
        raise ValueError("dictator coordinate out of range")
    return TestFunction(n, f"dictator({coord})",
                        lambda x: Fraction((x >> coord) & 1))


def constant(n: int, p: Fraction) -> TestFunction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("constant value must lie in [0, 1]")
    return TestFunction(n, f"constant({p})", lambda x: p)


def majority(n: int) -> TestFunction:
    """Majority vote; exact ties (even n) answer 1/2."""
    def ev(x: int) -> Fraction:
        w = x.bit_count()
        if 2 * w == n:
            return Fraction(1, 2)
        return Fraction(1) if 2 * w > n else Fraction(0)

    return TestFunction(n, "majority", ev)


def custom(n: int, fn: Callable[[int], Fraction], name: str = "custom") -> TestFunction:
    return TestFunction(n, name, fn)


@dataclass(frozen=True)
class TestRunResult:
    trials: int
    acceptance: Fraction  # exact mean of the per-round acceptance probabilities
    std_error: float
    seed: int

    def to_json_dict(self) -> dict:
        return {"trials": self.trials,
                "acceptance": format_rational(self.acceptance),
                "acceptance_float": float(self.acceptance),
                "std_error": self.std_error,
                "seed": self.seed}


def run_test(f: SetFunction, mu_prime: FiniteDistribution, F: TestFunction,
             n: int, trials: int, seed: int) -> TestRunResult:
    """Monte Carlo acceptance of the k-query test, deterministic per seed."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    if F.n != n:
        raise ValueError("test function arity does not match n")
    if f.k != mu_prime.k:
        raise ValueError("arity mismatch between gadget and distribution")
    k = f.k

    cols = _draw_columns(mu_prime, trials, n, seed)
    rows = np.empty((trials, k), dtype=np.int64)
    weights = 1 << np.arange(n, dtype=np.int64)
    for j in range(k):
        rows[:, j] = (((cols >> j) & 1) * weights).sum(axis=1)

    cache: dict[tuple, Fraction] = {}
    total = Fraction(0)
    total_sq = Fraction(0)
    for t in range(trials):
        z = tuple(F(int(rows[t, j])) for j in range(k))
        acc = cache.get(z)
        if acc is None:
            acc = eval_product_extension(f, z)
            cache[z] = acc
        total += acc
        total_sq += acc * acc
    mean = total / trials
    var = total_sq / trials - mean * mean
    std_error = math.sqrt(max(0.0, float(var)) / trials)
    return TestRunResult(trials, mean, std_error, seed)


def _draw_columns(mu_prime: FiniteDistribution, trials: int, n: int,
                  seed: int) -> np.ndarray:
    """(trials, n) matrix of points drawn iid from mu', via exact integer
    thresholds over the common denominator (no float rounding in sampling)."""
    den = math.lcm(*(pr.denominator for _, pr in mu_prime.atoms))
    thresholds = list(itertools.accumulate(int(pr * den) for _, pr in mu_prime.atoms))
    points = np.array([p for p, _ in mu_prime.atoms], dtype=np.int64)
    if den < (1 << 62):
        rng = np.random.Generator(np.random.PCG64(seed))
        draws = rng.integers(0, den, size=(trials, n), dtype=np.int64)
        idx = np.searchsorted(np.array(thresholds, dtype=np.int64), draws,
                              side="right")
        return points[idx]
    # arbitrarily large denominators: slower (but still exact) python path
    pyrng = random.Random(seed)
    idx = [[bisect.bisect_right(thresholds, pyrng.randrange(den))
            for _ in range(n)] for _ in range(trials)]
    return points[np.array(idx, dtype=np.int64)]
