"""Chernoff exponents for Poisson/binomial node counts.

For a count N with mean mu, P(|N - mu| > delta mu) is bounded by exp(-theta mu)
with theta = min((1+delta) ln(1+delta) - delta, delta²/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.stats import binom

from common.errors import InvalidArgument
from common.rng import stream


@dataclass(frozen=True)
class ChernoffParams:
    delta: float
    theta1: float
    theta2: float
    theta: float

    def bound(self, mean: float) -> float:
        if mean < 0:
            raise InvalidArgument(f"mean must be >= 0, got {mean}")
        return math.exp(-self.theta * mean)


def chernoff_theta(delta: float) -> ChernoffParams:
    if not 0 < delta < 1:
        raise InvalidArgument(f"delta must lie in (0, 1), got {delta}")
    theta1 = (1 + delta) * math.log1p(delta) - delta
    theta2 = delta * delta / 2
    return ChernoffParams(delta, theta1, theta2, min(theta1, theta2))


def uniform_delta_threshold(lo: float = 0.01, hi: float = 0.99, tol: float = 1e-6) -> float:
    """Smallest delta with pi*theta(delta) = 1/2; above it every disk count concentrates uniformly."""
    # xtol far below tol keeps pi*theta within tol of 1/2
    return float(bisect(lambda x: math.pi * chernoff_theta(x).theta - 0.5, lo, hi, xtol=tol * 1e-3))


def binomial_tail(trials: int, p: float, delta: float) -> float:
    """Exact P(|N - np| > delta np) for N ~ Binomial(trials, p)."""
    if trials < 1 or not 0 < p <= 1:
        raise InvalidArgument(f"need trials >= 1 and p in (0, 1], got {trials}, {p}")
    if delta < 0:
        raise InvalidArgument(f"delta must be >= 0, got {delta}")
    mean = trials * p
    upper = binom.sf(math.floor((1 + delta) * mean), trials, p)
    lower = binom.cdf(math.ceil((1 - delta) * mean) - 1, trials, p)
    return float(upper + lower)


def empirical_tail(trials: int, p: float, delta: float, samples: int, seed: int) -> float:
    """Monte Carlo estimate of the same two-sided tail from the ``tail`` stream."""
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")
    counts = stream(seed, 'tail').binomial(trials, p, size=samples)
    mean = trials * p
    return float(np.mean(np.abs(counts - mean) > delta * mean))


def cell_failure_bound(n: int, c_grid: float, delta: float) -> float:
    """Union bound on some grid cell leaving [(1-delta)mu, (1+delta)mu], mu = c_grid ln n."""
    if n < 2 or not c_grid > 0:
        raise InvalidArgument(f"need n >= 2 and c_grid > 0, got {n}, {c_grid}")
    mean = c_grid * math.log(n)
    cells = n / mean
    return min(1.0, cells * chernoff_theta(delta).bound(mean))
