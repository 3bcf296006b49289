from stats.chernoff import (
    ChernoffParams,
    binomial_tail,
    cell_failure_bound,
    chernoff_theta,
    empirical_tail,
    uniform_delta_threshold,
)
from stats.regression import MIN_SWEEP_SIZES, FitResult, loglog_fit

__all__ = [
    'ChernoffParams', 'FitResult', 'MIN_SWEEP_SIZES', 'binomial_tail', 'cell_failure_bound',
    'chernoff_theta', 'empirical_tail', 'loglog_fit', 'uniform_delta_threshold',
]
