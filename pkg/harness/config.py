"""Experiment configuration, metric registry and shared constants."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from antenna.models import DEFAULT_EPS_ANG
from common.errors import InvalidArgument
from common.rng import check_seed
from flow.concurrent import DEFAULT_EPSILON, DEFAULT_MAX_PHASES
from flow.exact import ORACLE_MAX_NODES, ORACLE_REL_TOL
from flow.verify import FEASIBILITY_TOL
from geometry.network import LNLN, XiMode, parse_xi_mode
from routing.grid import DEFAULT_C_GRID

MAX_RETRIES = 10
RETRY_STRIDE = 2 ** 32
DEFAULT_WORKERS = 4

RADIUS_GRID = 'grid'
RADIUS_CONNECTIVITY = 'connectivity'
RADIUS_MODES = (RADIUS_GRID, RADIUS_CONNECTIVITY)


def _ln32(n):
    return math.log(n) ** 1.5


# metric -> (growth law printed in the CSV header, law(n, d))
NORMALIZERS = {
    'cut-edges': ('n^2 d^3', lambda n, d: n * n * d ** 3),
    'maxflow-nu': ('sqrt(n) ln(n)^(3/2)', lambda n, d: math.sqrt(n) * _ln32(n)),
    'concurrent-lambda': ('ln(n)^(3/2) / sqrt(n)', lambda n, d: _ln32(n) / math.sqrt(n)),
    'routing-gamma': ('ln(n)^(3/2) / sqrt(n)', lambda n, d: _ln32(n) / math.sqrt(n)),
    'omni-schedule': ('sqrt(n / ln(n))', lambda n, d: math.sqrt(n / math.log(n))),
    'single-beam': ('n d', lambda n, d: n * d),
    'multi-beam': ('n^2 d^3', lambda n, d: n * n * d ** 3),
    'beta': ('ln(n)', lambda n, d: math.log(n)),
}

METRICS = tuple(NORMALIZERS)


@dataclass(frozen=True)
class ExperimentConfig:
    metric: str
    n_list: tuple
    trials: int = 1
    base_seed: int = 0
    epsilon: float = DEFAULT_EPSILON
    c_grid: float = DEFAULT_C_GRID
    xi_mode: XiMode = LNLN
    eps_ang: float = DEFAULT_EPS_ANG
    output: Optional[str] = None
    capacity: float = 1.0
    radius_mode: str = RADIUS_GRID
    left_to_right: bool = True
    max_phases: int = DEFAULT_MAX_PHASES
    workers: int = DEFAULT_WORKERS
    deterministic: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'n_list', tuple(int(n) for n in self.n_list))
        object.__setattr__(self, 'xi_mode', parse_xi_mode(self.xi_mode))
        if self.metric not in NORMALIZERS:
            raise InvalidArgument(f"unknown metric {self.metric!r}; choose one of {', '.join(METRICS)}")
        if not self.n_list:
            raise InvalidArgument("n_list must not be empty")
        if any(n < 2 for n in self.n_list):
            raise InvalidArgument(f"every n must be >= 2, got {list(self.n_list)}")
        if any(b <= a for a, b in zip(self.n_list, self.n_list[1:])):
            raise InvalidArgument(f"n_list must be strictly increasing, got {list(self.n_list)}")
        if self.trials < 1:
            raise InvalidArgument(f"trials must be >= 1, got {self.trials}")
        check_seed(self.base_seed)
        if not 0 < self.epsilon < 1:
            raise InvalidArgument(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.c_grid > 0:
            raise InvalidArgument(f"c_grid must be positive, got {self.c_grid}")
        if not self.eps_ang > 0:
            raise InvalidArgument(f"eps_ang must be positive, got {self.eps_ang}")
        if not self.capacity > 0 or not math.isfinite(self.capacity):
            raise InvalidArgument(f"capacity must be positive and finite, got {self.capacity}")
        if self.radius_mode not in RADIUS_MODES:
            raise InvalidArgument(f"radius_mode must be one of {RADIUS_MODES}, got {self.radius_mode!r}")
        if self.max_phases < 1 or self.workers < 1:
            raise InvalidArgument("max_phases and workers must be >= 1")

    def seeds(self):
        return [self.base_seed + k for k in range(self.trials)]

    def with_metric(self, metric: str) -> 'ExperimentConfig':
        return replace(self, metric=metric)

    def normalizer(self, n: int, d: float) -> float:
        return NORMALIZERS[self.metric][1](n, d)


__all__ = [
    'DEFAULT_C_GRID', 'DEFAULT_EPSILON', 'DEFAULT_EPS_ANG', 'DEFAULT_MAX_PHASES', 'DEFAULT_WORKERS',
    'ExperimentConfig', 'FEASIBILITY_TOL', 'MAX_RETRIES', 'METRICS', 'NORMALIZERS', 'ORACLE_MAX_NODES',
    'ORACLE_REL_TOL', 'RADIUS_CONNECTIVITY', 'RADIUS_GRID', 'RADIUS_MODES', 'RETRY_STRIDE',
]
