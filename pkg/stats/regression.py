"""Log-log least squares for scaling exponents."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from common.errors import InvalidArgument

MIN_SWEEP_SIZES = 4


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    samples: int


def loglog_fit(xs, ys, min_points: int = 2) -> FitResult:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise InvalidArgument("xs and ys must be 1-d sequences of equal length")
    if xs.size < max(2, min_points):
        raise InvalidArgument(f"need at least {max(2, min_points)} points, got {xs.size}")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise InvalidArgument("fit values must be finite")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise InvalidArgument("log-log fit needs strictly positive values")
    lx, ly = np.log(xs), np.log(ys)
    if np.ptp(lx) == 0:
        raise InvalidArgument("xs must not all be equal")
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = ly - (slope * lx + intercept)
    total = float(np.sum((ly - ly.mean()) ** 2))
    if total == 0:
        r2 = 1.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - float(np.sum(residual ** 2)) / total))
    return FitResult(float(slope), float(intercept), r2, int(xs.size))
