"""Analytic geometry of the center cut."""
import math

from common.errors import InvalidArgument

_EDGE_TOL = 1e-12


def arc_area(x: float, d: float) -> float:
    """Area of the part of the radius-d disk around (x, .) lying at x' >= 1/2.

    With theta = 2 arccos((1/2 - x) / d) this is d²(theta - sin theta) / 2.
    """
    if not d > 0:
        raise InvalidArgument(f"radius must be positive, got {d}")
    if x < 0.5 - d - _EDGE_TOL or x > 0.5 + _EDGE_TOL:
        raise InvalidArgument(f"x={x} outside [1/2 - d, 1/2] for d={d}")
    ratio = min(1.0, max(-1.0, (0.5 - x) / d))
    theta = 2.0 * math.acos(ratio)
    return max(0.0, 0.5 * d * d * (theta - math.sin(theta)))


def expected_cut_edges(n: int, d: float) -> float:
    """Mean number of edges straddling x = 1/2: (2/3) n² d³."""
    if n < 2:
        raise InvalidArgument(f"n must be >= 2, got {n}")
    if d < 0 or d >= 0.5:
        raise InvalidArgument(f"d must lie in [0, 1/2), got {d}")
    return 2.0 / 3.0 * n * n * d ** 3
