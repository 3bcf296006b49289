"""Occupancy and reach statistics behind the beam-model counts."""
from __future__ import annotations

from typing import Optional

import numpy as np

from common.errors import InvalidArgument
from common.rng import stream
from geometry.cut import arc_area
from geometry.network import NetworkInstance


def expected_empty_bins(m: int) -> float:
    """Mean number of empty bins after m balls land uniformly in m bins."""
    if m < 1:
        raise InvalidArgument(f"m must be >= 1, got {m}")
    return m * (1.0 - 1.0 / m) ** m


def simulate_empty_bins(m: int, balls: int, seed: int, trials: int = 1) -> np.ndarray:
    """Empty-bin counts of ``trials`` independent throws, drawn from the ``occupancy`` stream."""
    if m < 1 or balls < 0 or trials < 1:
        raise InvalidArgument(f"need m >= 1, balls >= 0, trials >= 1; got {m}, {balls}, {trials}")
    rng = stream(seed, 'occupancy')
    empty = np.empty(trials, dtype=np.int64)
    for k in range(trials):
        hits = np.bincount(rng.integers(0, m, size=balls), minlength=m)
        empty[k] = np.count_nonzero(hits == 0)
    return empty


def strip_occupancy(inst: NetworkInstance, radius: Optional[float] = None) -> np.ndarray:
    """Node counts of the left strip [1/2 - r, 1/2) cut into round(n r) horizontal slices.

    Each slice has area ~1/n, so its emptiness follows the occupancy problem
    with as many balls as bins.
    """
    r = inst.d if radius is None else float(radius)
    bins = int(round(inst.n * r))
    if bins < 1:
        raise InvalidArgument(f"n*r={inst.n * r:.3g} leaves no slices")
    xs, ys = inst.positions[:, 0], inst.positions[:, 1]
    inside = (xs >= 0.5 - r) & (xs < 0.5)
    slot = np.minimum((ys[inside] * bins).astype(np.int64), bins - 1)
    return np.bincount(slot, minlength=bins)


def transmitter_reach(inst: NetworkInstance, radius: Optional[float] = None):
    """For every left-strip node: receivers in range across the cut, and n*arc_area at its x.

    Returns ``(nodes, counts, expected)``.
    """
    r = inst.d if radius is None else float(radius)
    if not r > 0:
        raise InvalidArgument(f"radius must be positive, got {r}")
    pos = inst.positions
    xs = pos[:, 0]
    nodes = np.flatnonzero((xs >= 0.5 - r) & (xs < 0.5))
    right = pos[xs >= 0.5]
    counts = np.empty(nodes.size, dtype=np.int64)
    expected = np.empty(nodes.size)
    for k, v in enumerate(nodes):
        dist = np.hypot(right[:, 0] - pos[v, 0], right[:, 1] - pos[v, 1])
        counts[k] = np.count_nonzero(dist <= r)
        expected[k] = inst.n * arc_area(float(pos[v, 0]), r)
    return nodes, counts, expected
