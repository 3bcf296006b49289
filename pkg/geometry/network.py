"""Random networks on the unit square.

n nodes are dropped uniformly on [0,1]², every node is the source of one
commodity and the sink of another, and the common transmission radius is the
connectivity radius ``sqrt((ln n + xi_n) / (pi n))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from common.errors import InvalidArgument
from common.logger_config import setup_logger
from common.rng import check_seed, stream

logger = setup_logger(__name__)

LNLN = 'lnln'

XiMode = Union[str, float]


class Point(NamedTuple):
    x: float
    y: float


def parse_xi_mode(value) -> XiMode:
    """Accept ``'lnln'`` or anything float() understands as a constant xi."""
    if isinstance(value, str):
        if value.strip().lower() in (LNLN, 'default'):
            return LNLN
        try:
            value = float(value)
        except ValueError:
            raise InvalidArgument(f"xi_mode must be 'lnln' or a number, got {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidArgument(f"xi_mode must be 'lnln' or a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise InvalidArgument(f"constant xi must be finite and >= 0, got {value}")
    return value


def resolve_xi(n: int, xi_mode: XiMode = LNLN) -> float:
    xi_mode = parse_xi_mode(xi_mode)
    if xi_mode == LNLN:
        if n <= math.e:
            raise InvalidArgument(f"ln ln n is undefined or negative for n={n}; use a constant xi")
        return math.log(math.log(n))
    return xi_mode


def connectivity_radius(n: int, xi_mode: XiMode = LNLN) -> float:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidArgument(f"n must be an integer >= 2, got {n!r}")
    xi = resolve_xi(int(n), xi_mode)
    return math.sqrt((math.log(n) + xi) / (math.pi * n))


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class NetworkInstance:
    n: int
    positions: np.ndarray
    d: float
    commodities: np.ndarray
    seed: int
    xi_mode: XiMode = LNLN

    @classmethod
    def create(cls, positions, commodities, seed: int = 0, xi_mode: XiMode = LNLN) -> 'NetworkInstance':
        """Build a validated instance; the radius always follows from (n, xi_mode)."""
        positions = _frozen(positions, float)
        commodities = _frozen(commodities, np.int64)
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise InvalidArgument(f"positions must have shape (n, 2), got {positions.shape}")
        n = positions.shape[0]
        xi_mode = parse_xi_mode(xi_mode)
        d = connectivity_radius(n, xi_mode)
        inst = cls(n=n, positions=positions, d=d, commodities=commodities,
                   seed=check_seed(seed), xi_mode=xi_mode)
        inst.validate()
        return inst

    def validate(self):
        if not np.all(np.isfinite(self.positions)):
            raise InvalidArgument("node coordinates must be finite")
        if np.any(self.positions < 0.0) or np.any(self.positions > 1.0):
            raise InvalidArgument("node coordinates must lie in [0, 1]")
        if self.commodities.shape != (self.n, 2):
            raise InvalidArgument(f"expected {self.n} commodities, got shape {self.commodities.shape}")
        src, dst = self.commodities[:, 0], self.commodities[:, 1]
        if np.any(src < 0) or np.any(src >= self.n) or np.any(dst < 0) or np.any(dst >= self.n):
            raise InvalidArgument("commodity endpoint out of range")
        bad = np.flatnonzero(src == dst)
        if bad.size:
            raise InvalidArgument(f"commodity {int(bad[0])} pairs node {int(src[bad[0]])} with itself")
        everyone = np.arange(self.n)
        if not (np.array_equal(np.sort(src), everyone) and np.array_equal(np.sort(dst), everyone)):
            raise InvalidArgument("every node must be exactly one source and exactly one sink")

    @property
    def nodes(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in self.positions]

    @property
    def xs(self) -> np.ndarray:
        return self.positions[:, 0]

    def left_to_right_mask(self) -> np.ndarray:
        """Commodities with source at x < 1/2 and sink at x >= 1/2."""
        xs = self.xs
        return (xs[self.commodities[:, 0]] < 0.5) & (xs[self.commodities[:, 1]] >= 0.5)

    def __eq__(self, other):
        if not isinstance(other, NetworkInstance):
            return NotImplemented
        return (self.n == other.n and self.d == other.d and self.seed == other.seed
                and self.xi_mode == other.xi_mode
                and np.array_equal(self.positions, other.positions)
                and np.array_equal(self.commodities, other.commodities))

    __hash__ = None


def random_derangement(n: int, rng: np.random.Generator) -> np.ndarray:
    # whole-permutation rejection keeps the draw uniform over derangements
    everyone = np.arange(n)
    while True:
        perm = rng.permutation(n)
        if not np.any(perm == everyone):
            return perm


def generate_instance(n: int, seed: int, xi_mode: XiMode = LNLN) -> NetworkInstance:
    d = connectivity_radius(n, xi_mode)
    positions = stream(seed, 'nodes').random((n, 2))
    perm = random_derangement(n, stream(seed, 'permutation'))
    commodities = np.column_stack([np.arange(n), perm])
    logger.debug(f"[Geometry] generated n={n} seed={seed} d={d:.6g}")
    return NetworkInstance.create(positions, commodities, seed=seed, xi_mode=xi_mode)


def count_nodes_in_rect(inst: NetworkInstance, rect) -> int:
    """Nodes inside the closed rectangle (x0, y0, x1, y1)."""
    x0, y0, x1, y1 = rect
    xs, ys = inst.positions[:, 0], inst.positions[:, 1]
    return int(np.count_nonzero((xs >= x0) & (xs <= x1) & (ys >= y0) & (ys <= y1)))
