"""Square-cell partition of the unit square for the routing lower bound."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from common.errors import InvalidArgument
from common.logger_config import setup_logger
from geometry.network import NetworkInstance
from stats.chernoff import chernoff_theta

logger = setup_logger(__name__)

# cells must hold more than ln n / theta nodes for every cell to be occupied w.h.p.
DEFAULT_C_GRID = math.ceil(2 / chernoff_theta(0.5).theta)

Cell = tuple[int, int]


@dataclass(frozen=True, eq=False)
class GridPartition:
    """``m`` x ``m`` cells; cell (i, j) is row i (from y) and column j (from x).

    Cells are half-open except for the last row and column, which are closed at 1.
    """

    n: int
    m: int
    c_grid: float
    requested_c_grid: float
    cell_of: np.ndarray
    members: dict
    occupancy: np.ndarray

    @property
    def side(self) -> float:
        return 1.0 / self.m

    @property
    def cell_area(self) -> float:
        return 1.0 / (self.m * self.m)

    @property
    def d_grid(self) -> float:
        """Range that reaches any node of a horizontally or vertically adjacent cell."""
        return math.sqrt(5.0) / self.m

    @property
    def min_occupancy(self) -> int:
        return int(self.occupancy.min())

    @property
    def max_occupancy(self) -> int:
        return int(self.occupancy.max())

    def contains(self, cell: Cell) -> bool:
        i, j = cell
        return 0 <= i < self.m and 0 <= j < self.m

    def nodes_in(self, cell: Cell) -> np.ndarray:
        return self.members.get(tuple(cell), _EMPTY)

    def cell_of_node(self, v: int) -> Cell:
        i, j = self.cell_of[v]
        return int(i), int(j)

    def column_counts(self) -> np.ndarray:
        return self.occupancy.sum(axis=0)

    def center_boundaries(self) -> tuple[int, ...]:
        """Column boundaries at (or next to) x = 1/2; boundary b separates columns b-1 and b."""
        if self.m % 2 == 0:
            return (self.m // 2,)
        return ((self.m - 1) // 2, (self.m + 1) // 2)


_EMPTY = np.empty(0, dtype=np.int64)
_EMPTY.flags.writeable = False


def cells_per_side(n: int, c_grid: float) -> int:
    if n < 2:
        raise InvalidArgument(f"n must be >= 2, got {n}")
    if not c_grid > 0 or not math.isfinite(c_grid):
        raise InvalidArgument(f"c_grid must be positive and finite, got {c_grid}")
    return int(round(math.sqrt(n / (c_grid * math.log(n)))))


def grid_radius(n: int, c_grid: float = DEFAULT_C_GRID) -> float:
    m = cells_per_side(n, c_grid)
    if m < 2:
        raise InvalidArgument(f"n={n} with c_grid={c_grid} gives {m} cells per side; need >= 2")
    return math.sqrt(5.0) / m


def build_grid(inst: NetworkInstance, c_grid: float = DEFAULT_C_GRID) -> GridPartition:
    n = inst.n
    m = cells_per_side(n, c_grid)
    if m < 2:
        raise InvalidArgument(f"n={n} with c_grid={c_grid} gives {m} cells per side; need >= 2")
    cols = np.minimum((inst.positions[:, 0] * m).astype(np.int64), m - 1)
    rows = np.minimum((inst.positions[:, 1] * m).astype(np.int64), m - 1)
    cell_of = np.column_stack([rows, cols])
    cell_of.flags.writeable = False

    occupancy = np.zeros((m, m), dtype=np.int64)
    np.add.at(occupancy, (rows, cols), 1)
    order = np.lexsort((np.arange(n), cols, rows))
    members = {}
    start = 0
    for (i, j), count in np.ndenumerate(occupancy):
        if count:
            nodes = np.sort(order[start:start + count])
            nodes.flags.writeable = False
            members[(int(i), int(j))] = nodes
            start += count
    occupancy.flags.writeable = False

    effective = n / (m * m * math.log(n))
    grid = GridPartition(n=n, m=m, c_grid=effective, requested_c_grid=float(c_grid),
                         cell_of=cell_of, members=members, occupancy=occupancy)
    logger.info(f"[Routing] grid {m}x{m} for n={n} (c_grid {c_grid} -> {effective:.4g}), "
                f"occupancy {grid.min_occupancy}..{grid.max_occupancy}")
    return grid
