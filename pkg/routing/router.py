"""L-shaped cell routing, link loads and the throughput it sustains.

A commodity first moves along its row to the destination column, then along
that column to the destination row. Traffic entering a cell is spread evenly
over its nodes and every hop between adjacent cells is split over all
|A|*|B| physical links, so a directed cell link carrying L commodities puts
L*gamma/(|A||B|) on each of its physical links. gamma is set by that
inter-cell peak; the in-cell spreading is reported separately as
``intra_unit_load`` and ``feasible_rate`` takes both into account.
"""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass

import numpy as np

from common.errors import InvalidArgument, RoutingFailure, UndefinedThroughput
from common.logger_config import setup_logger
from flow.network import CommoditySet, FlowNetwork, FlowSolution
from routing.grid import Cell, GridPartition

logger = setup_logger(__name__)

_DIRECTIONS = {(0, 1): 'right', (0, -1): 'left', (1, 0): 'up', (-1, 0): 'down'}


@dataclass(frozen=True)
class CellPath:
    cells: tuple[Cell, ...]

    @property
    def hops(self) -> int:
        return len(self.cells) - 1

    def links(self):
        return zip(self.cells, self.cells[1:])


def route_commodity(grid: GridPartition, src_cell: Cell, dst_cell: Cell) -> CellPath:
    src_cell, dst_cell = tuple(map(int, src_cell)), tuple(map(int, dst_cell))
    for cell in (src_cell, dst_cell):
        if not grid.contains(cell):
            raise InvalidArgument(f"cell {cell} outside the {grid.m}x{grid.m} grid")
    i, j = src_cell
    di, dj = dst_cell
    cells = [(i, j)]
    step = 1 if dj > j else -1
    while j != dj:
        j += step
        cells.append((i, j))
    step = 1 if di > i else -1
    while i != di:
        i += step
        cells.append((i, j))
    return CellPath(tuple(cells))


@dataclass(frozen=True)
class LoadProfile:
    """Commodity counts per directed cell link plus the per-physical-link peak."""

    m: int
    link_loads: dict
    physical_links: dict
    max_load: int
    max_unit_load: float
    center_cut_load: int
    center_unit_load: float
    max_vertical_load: int
    boundary_loads: tuple[int, ...]
    strip_bounds: tuple[int, ...]
    vertical_by_column: tuple[int, ...]
    commodities: int = 0
    intra_unit_load: float = 0.0

    @property
    def center_dominates(self) -> bool:
        return all(load <= self.center_cut_load for load in self.boundary_loads)

    @property
    def strip_bound_holds(self) -> bool:
        return all(v <= b for v, b in zip(self.vertical_by_column, self.strip_bounds))


def _links_between(grid: GridPartition, a: Cell, b: Cell) -> int:
    return int(grid.occupancy[a]) * int(grid.occupancy[b])


def _cell_paths(grid: GridPartition, comm: CommoditySet) -> list[CellPath]:
    paths = []
    for s, t in comm.pairs:
        if not (0 <= s < grid.n and 0 <= t < grid.n):
            raise InvalidArgument(f"commodity ({s}, {t}) outside the grid's instance")
        path = route_commodity(grid, grid.cell_of_node(s), grid.cell_of_node(t))
        for cell in path.cells[1:-1]:
            if grid.occupancy[cell] == 0:
                raise RoutingFailure(cell)
        paths.append(path)
    return paths


def compute_loads(grid: GridPartition, comm: CommoditySet) -> LoadProfile:
    """Route every commodity and count them per directed cell link.

    Raises ``RoutingFailure`` naming the first empty cell a route would need.
    """
    paths = _cell_paths(grid, comm)
    loads = Counter()
    for path in paths:
        loads.update(path.links())

    physical = {}
    for a, b in loads:
        key = min(a, b), max(a, b)
        physical.setdefault(key, _links_between(grid, a, b))

    unit = 0.0
    for (a, b), count in physical.items():
        per_link = (loads.get((a, b), 0) + loads.get((b, a), 0)) / count
        unit = max(unit, per_link)

    m = grid.m
    boundary = [0] * (m + 1)
    vertical = [0] * m
    for ((i, j), (i2, j2)), count in loads.items():
        if i == i2:
            b = max(j, j2)
            boundary[b] = max(boundary[b], count)
        else:
            vertical[j] = max(vertical[j], count)

    centers = grid.center_boundaries()
    center_load = max(boundary[b] for b in centers)
    center_unit = 0.0
    for (a, b), count in physical.items():
        if a[0] == b[0] and max(a[1], b[1]) in centers:
            center_unit = max(center_unit, (loads.get((a, b), 0) + loads.get((b, a), 0)) / count)
    others = tuple(boundary[b] for b in range(1, m) if b not in centers)

    sinks = Counter(grid.cell_of_node(t)[1] for _, t in comm.pairs)
    strip = tuple(sinks.get(j, 0) for j in range(m))

    profile = LoadProfile(
        m=m, link_loads=dict(loads), physical_links=physical,
        max_load=max(loads.values(), default=0), max_unit_load=unit,
        center_cut_load=center_load, center_unit_load=center_unit,
        max_vertical_load=max(vertical), boundary_loads=others,
        strip_bounds=strip, vertical_by_column=tuple(vertical), commodities=len(paths),
        intra_unit_load=_intra_cell_peak(grid, comm),
    )
    if not profile.center_dominates:
        logger.warning(f"[Routing] a column boundary carries more than the center cut "
                       f"({max(others)} > {center_load})")
    if not profile.strip_bound_holds:
        logger.warning("[Routing] vertical load exceeds the strip bound")
    logger.debug(f"[Routing] {len(paths)} commodities, max cell-link load {profile.max_load}, "
                 f"per-link peak {unit:.4g}")
    return profile


def _intra_cell_peak(grid: GridPartition, comm: CommoditySet) -> float:
    """Peak per-unit load on links inside one cell.

    A source spreads 1/|C| to each cell mate and a sink collects 1/|C| from
    each, so link (a, b) inside C carries (w(a) + w(b))/|C| where w counts the
    source and sink roles a node plays.
    """
    weight = Counter()
    for s, t in comm.pairs:
        weight[s] += 1
        weight[t] += 1
    best = 0.0
    by_cell = {}
    for v, w in weight.items():
        by_cell.setdefault(grid.cell_of_node(v), []).append(w)
    for cell, ws in by_cell.items():
        size = int(grid.occupancy[cell])
        if size < 2:
            continue
        ws.sort(reverse=True)
        top = ws[0] + (ws[1] if len(ws) > 1 else 0)
        best = max(best, top / size)
    return best


def achievable_throughput(loads: LoadProfile, c: float = 1.0) -> float:
    """gamma = c / (peak commodities per physical link)."""
    if not c > 0:
        raise InvalidArgument(f"capacity must be positive, got {c}")
    if loads.max_unit_load <= 0:
        raise UndefinedThroughput("no commodity uses any link; throughput is undefined")
    return c / loads.max_unit_load


def feasible_rate(loads: LoadProfile, c: float = 1.0) -> float:
    """Largest rate at which ``routed_solution`` respects every capacity,
    in-cell spreading included."""
    if not c > 0:
        raise InvalidArgument(f"capacity must be positive, got {c}")
    peak = max(loads.max_unit_load, loads.intra_unit_load)
    if peak <= 0:
        raise UndefinedThroughput("no commodity uses any link; throughput is undefined")
    return c / peak


def routed_solution(grid: GridPartition, net: FlowNetwork, comm: CommoditySet, gamma: float) -> FlowSolution:
    """Explicit per-arc flows of the routed fluid at rate ``gamma``.

    ``net`` must contain every link inside a cell and between adjacent cells,
    which holds for a unit-disk graph at radius >= ``grid.d_grid``. The flow
    dictionaries grow with |A||B| per hop, so this is meant for small grids.
    """
    if gamma < 0:
        raise InvalidArgument(f"rate must be nonnegative, got {gamma}")
    if net.num_nodes != grid.n:
        raise InvalidArgument("network and grid describe different node sets")
    index = net.arc_index
    reverse = net.reverse

    def push(flow, u, v, amount):
        try:
            a = index[(u, v)]
        except KeyError:
            raise InvalidArgument(f"network lacks link ({u}, {v}) needed by the routing") from None
        flow[a] = flow.get(a, 0.0) + amount
        r = int(reverse[a])
        flow[r] = flow.get(r, 0.0) - amount

    flows = []
    for (s, t), path in zip(comm.pairs, _cell_paths(grid, comm)):
        flow = {}
        first = grid.nodes_in(path.cells[0]).tolist()
        for v in first:
            if v != s:
                push(flow, s, v, gamma / len(first))
        for a_cell, b_cell in path.links():
            a_nodes = grid.nodes_in(a_cell).tolist()
            b_nodes = grid.nodes_in(b_cell).tolist()
            share = gamma / (len(a_nodes) * len(b_nodes))
            for u in a_nodes:
                for v in b_nodes:
                    push(flow, u, v, share)
        last = grid.nodes_in(path.cells[-1]).tolist()
        for v in last:
            if v != t:
                push(flow, v, t, gamma / len(last))
        flows.append({a: f for a, f in flow.items() if f != 0.0})
    return FlowSolution.build(net, comm.pairs, flows, gamma)


def loads_to_csv(loads: LoadProfile) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(['cell_i', 'cell_j', 'direction', 'load', 'physical_links'])
    for (a, b), count in sorted(loads.link_loads.items()):
        direction = _DIRECTIONS[(b[0] - a[0], b[1] - a[1])]
        links = loads.physical_links[(min(a, b), max(a, b))]
        writer.writerow([a[0], a[1], direction, count, links])
    return buf.getvalue()


def link_count_ratios(grid: GridPartition) -> np.ndarray:
    """|A||B| / (c_grid ln n)² for every pair of horizontally or vertically adjacent cells."""
    expected = (grid.c_grid * np.log(grid.n)) ** 2
    occ = grid.occupancy.astype(float)
    horizontal = (occ[:, :-1] * occ[:, 1:]).ravel()
    vertical = (occ[:-1, :] * occ[1:, :]).ravel()
    return np.concatenate([horizontal, vertical]) / expected
