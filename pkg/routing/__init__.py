from routing.grid import DEFAULT_C_GRID, GridPartition, build_grid, cells_per_side, grid_radius
from routing.router import (
    CellPath,
    LoadProfile,
    achievable_throughput,
    compute_loads,
    feasible_rate,
    link_count_ratios,
    loads_to_csv,
    route_commodity,
    routed_solution,
)

__all__ = [
    'CellPath', 'DEFAULT_C_GRID', 'GridPartition', 'LoadProfile', 'achievable_throughput',
    'build_grid', 'cells_per_side', 'compute_loads', 'feasible_rate', 'grid_radius', 'link_count_ratios',
    'loads_to_csv', 'route_commodity', 'routed_solution',
]
