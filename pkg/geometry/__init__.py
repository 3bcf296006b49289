from geometry.cut import arc_area, expected_cut_edges
from geometry.graph import CutStats, UnitDiskGraph, build_graph, count_cut_edges
from geometry.network import (
    LNLN,
    NetworkInstance,
    Point,
    connectivity_radius,
    count_nodes_in_rect,
    generate_instance,
    parse_xi_mode,
    resolve_xi,
)

__all__ = [
    'LNLN', 'NetworkInstance', 'Point', 'UnitDiskGraph', 'CutStats',
    'connectivity_radius', 'generate_instance', 'build_graph', 'count_cut_edges',
    'arc_area', 'expected_cut_edges', 'count_nodes_in_rect', 'parse_xi_mode', 'resolve_xi',
]
