import math
import unittest
from dataclasses import replace

import numpy as np

from common.errors import InvalidArgument, RoutingFailure, UndefinedThroughput
from flow.network import CommoditySet, FlowNetwork
from flow.verify import verify_solution
from geometry.graph import build_graph
from geometry.network import NetworkInstance, generate_instance
from routing.grid import DEFAULT_C_GRID, build_grid, cells_per_side, grid_radius
from routing.router import (
    achievable_throughput,
    compute_loads,
    feasible_rate,
    link_count_ratios,
    loads_to_csv,
    route_commodity,
    routed_solution,
)


def c_grid_for(n, m):
    return n / (m * m * math.log(n))


class TestGridPartition(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.inst = generate_instance(10 ** 4, 1)
        cls.grid = build_grid(cls.inst, 2.0)

    def test_cells_per_side(self):
        self.assertEqual(cells_per_side(10 ** 4, 2.0), 23)
        self.assertEqual(self.grid.m, 23)
        self.assertAlmostEqual(self.grid.d_grid, math.sqrt(5) / 23, places=12)
        self.assertAlmostEqual(grid_radius(10 ** 4, 2.0), self.grid.d_grid, places=12)

    def test_default_c_grid(self):
        self.assertEqual(DEFAULT_C_GRID, 19)

    def test_every_node_in_exactly_one_cell(self):
        grid = self.grid
        self.assertEqual(int(grid.occupancy.sum()), 10 ** 4)
        members = np.concatenate(list(grid.members.values()))
        self.assertTrue(np.array_equal(np.sort(members), np.arange(10 ** 4)))
        for v in (0, 17, 9999):
            self.assertIn(v, grid.nodes_in(grid.cell_of_node(v)))

    def test_cell_indices_follow_coordinates(self):
        grid = self.grid
        for v in range(0, 10 ** 4, 997):
            x, y = self.inst.positions[v]
            i, j = grid.cell_of_node(v)
            self.assertEqual(j, min(int(x * 23), 22))
            self.assertEqual(i, min(int(y * 23), 22))

    def test_effective_c_grid(self):
        self.assertAlmostEqual(self.grid.c_grid, 10 ** 4 / (23 * 23 * math.log(10 ** 4)), places=12)
        self.assertEqual(self.grid.requested_c_grid, 2.0)

    def test_center_boundaries(self):
        self.assertEqual(self.grid.center_boundaries(), (11, 12))
        even = build_grid(generate_instance(2000, 0), c_grid_for(2000, 4))
        self.assertEqual(even.m, 4)
        self.assertEqual(even.center_boundaries(), (2,))

    def test_too_few_cells(self):
        with self.assertRaises(InvalidArgument):
            build_grid(generate_instance(50, 0))
        with self.assertRaises(InvalidArgument):
            cells_per_side(100, 0.0)

    def test_occupancy_concentrates(self):
        occupied = banded = 0
        for seed in range(100):
            grid = build_grid(generate_instance(10 ** 4, seed), 2.0)
            occupied += grid.min_occupancy >= 1
            mean = grid.c_grid * math.log(10 ** 4)
            if 0.1 * mean <= grid.min_occupancy and grid.max_occupancy <= 1.9 * mean:
                banded += 1
        self.assertGreaterEqual(occupied, 99)
        # 91 of seeds 0..99 fall in the band; the largest of 529 cells sets the misses
        self.assertGreaterEqual(banded, 88)

    def test_link_counts_near_expectation(self):
        ratios = link_count_ratios(self.grid)
        self.assertEqual(ratios.size, 2 * 23 * 22)
        inside = np.count_nonzero((ratios >= 0.2) & (ratios <= 5.0))
        self.assertGreaterEqual(inside / ratios.size, 0.95)


class TestRouteCommodity(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.grid = build_grid(generate_instance(10 ** 4, 1), 2.0)

    def test_right_then_up(self):
        path = route_commodity(self.grid, (2, 1), (3, 4))
        self.assertEqual(path.cells, ((2, 1), (2, 2), (2, 3), (2, 4), (3, 4)))
        self.assertEqual(path.hops, 4)

    def test_same_cell(self):
        self.assertEqual(route_commodity(self.grid, (7, 7), (7, 7)).cells, ((7, 7),))

    def test_vertical_only(self):
        path = route_commodity(self.grid, (5, 5), (2, 5))
        self.assertEqual(path.cells, ((5, 5), (4, 5), (3, 5), (2, 5)))

    def test_left_then_down(self):
        path = route_commodity(self.grid, (2, 4), (0, 1))
        self.assertEqual(path.cells, ((2, 4), (2, 3), (2, 2), (2, 1), (1, 1), (0, 1)))

    def test_paths_are_shortest(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            a = tuple(int(v) for v in rng.integers(0, 23, 2))
            b = tuple(int(v) for v in rng.integers(0, 23, 2))
            path = route_commodity(self.grid, a, b)
            self.assertEqual(path.hops, abs(a[0] - b[0]) + abs(a[1] - b[1]))
            self.assertEqual(len(set(path.cells)), len(path.cells))
            self.assertEqual((path.cells[0], path.cells[-1]), (a, b))

    def test_outside_grid(self):
        with self.assertRaises(InvalidArgument):
            route_commodity(self.grid, (0, 0), (23, 0))


class TestLoads(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.inst = generate_instance(10 ** 4, 1)
        cls.grid = build_grid(cls.inst, 2.0)

    def test_single_commodity(self):
        grid = self.grid
        s = int(grid.nodes_in((2, 1))[0])
        t = int(grid.nodes_in((3, 4))[0])
        loads = compute_loads(grid, CommoditySet.of([(s, t)]))
        expected = {((2, 1), (2, 2)): 1, ((2, 2), (2, 3)): 1, ((2, 3), (2, 4)): 1, ((2, 4), (3, 4)): 1}
        self.assertEqual(loads.link_loads, expected)
        self.assertEqual(loads.max_load, 1)
        self.assertEqual(loads.strip_bounds[4], 1)
        self.assertEqual(loads.vertical_by_column[4], 1)
        self.assertTrue(loads.strip_bound_holds)
        self.assertEqual(loads.center_cut_load, 0)

    def test_left_to_right_profile(self):
        comm = CommoditySet.from_instance(self.inst, left_to_right=True)
        loads = compute_loads(self.grid, comm)
        self.assertEqual(loads.commodities, len(comm))
        self.assertTrue(loads.strip_bound_holds)
        self.assertGreater(loads.center_cut_load, 0)
        self.assertGreater(loads.center_unit_load, 0)
        self.assertLessEqual(loads.center_unit_load, loads.max_unit_load)
        self.assertEqual(sum(loads.strip_bounds), len(comm))
        gamma = achievable_throughput(loads)
        self.assertAlmostEqual(gamma, 1.0 / loads.max_unit_load, places=12)
        self.assertAlmostEqual(achievable_throughput(loads, 2.5), 2.5 * gamma, places=12)

    def test_gamma_ignores_in_cell_spreading(self):
        grid = self.grid
        s = int(grid.nodes_in((2, 1))[0])
        t = int(grid.nodes_in((2, 2))[0])
        loads = compute_loads(grid, CommoditySet.of([(s, t)]))
        size_s, size_t = int(grid.occupancy[(2, 1)]), int(grid.occupancy[(2, 2)])
        self.assertAlmostEqual(loads.max_unit_load, 1.0 / (size_s * size_t), places=12)
        self.assertAlmostEqual(loads.intra_unit_load, 1.0 / min(size_s, size_t), places=12)
        self.assertAlmostEqual(achievable_throughput(loads), size_s * size_t, places=9)
        self.assertAlmostEqual(feasible_rate(loads), min(size_s, size_t), places=9)
        with self.assertRaises(InvalidArgument):
            feasible_rate(loads, -1.0)

    def test_loads_csv(self):
        comm = CommoditySet.from_instance(self.inst, left_to_right=True)
        loads = compute_loads(self.grid, comm)
        lines = loads_to_csv(loads).splitlines()
        self.assertEqual(lines[0], 'cell_i,cell_j,direction,load,physical_links')
        self.assertEqual(len(lines) - 1, len(loads.link_loads))

    def test_throughput_from_peak(self):
        loads = compute_loads(self.grid, CommoditySet.of([]))
        self.assertAlmostEqual(achievable_throughput(replace(loads, max_unit_load=10.0)), 0.1, places=12)
        with self.assertRaises(UndefinedThroughput):
            achievable_throughput(loads)
        with self.assertRaises(InvalidArgument):
            achievable_throughput(replace(loads, max_unit_load=10.0), 0.0)


class TestRoutingFailure(unittest.TestCase):
    def test_empty_intermediate_cell(self):
        positions = [(0.1, 0.1), (0.2, 0.1), (0.1, 0.2),
                     (0.8, 0.1), (0.9, 0.1), (0.8, 0.2),
                     (0.5, 0.8), (0.4, 0.9), (0.6, 0.9)]
        commodities = [(v, (v + 1) % 9) for v in range(9)]
        inst = NetworkInstance.create(positions, commodities, xi_mode=1.0)
        grid = build_grid(inst, 1.0 / math.log(9))
        self.assertEqual(grid.m, 3)
        with self.assertRaises(RoutingFailure) as ctx:
            compute_loads(grid, CommoditySet.of([(0, 3)]))
        self.assertEqual(ctx.exception.cell, (0, 1))


class TestRoutedSolution(unittest.TestCase):
    def test_routed_flow_is_feasible(self):
        inst = generate_instance(150, 2)
        grid = build_grid(inst, 3.3)
        self.assertEqual(grid.m, 3)
        self.assertGreaterEqual(grid.min_occupancy, 1)
        net = FlowNetwork.from_graph(build_graph(inst, 1.0, grid.d_grid + 1e-9))
        comm = CommoditySet.from_instance(inst, left_to_right=True)
        loads = compute_loads(grid, comm)
        gamma = feasible_rate(loads)
        self.assertLessEqual(gamma, achievable_throughput(loads))
        sol = routed_solution(grid, net, comm, gamma)
        self.assertTrue(verify_solution(sol, net))
        self.assertAlmostEqual(max(sol.utilization.values()), 1.0, places=9)

    def test_missing_links(self):
        inst = generate_instance(150, 2)
        grid = build_grid(inst, 3.3)
        net = FlowNetwork.from_graph(build_graph(inst, 1.0, 0.01))
        comm = CommoditySet.from_instance(inst, left_to_right=True)
        with self.assertRaises(InvalidArgument):
            routed_solution(grid, net, comm, 0.1)


if __name__ == '__main__':
    unittest.main()
