import unittest
from fractions import Fraction

import numpy as np

from common.errors import InvalidArgument, OracleScaleExceeded
from flow.concurrent import concurrent_flow_approx, solution_to_json
from flow.exact import ORACLE_REL_TOL, concurrent_flow_exact, concurrent_flow_feasible
from flow.maxflow import max_flow
from flow.network import CommoditySet, FlowNetwork, FlowSolution
from flow.simplex import INFEASIBLE, OPTIMAL, LinearProgram
from flow.verify import verify_solution
from geometry.graph import build_graph
from geometry.network import generate_instance
from harness.acceptance import enumerated_min_cut, oracle_instances

# commodities (0, 4) and (1, 5) both have to cross edge 2-3
SHARED_EDGE = [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]


def small_connected_instance(n, start_seed=0, xi=1.0):
    for seed in range(start_seed, start_seed + 200):
        inst = generate_instance(n, seed, xi)
        g = build_graph(inst)
        if g.is_connected():
            return inst, g
    raise AssertionError("no connected instance found")


class TestFlowNetwork(unittest.TestCase):
    def test_arcs_come_in_pairs(self):
        g = build_graph(generate_instance(200, 2))
        net = FlowNetwork.from_graph(g)
        self.assertEqual(net.num_arcs, 2 * g.num_edges)
        self.assertTrue(np.array_equal(net.reverse[net.reverse], np.arange(net.num_arcs)))
        self.assertTrue(np.array_equal(net.tails[net.reverse], net.heads))
        self.assertTrue(net.is_symmetric())

    def test_bad_arcs(self):
        with self.assertRaises(InvalidArgument):
            FlowNetwork.from_arcs(2, [(0, 0, 1)])
        with self.assertRaises(InvalidArgument):
            FlowNetwork.from_arcs(2, [(0, 1, -1)])

    def test_left_to_right_commodities(self):
        inst = generate_instance(400, 4)
        full = CommoditySet.from_instance(inst)
        crossing = CommoditySet.from_instance(inst, left_to_right=True)
        self.assertEqual(len(full), 400)
        self.assertTrue(set(crossing.pairs) <= set(full.pairs))
        for s, t in crossing.pairs:
            self.assertLess(inst.xs[s], 0.5)
            self.assertGreaterEqual(inst.xs[t], 0.5)


class TestMaxFlow(unittest.TestCase):
    def test_path(self):
        net = FlowNetwork.from_arcs(3, [(0, 1, 1), (1, 2, 1)])
        self.assertEqual(max_flow(net, {0}, {2}).value, 1)

    def test_diamond(self):
        net = FlowNetwork.from_arcs(4, [(0, 1, 2), (0, 2, 1), (1, 3, 1), (2, 3, 2)])
        result = max_flow(net, {0}, {3})
        self.assertEqual(result.value, 2)
        self.assertEqual(result.cut_capacity, 2)
        self.assertIn(0, result.source_side)
        self.assertNotIn(3, result.source_side)

    def test_terminal_sets(self):
        net = FlowNetwork.from_arcs(3, [(0, 1, 1), (1, 2, 1)])
        with self.assertRaises(InvalidArgument):
            max_flow(net, set(), {2})
        with self.assertRaises(InvalidArgument):
            max_flow(net, {0, 1}, {1, 2})

    def test_matches_cut_enumeration(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            n = int(rng.integers(4, 9))
            arcs = [(u, v, int(rng.integers(1, 6))) for u in range(n) for v in range(n)
                    if u != v and rng.random() < 0.4]
            net = FlowNetwork.from_arcs(n, arcs)
            result = max_flow(net, {0}, {n - 1})
            expected = enumerated_min_cut(n, arcs, 0, n - 1)
            self.assertAlmostEqual(result.value, expected, places=9)
            self.assertAlmostEqual(result.cut_capacity, result.value, places=9)

    def test_unit_disk_cut_certificate(self):
        inst = generate_instance(500, 6)
        net = FlowNetwork.from_graph(build_graph(inst))
        left = inst.xs < 0.5
        result = max_flow(net, np.flatnonzero(left).tolist(), np.flatnonzero(~left).tolist())
        self.assertAlmostEqual(result.cut_capacity, result.value, places=9)
        flows = np.array(result.arc_flows)
        self.assertTrue(np.all(flows <= net.capacity + 1e-9))


class TestConcurrentFlow(unittest.TestCase):
    def test_single_commodity_on_a_path(self):
        net = FlowNetwork.undirected(3, [(0, 1), (1, 2)])
        result = concurrent_flow_approx(net, CommoditySet.of([(0, 2)]), epsilon=0.05)
        self.assertTrue(result.converged)
        self.assertGreaterEqual(result.value, 0.95)
        self.assertLessEqual(result.value, 1 + 1e-9)
        self.assertTrue(verify_solution(result.solution, net))

    def test_shared_edge_halves_the_rate(self):
        net = FlowNetwork.undirected(6, SHARED_EDGE)
        result = concurrent_flow_approx(net, CommoditySet.of([(0, 4), (1, 5)]), epsilon=0.05)
        self.assertGreaterEqual(result.value, 0.95 * 0.5)
        self.assertLessEqual(result.value, 0.5 + 1e-9)
        self.assertGreaterEqual(result.upper_bound, 0.5 - 1e-9)
        self.assertTrue(verify_solution(result.solution, net))

    def test_disconnected_commodity_gives_zero(self):
        net = FlowNetwork.undirected(4, [(0, 1), (2, 3)])
        result = concurrent_flow_approx(net, CommoditySet.of([(0, 1), (0, 3)]))
        self.assertEqual(result.value, 0.0)
        self.assertEqual(result.disconnected, (1,))
        self.assertTrue(verify_solution(result.solution, net))

    def test_rejects_bad_epsilon(self):
        net = FlowNetwork.undirected(3, [(0, 1), (1, 2)])
        for eps in (0.0, 1.0, -0.1):
            with self.assertRaises(InvalidArgument):
                concurrent_flow_approx(net, CommoditySet.of([(0, 2)]), epsilon=eps)

    def test_rejects_directed_network(self):
        net = FlowNetwork.from_arcs(3, [(0, 1, 1), (1, 2, 1)])
        with self.assertRaises(InvalidArgument):
            concurrent_flow_approx(net, CommoditySet.of([(0, 2)]))

    def test_random_instance_is_feasible(self):
        inst, g = small_connected_instance(120, xi='lnln')
        net = FlowNetwork.from_graph(g)
        comm = CommoditySet.from_instance(inst, left_to_right=True)
        result = concurrent_flow_approx(net, comm, epsilon=0.2, max_phases=300)
        self.assertGreater(result.value, 0)
        self.assertLessEqual(result.value, result.upper_bound * (1 + 1e-9))
        self.assertTrue(verify_solution(result.solution, net))
        payload = solution_to_json(result, net)
        self.assertEqual(payload['lambda'], result.value)
        self.assertEqual(len(payload['edge_loads']), len(result.solution.utilization))

    def test_approximation_brackets_the_optimum(self):
        for net, comm in oracle_instances(30, seed=11):
            exact = concurrent_flow_exact(net, comm)
            result = concurrent_flow_approx(net, comm, epsilon=0.1)
            self.assertTrue(result.converged)
            self.assertLessEqual(result.value, float(exact) * (1 + ORACLE_REL_TOL))
            self.assertGreaterEqual(result.value, 0.9 * float(exact) - 1e-9)


class TestExactOracle(unittest.TestCase):
    def test_single_edge(self):
        net = FlowNetwork.undirected(2, [(0, 1)], capacity=2.0)
        self.assertEqual(concurrent_flow_exact(net, CommoditySet.of([(0, 1)])), Fraction(2))

    def test_shared_edge(self):
        net = FlowNetwork.undirected(6, SHARED_EDGE)
        comm = CommoditySet.of([(0, 4), (1, 5)])
        self.assertEqual(concurrent_flow_exact(net, comm), Fraction(1, 2))

    def test_two_routes_add_up(self):
        net = FlowNetwork.undirected(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
        self.assertEqual(concurrent_flow_exact(net, CommoditySet.of([(0, 3)])), Fraction(2))

    def test_no_path_gives_zero(self):
        net = FlowNetwork.undirected(4, [(0, 1), (2, 3)])
        comm = CommoditySet.of([(0, 3)])
        self.assertEqual(concurrent_flow_exact(net, comm), 0)
        self.assertTrue(concurrent_flow_feasible(net, comm, 0))
        self.assertFalse(concurrent_flow_feasible(net, comm, Fraction(1, 10)))

    def test_refuses_large_networks(self):
        net = FlowNetwork.undirected(13, [(k, k + 1) for k in range(12)])
        with self.assertRaises(OracleScaleExceeded):
            concurrent_flow_exact(net, CommoditySet.of([(0, 12)]))

    def test_feasibility_brackets_the_optimum(self):
        inst, g = small_connected_instance(6, xi=3.0)
        net = FlowNetwork.from_graph(g)
        comm = CommoditySet.of(inst.commodities[:3].tolist())
        lam = concurrent_flow_exact(net, comm)
        self.assertGreater(lam, 0)
        self.assertTrue(concurrent_flow_feasible(net, comm, lam))
        self.assertTrue(concurrent_flow_feasible(net, comm, lam * Fraction(99, 100)))
        self.assertFalse(concurrent_flow_feasible(net, comm, lam * Fraction(101, 100)))


class TestSimplex(unittest.TestCase):
    def test_small_program(self):
        # max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
        lp = LinearProgram(2)
        lp.add_constraint({0: 1, 1: 2}, '<=', 4)
        lp.add_constraint({0: 3, 1: 1}, '<=', 6)
        lp.set_objective({0: 1, 1: 1})
        result = lp.solve()
        self.assertEqual(result.status, OPTIMAL)
        self.assertEqual(result.value, Fraction(14, 5))
        self.assertEqual(result.x, (Fraction(8, 5), Fraction(6, 5)))

    def test_infeasible_program(self):
        lp = LinearProgram(1)
        lp.add_constraint({0: 1}, '>=', 2)
        lp.add_constraint({0: 1}, '<=', 1)
        self.assertFalse(lp.is_feasible())
        self.assertEqual(lp.solve().status, INFEASIBLE)

    def test_unknown_sense(self):
        with self.assertRaises(InvalidArgument):
            LinearProgram(1).add_constraint({0: 1}, '<', 1)


class TestVerifySolution(unittest.TestCase):
    def setUp(self):
        self.net = FlowNetwork.undirected(3, [(0, 1), (1, 2)])

    def path_solution(self, amount):
        flows = ({0: amount, 1: -amount, 2: amount, 3: -amount},)
        return FlowSolution.build(self.net, [(0, 2)], flows, amount)

    def test_zero_flow_is_feasible(self):
        self.assertTrue(verify_solution(FlowSolution.zero(self.net, [(0, 2)]), self.net))

    def test_full_path_is_feasible(self):
        self.assertTrue(verify_solution(self.path_solution(1.0), self.net))

    def test_over_capacity(self):
        self.assertFalse(verify_solution(self.path_solution(1.001), self.net))

    def test_broken_conservation(self):
        sol = FlowSolution.build(self.net, [(0, 2)], ({0: 1.0, 1: -1.0},), 1.0)
        self.assertFalse(verify_solution(sol, self.net))

    def test_broken_skew_symmetry(self):
        sol = FlowSolution.build(self.net, [(0, 2)], ({0: 0.5, 2: 0.5},), 0.5)
        self.assertFalse(verify_solution(sol, self.net))

    def test_dimension_mismatch(self):
        other = FlowNetwork.undirected(3, [(0, 1)])
        with self.assertRaises(InvalidArgument):
            verify_solution(self.path_solution(1.0), other)


if __name__ == '__main__':
    unittest.main()
