import json
import os
import tempfile
import unittest
from unittest import mock

from common.errors import InvalidArgument, RoutingFailure
from harness.acceptance import (
    CHECKS,
    RESTRICTION_BAND,
    CheckResult,
    check_cells_occupied,
    check_chernoff,
    check_concurrent_oracle,
    check_cut_edge_mean,
    check_empty_bins,
    check_left_right_share,
    check_maxflow_enumeration,
    oracle_instances,
    restriction_ratio,
    run_acceptance,
    run_check,
)
from harness.cli import main
from tests.test_harness import quiet


class TestChecksAtReducedSize(unittest.TestCase):
    def assertPasses(self, result: CheckResult):
        self.assertTrue(result.passed, msg=f"{result.name}: {result.detail}")

    def test_maxflow_matches_enumeration(self):
        self.assertPasses(check_maxflow_enumeration(graphs=120, seed=3))

    def test_concurrent_flow_against_oracle(self):
        self.assertPasses(check_concurrent_oracle(instances=30, epsilon=0.05, seed=7))

    def test_cut_edge_mean(self):
        self.assertPasses(check_cut_edge_mean(seeds=10))

    def test_chernoff_bounds(self):
        self.assertPasses(check_chernoff(samples=5000, seed=2))

    def test_empty_bins(self):
        self.assertPasses(check_empty_bins(m=2 * 10 ** 4, seeds=10))

    def test_left_right_share(self):
        self.assertPasses(check_left_right_share(n=10 ** 4, seeds=20))

    def test_cells_occupied(self):
        self.assertPasses(check_cells_occupied(seeds=20))


class TestOracleInstances(unittest.TestCase):
    def test_sizes_stay_in_range(self):
        seen = set()
        for net, comm in oracle_instances(40, seed=1):
            self.assertTrue(4 <= net.num_nodes <= 10)
            self.assertTrue(2 <= len(comm) <= 4)
            seen.add((net.num_nodes, len(comm)))
        self.assertGreater(len(seen), 5)


class TestRestrictionRatio(unittest.TestCase):
    def test_ratio_stays_in_band(self):
        lo, hi = RESTRICTION_BAND
        for n in (64, 128, 256):
            ratio = restriction_ratio(n, seed=0)
            self.assertGreaterEqual(ratio, lo, msg=f"n={n}")
            self.assertLessEqual(ratio, hi, msg=f"n={n}")


class TestRunAcceptance(unittest.TestCase):
    def test_unknown_check(self):
        with self.assertRaises(InvalidArgument):
            run_check('everything')

    def test_library_error_fails_the_check(self):
        def broken():
            raise RoutingFailure((0, 1))

        with mock.patch.dict(CHECKS, {'broken': broken}):
            result = run_check('broken')
        self.assertFalse(result.passed)
        self.assertIn('(0, 1)', result.detail)

    def test_selected_checks_only(self):
        results = run_acceptance(['chernoff'])
        self.assertEqual([r.name for r in results], ['chernoff'])
        self.assertGreater(results[0].wall_ms, 0)

    def test_cli_writes_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'acceptance.json')
            stack, out = quiet()
            with stack:
                code = main(['acceptance', '--only', 'chernoff', '--out', path])
            self.assertEqual(code, 0)
            with open(path) as f:
                report = json.load(f)
            self.assertEqual(report[0]['name'], 'chernoff')
            self.assertTrue(report[0]['passed'])
            self.assertEqual(json.loads(out.getvalue()), report)


if __name__ == '__main__':
    unittest.main()
