import math
import unittest

import numpy as np

from antenna.beams import beam_count, beam_cut_edges, straddling_pairs
from antenna.models import AntennaModel, CutSchedule, Variant, schedule_to_csv, separation_angle, validate_schedule
from antenna.occupancy import expected_empty_bins, simulate_empty_bins, strip_occupancy, transmitter_reach
from antenna.omni import disk_centers, omni_cut_upper, omni_disk_counts, omni_schedule
from common.errors import InvalidArgument
from geometry.network import NetworkInstance, connectivity_radius, generate_instance

SINGLE = AntennaModel(Variant.SINGLE_BEAM)
MULTI = AntennaModel(Variant.MULTI_BEAM)


def hand_instance(positions):
    n = len(positions)
    return NetworkInstance.create(positions, [(v, (v + 1) % n) for v in range(n)], xi_mode=1.0)


class TestAntennaModel(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(AntennaModel.parse('multi-beam').variant, Variant.MULTI_BEAM)
        self.assertFalse(AntennaModel.parse('omni').is_beam)
        with self.assertRaises(InvalidArgument):
            AntennaModel.parse('phased-array')

    def test_beam_models_need_positive_resolution(self):
        with self.assertRaises(InvalidArgument):
            AntennaModel(Variant.SINGLE_BEAM, 0.0)

    def test_separation_angle(self):
        self.assertAlmostEqual(separation_angle((0, 0), (1, 0), (0, 1)), math.pi / 2, places=12)
        self.assertAlmostEqual(separation_angle((0, 0), (1, 0), (2, 0)), 0.0, places=12)
        self.assertAlmostEqual(separation_angle((0, 0), (1, 0), (-1, 0)), math.pi, places=12)


class TestOmni(unittest.TestCase):
    def test_upper_bound(self):
        self.assertAlmostEqual(omni_cut_upper(100, 0.1), 6.3662, places=4)
        self.assertAlmostEqual(omni_cut_upper(100, 2 / (10 * math.pi)), 10.0, places=12)
        with self.assertRaises(InvalidArgument):
            omni_cut_upper(100, 0.0)
        with self.assertRaises(InvalidArgument):
            omni_cut_upper(100, 0.5)

    def test_disk_centers(self):
        centers = disk_centers(0.25)
        self.assertEqual(centers.shape, (2, 2))
        self.assertTrue(np.allclose(centers, [[0.5, 0.25], [0.5, 0.75]]))

    def test_nothing_on_the_right(self):
        inst = hand_instance([(0.1, 0.2), (0.3, 0.4), (0.45, 0.5), (0.2, 0.9)])
        schedule = omni_schedule(inst, radius=0.2)
        self.assertEqual(len(schedule), 0)
        self.assertTrue(validate_schedule(inst, schedule))

    def test_one_pair_per_disk(self):
        inst = hand_instance([(0.45, 0.25), (0.55, 0.25), (0.45, 0.75), (0.55, 0.75)])
        schedule = omni_schedule(inst, radius=0.25)
        self.assertEqual(schedule.pairs, ((0, 1), (2, 3)))
        self.assertTrue(validate_schedule(inst, schedule))

    def test_random_schedule_is_certified(self):
        for seed in range(3):
            inst = generate_instance(2000, seed)
            schedule = omni_schedule(inst)
            self.assertTrue(validate_schedule(inst, schedule))
            self.assertLessEqual(len(schedule), len(disk_centers(inst.d)))
            self.assertGreater(len(schedule), 0)

    def test_interfering_receivers_are_rejected(self):
        inst = hand_instance([(0.45, 0.5), (0.55, 0.5), (0.45, 0.55), (0.55, 0.55)])
        bad = CutSchedule(AntennaModel(Variant.OMNI), ((0, 1), (2, 3)), 0.2)
        self.assertFalse(validate_schedule(inst, bad))

    def test_disk_occupancy(self):
        n = 10 ** 4
        counts = omni_disk_counts(generate_instance(n, 0))
        self.assertTrue(np.all(counts >= 1))
        d = connectivity_radius(n)
        self.assertAlmostEqual(counts.mean() / (n * math.pi * d * d), 1.0, delta=0.2)


class TestBeams(unittest.TestCase):
    def test_multi_beam_fan(self):
        inst = hand_instance([(0.45, 0.5), (0.55, 0.4), (0.55, 0.5), (0.55, 0.6)])
        schedule = beam_cut_edges(inst, MULTI, radius=0.2)
        self.assertEqual(len(schedule), 3)
        self.assertTrue(validate_schedule(inst, schedule))

    def test_single_beam_collinear(self):
        inst = hand_instance([(0.40, 0.5), (0.45, 0.5), (0.55, 0.5)])
        schedule = beam_cut_edges(inst, SINGLE, radius=0.2)
        self.assertEqual(len(schedule), 1)
        self.assertTrue(validate_schedule(inst, schedule))
        self.assertEqual(len(beam_cut_edges(inst, MULTI, radius=0.2)), 0)

    def test_single_beam_drops_the_later_collinear_pair(self):
        # 2 reaches receivers 3 and 4, both already taken; it pairs with 3 and
        # lines up behind 1, so the later pair goes even though 4 would have been clear
        inst = hand_instance([(0.49, 0.70), (0.40, 0.5), (0.45, 0.5), (0.55, 0.5), (0.55, 0.65)])
        schedule = beam_cut_edges(inst, SINGLE, radius=0.2)
        self.assertEqual(schedule.pairs, ((0, 4), (1, 3)))
        self.assertTrue(validate_schedule(inst, schedule))

    def test_collinear_arrivals_are_rejected(self):
        inst = hand_instance([(0.40, 0.5), (0.45, 0.5), (0.55, 0.5)])
        bad = CutSchedule(SINGLE, ((0, 2), (1, 2)), 0.2)
        self.assertFalse(validate_schedule(inst, bad))

    def test_single_beam_uses_one_beam_per_transmitter(self):
        inst = hand_instance([(0.45, 0.5), (0.55, 0.4), (0.55, 0.5), (0.55, 0.6)])
        schedule = beam_cut_edges(inst, SINGLE, radius=0.2)
        self.assertEqual(len(schedule), 1)
        bad = CutSchedule(SINGLE, ((0, 1), (0, 2)), 0.2)
        self.assertFalse(validate_schedule(inst, bad))

    def test_beam_models_need_beams(self):
        inst = generate_instance(100, 0)
        with self.assertRaises(InvalidArgument):
            beam_cut_edges(inst, AntennaModel(Variant.OMNI))

    def test_models_are_ordered(self):
        for seed in range(3):
            inst = generate_instance(2000, seed)
            omni = len(omni_schedule(inst))
            single = beam_cut_edges(inst, SINGLE)
            multi = beam_cut_edges(inst, MULTI)
            self.assertTrue(validate_schedule(inst, single))
            self.assertTrue(validate_schedule(inst, multi))
            self.assertLessEqual(omni, len(single))
            self.assertLessEqual(len(single), len(multi))
            self.assertLessEqual(len(multi), len(straddling_pairs(inst, inst.d)))

    def test_beam_count(self):
        n = 10 ** 4
        self.assertAlmostEqual(beam_count(n, connectivity_radius(n)),
                               math.log(n) + math.log(math.log(n)), places=9)
        self.assertAlmostEqual(beam_count(n, n ** (-1 / 3)), math.pi * n ** (1 / 3), places=9)

    def test_schedule_csv(self):
        inst = hand_instance([(0.45, 0.5), (0.55, 0.4), (0.55, 0.5), (0.55, 0.6)])
        lines = schedule_to_csv(inst, beam_cut_edges(inst, MULTI, radius=0.2)).splitlines()
        self.assertEqual(lines[0], 'tx_index,rx_index,tx_x,tx_y,rx_x,rx_y')
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[1].startswith('0,1,0.45,0.5,0.55,0.4'))


class TestOccupancy(unittest.TestCase):
    def test_expected_empty_bins(self):
        self.assertEqual(expected_empty_bins(1), 0.0)
        self.assertAlmostEqual(expected_empty_bins(4), 1.265625, places=12)
        self.assertAlmostEqual(expected_empty_bins(10 ** 5) / 10 ** 5, 1 / math.e, delta=1e-4)

    def test_simulation_matches_expectation(self):
        m = 10 ** 4
        empty = simulate_empty_bins(m, m, seed=5, trials=20)
        self.assertEqual(empty.shape, (20,))
        self.assertAlmostEqual(empty.mean() / expected_empty_bins(m), 1.0, delta=0.02)

    def test_simulation_is_reproducible(self):
        self.assertTrue(np.array_equal(simulate_empty_bins(100, 100, 3, 4),
                                       simulate_empty_bins(100, 100, 3, 4)))

    def test_bad_arguments(self):
        with self.assertRaises(InvalidArgument):
            expected_empty_bins(0)
        with self.assertRaises(InvalidArgument):
            simulate_empty_bins(10, 10, 0, trials=0)

    def test_strip_slices_behave_like_bins(self):
        fractions = []
        for seed in range(5):
            slices = strip_occupancy(generate_instance(10 ** 4, seed))
            fractions.append(np.count_nonzero(slices == 0) / slices.size)
        self.assertAlmostEqual(np.mean(fractions), 1 / math.e, delta=0.05)

    def test_transmitter_reach(self):
        counts, expected = 0, 0.0
        for seed in range(3):
            nodes, c, e = transmitter_reach(generate_instance(10 ** 4, seed))
            self.assertEqual(nodes.shape, c.shape)
            counts += int(c.sum())
            expected += float(e.sum())
        self.assertAlmostEqual(counts / expected, 1.0, delta=0.1)


if __name__ == '__main__':
    unittest.main()
