"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import math
import unittest

import numpy as np

from recurring_auction.errors import InvalidParameterError
from recurring_auction.estimation import GeneratorSettings, draw_covariates, generate_synthetic


class GeneratorSettingsTest(unittest.TestCase):
    def test_reserve_schedule(self):
        """Test the reserve schedule"""
        reserves = GeneratorSettings().reserves(100.0)
        self.assertEqual(len(reserves), 3)
        self.assertAlmostEqual(reserves[0], 75.0)
        self.assertAlmostEqual(reserves[1], 60.0)
        self.assertAlmostEqual(reserves[2], 60.0)

    def test_short_schedules(self):
        """Test one- and two-round schedules"""
        self.assertEqual(len(GeneratorSettings(rounds=1).reserves(100.0)), 1)
        self.assertEqual(len(GeneratorSettings(rounds=2).reserves(100.0)), 2)

    def test_rounds_positive(self):
        """Test at least one round is required"""
        with self.assertRaises(InvalidParameterError):
            GeneratorSettings(rounds=0)

    def test_discount_below_one(self):
        """Test an undiscounted schedule is rejected when the settings are built"""
        with self.assertRaises(InvalidParameterError):
            GeneratorSettings(delta=1.0)
        with self.assertRaises(InvalidParameterError):
            GeneratorSettings(delta=0.0)

    def test_covariates_centered(self):
        """Test covariate medians and the area floor"""
        rng = np.random.default_rng(0)
        settings = GeneratorSettings()
        draws = [draw_covariates(rng, settings) for _ in range(4000)]
        self.assertAlmostEqual(np.median([d.assessed_price for d in draws]), 90.5, delta=5.0)
        self.assertTrue(all(d.area_100m2 >= settings.area_min for d in draws))
        self.assertAlmostEqual(np.median([d.log_dist for d in draws]), math.log(2.4), delta=0.08)


class GenerateSyntheticTest(unittest.TestCase):
    def test_deterministic(self):
        """Test the same seed gives the same dataset"""
        first = generate_synthetic(n_auctions=6, seed=4)
        second = generate_synthetic(n_auctions=6, seed=4)
        self.assertTrue(first.to_frame().equals(second.to_frame()))

    def test_ids_and_consistency(self):
        """Test auction ids and row consistency"""
        dataset = generate_synthetic(n_auctions=6, seed=1)
        self.assertEqual([o.auction_id for o in dataset], [f"A{i:05d}" for i in range(6)])
        for record in dataset:
            self.assertGreaterEqual(record.n_buyers, 3)
            self.assertEqual(record.rounds, 3)
            if record.entrants == 1:
                self.assertTrue(record.at_reserve())

    def test_prefix_stable(self):
        """Test a smaller dataset is a prefix of a larger one"""
        short = generate_synthetic(n_auctions=3, seed=2)
        longer = generate_synthetic(n_auctions=5, seed=2)
        self.assertTrue(short.to_frame().equals(longer.subset(range(3)).to_frame()))

    def test_needs_auctions(self):
        """Test at least one auction is required"""
        with self.assertRaises(InvalidParameterError):
            generate_synthetic(n_auctions=0)


if __name__ == "__main__":
    unittest.main()
