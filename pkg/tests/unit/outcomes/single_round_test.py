"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import math
import unittest

from recurring_auction.distributions import Power, TruncatedLogNormal, Uniform
from recurring_auction.equilibrium import AuctionPrimitives
from recurring_auction.errors import InvalidParameterError
from recurring_auction.outcomes import (
    always_enter_cutoff,
    asymmetric_duopoly_single_round,
    single_round_cutoff,
    single_round_efficient,
    single_round_revenue_optimal,
)


def primitives(dist, entry_cost, n_buyers=2, reserves=None):
    return AuctionPrimitives(dist, n_buyers, 1, 0.97, 0.0, entry_cost, reserves)


class SingleRoundCutoffTest(unittest.TestCase):
    def test_zero_reserve(self):
        """Test the cutoff at a zero reserve"""
        self.assertAlmostEqual(single_round_cutoff(primitives(Uniform(0.0, 1.0), 0.2, reserves=(0.0,))), math.sqrt(0.2))

    def test_positive_reserve(self):
        """Test the cutoff at a positive reserve"""
        # (c − r) c = K
        cutoff = single_round_cutoff(primitives(Uniform(0.0, 1.0), 0.2), reserve=0.14)
        self.assertAlmostEqual((cutoff - 0.14) * cutoff, 0.2, places=10)

    def test_nobody_covers_cost(self):
        """Test the cutoff when nobody covers the cost"""
        self.assertEqual(single_round_cutoff(primitives(Uniform(0.0, 1.0), 0.9), reserve=0.5), 1.0)

    def test_example2_cutoff(self):
        """Test the second example cutoff"""
        cutoff = single_round_cutoff(primitives(Uniform(1.0, 2.0), 0.3, reserves=(0.0,)))
        self.assertAlmostEqual(cutoff, 1.2416, places=4)


class SingleRoundBenchmarksTest(unittest.TestCase):
    def test_efficient_example1(self):
        """Test the efficient one-shot surplus on the first example"""
        benchmark = single_round_efficient(primitives(Uniform(0.0, 1.0), 0.2))
        self.assertAlmostEqual(benchmark.total_surplus, 0.3859, places=4)
        self.assertEqual(benchmark.reserve, 0.0)

    def test_efficient_example2_buyer_counts(self):
        """Test the efficient one-shot surplus with one and two buyers"""
        duo = primitives(Uniform(1.0, 2.0), 0.3)
        self.assertAlmostEqual(single_round_efficient(duo.with_buyers(1)).total_surplus, 1.20, places=2)
        self.assertAlmostEqual(single_round_efficient(duo).total_surplus, 1.1439, places=3)

    def test_revenue_optimal_example1(self):
        """Test the optimal one-shot reserve and revenue"""
        optimal = single_round_revenue_optimal(primitives(Uniform(0.0, 1.0), 0.2))
        self.assertAlmostEqual(optimal.reserve, 0.3469, delta=0.001)
        self.assertAlmostEqual(optimal.revenue, 0.2497, delta=0.001)
        self.assertGreater(optimal.cutoff, math.sqrt(0.2))

    def test_revenue_optimal_power(self):
        """Test the optimal one-shot auction on a power law"""
        optimal = single_round_revenue_optimal(primitives(Power(4.0), 0.4))
        self.assertAlmostEqual(optimal.cutoff, 0.868, delta=0.003)
        self.assertAlmostEqual(optimal.revenue, 0.25155, delta=0.001)


class DuopolyTest(unittest.TestCase):
    def test_always_enter_cutoff(self):
        """Test the cutoff against a rival who always enters"""
        # (c − 1)² / 2 = K on U[1, 2]
        cutoff = always_enter_cutoff(primitives(Uniform(1.0, 2.0), 0.3))
        self.assertAlmostEqual(cutoff, 1.0 + math.sqrt(0.6), places=8)

    def test_asymmetric_surplus_example2(self):
        """Test the asymmetric duopoly surplus"""
        duo = primitives(Uniform(1.0, 2.0), 0.3)
        outcome = asymmetric_duopoly_single_round(duo, (1.0, always_enter_cutoff(duo)))
        self.assertAlmostEqual(outcome.total_surplus, 1.22, delta=0.01)

    def test_symmetric_profit_matches_optimal_auction(self):
        """Test the symmetric duopoly profit equals the optimal auction"""
        duo = primitives(Power(4.0), 0.4)
        optimal = single_round_revenue_optimal(duo)
        outcome = asymmetric_duopoly_single_round(duo, (optimal.cutoff, optimal.cutoff))
        self.assertAlmostEqual(outcome.revenue, optimal.revenue, places=6)

    def test_asymmetric_profit_references(self):
        """Test asymmetric duopoly profits"""
        power = asymmetric_duopoly_single_round(primitives(Power(4.0), 0.4), (0.816, 0.92))
        self.assertAlmostEqual(power.revenue, 0.2525, delta=0.001)
        uniform = asymmetric_duopoly_single_round(primitives(Uniform(0.6, 1.0), 0.2), (0.66, 0.86))
        self.assertAlmostEqual(uniform.revenue, 0.431, delta=0.001)

    def test_needs_two_buyers(self):
        """Test the duopoly needs two buyers"""
        with self.assertRaises(InvalidParameterError):
            asymmetric_duopoly_single_round(primitives(Uniform(0.0, 1.0), 0.2, n_buyers=3), (0.3, 0.5))

    def test_cutoffs_ordered(self):
        """Test duopoly cutoffs must be ordered"""
        with self.assertRaises(InvalidParameterError):
            asymmetric_duopoly_single_round(primitives(Uniform(0.0, 1.0), 0.2), (0.6, 0.3))


class LogNormalValuesTest(unittest.TestCase):
    """Lognormal values put the support edges where the density underflows."""

    def setUp(self):
        self.dist = TruncatedLogNormal(4.33, 0.192, 1e-4, 1200.0)

    def test_revenue_optimal_stays_inside_support(self):
        """Test the optimal one-shot auction over lognormal values with many buyers"""
        optimal = single_round_revenue_optimal(AuctionPrimitives(self.dist, 8, 3, 0.95, 0.0, 1.0))
        self.assertTrue(self.dist.lower < optimal.cutoff < self.dist.upper)
        self.assertTrue(math.isfinite(optimal.revenue))
        self.assertGreaterEqual(optimal.revenue, 0.0)

    def test_duopoly_with_cutoff_at_lower_bound(self):
        """Test the duopoly when one buyer always enters"""
        duo = primitives(self.dist, 1.0)
        outcome = asymmetric_duopoly_single_round(duo, (self.dist.lower, always_enter_cutoff(duo)))
        self.assertTrue(math.isfinite(outcome.revenue))
        self.assertTrue(math.isfinite(outcome.total_surplus))

    def test_symmetric_duopoly_matches_optimal_auction(self):
        """Test the symmetric duopoly profit against the optimal one-shot auction"""
        duo = primitives(self.dist, 1.0)
        optimal = single_round_revenue_optimal(duo)
        outcome = asymmetric_duopoly_single_round(duo, (optimal.cutoff, optimal.cutoff))
        self.assertAlmostEqual(outcome.revenue, optimal.revenue, delta=1e-5 * optimal.revenue)


if __name__ == "__main__":
    unittest.main()
