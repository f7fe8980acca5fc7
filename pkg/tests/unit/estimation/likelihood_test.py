"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import unittest

from scipy import integrate

from recurring_auction.distributions import Uniform
from recurring_auction.equilibrium import AuctionPrimitives, ThresholdSequence, solve_thresholds
from recurring_auction.estimation import (
    AuctionObservation,
    AuctionParams,
    Covariates,
    OutcomeClass,
    classify_outcome,
    outcome_likelihood,
    single_round_likelihood,
)
from recurring_auction.outcomes import single_round_cutoff

COVARIATES = Covariates(log_assess=4.5, area_100m2=1.3, log_dist=0.9)
RESERVES = (0.2, 0.1)


def observation(round_sold, deal_price, entrants, n_buyers=3, reserves=RESERVES):
    return AuctionObservation(
        auction_id="A1",
        round_sold=round_sold,
        deal_price=deal_price,
        entrants=entrants,
        n_buyers=n_buyers,
        reserves=reserves,
        covariates=COVARIATES,
    )


class ClassifyOutcomeTest(unittest.TestCase):
    def test_classes(self):
        """Test outcome classification"""
        self.assertIs(classify_outcome(observation(0, None, 0)), OutcomeClass.NO_SALE)
        self.assertIs(classify_outcome(observation(1, 0.2, 1)), OutcomeClass.SOLE_ENTRANT)
        self.assertIs(classify_outcome(observation(2, 0.45, 2)), OutcomeClass.COMPETITIVE)

    def test_impossible(self):
        """Test an impossible outcome is classified"""
        self.assertIs(classify_outcome(observation(1, 0.5, 1)), OutcomeClass.IMPOSSIBLE)
        self.assertIs(classify_outcome(observation(1, 0.2, 2)), OutcomeClass.IMPOSSIBLE)


class OutcomeLikelihoodTest(unittest.TestCase):
    def setUp(self):
        self.primitives = AuctionPrimitives(Uniform(0.0, 1.0), 3, 2, 0.95, 0.0, 0.2, RESERVES)
        self.thresholds = ThresholdSequence((1.0, 0.6, 0.3))

    def likelihood(self, record):
        return outcome_likelihood(record, self.primitives, self.thresholds)

    def price_mass(self, t, entrants):
        lo, hi = self.thresholds[t], self.thresholds[t - 1]
        mass, _ = integrate.quad(lambda p: self.likelihood(observation(t, p, entrants)), lo, hi)
        return mass

    def round_mass(self, t):
        sole = self.likelihood(observation(t, RESERVES[t - 1], 1))
        return sole + sum(self.price_mass(t, ne) for ne in range(2, 4))

    def test_no_sale(self):
        """Test the no-sale likelihood"""
        self.assertAlmostEqual(self.likelihood(observation(0, None, 0)), 0.3**3)

    def test_sole_entrant(self):
        """Test the sole-entrant likelihood"""
        # N (F(v_{t-1}) − F(v_t)) F(v_t)^{N−1}
        self.assertAlmostEqual(self.likelihood(observation(1, 0.2, 1)), 3 * 0.4 * 0.6**2)

    def test_sale_round_telescopes(self):
        """Test sale-round probabilities telescope"""
        self.assertAlmostEqual(self.round_mass(1), 1.0 - 0.6**3, places=8)
        self.assertAlmostEqual(self.round_mass(2), 0.6**3 - 0.3**3, places=8)

    def test_outcomes_normalize(self):
        """Test outcome likelihoods sum to one"""
        total = self.likelihood(observation(0, None, 0)) + self.round_mass(1) + self.round_mass(2)
        self.assertAlmostEqual(total, 1.0, places=8)

    def test_price_outside_round_window(self):
        """Test a price outside the round window has no likelihood"""
        self.assertEqual(self.likelihood(observation(1, 0.5, 2)), 0.0)
        self.assertEqual(self.likelihood(observation(2, 0.7, 3)), 0.0)

    def test_impossible_outcome(self):
        """Test an impossible outcome has zero likelihood"""
        self.assertEqual(self.likelihood(observation(1, 0.7, 1)), 0.0)

    def test_lognormal_outcomes_normalize(self):
        """Test lognormal outcome likelihoods sum to one"""
        params = AuctionParams(mu=4.3, sigma=0.2, entry_cost=0.5)
        reserves = (55.0, 44.0, 44.0)
        record = observation(0, None, 0, n_buyers=4, reserves=reserves)
        primitives = record.primitives(params)
        thresholds = solve_thresholds(primitives)
        total = outcome_likelihood(record, primitives, thresholds)
        for t in range(1, 4):
            sole = observation(t, reserves[t - 1], 1, n_buyers=4, reserves=reserves)
            total += outcome_likelihood(sole, primitives, thresholds)
            for ne in range(2, 5):
                mass, _ = integrate.quad(
                    lambda p: outcome_likelihood(
                        observation(t, p, ne, n_buyers=4, reserves=reserves), primitives, thresholds
                    ),
                    thresholds[t],
                    thresholds[t - 1],
                    limit=200,
                )
                total += mass
        self.assertAlmostEqual(total, 1.0, places=5)


class SingleRoundLikelihoodTest(unittest.TestCase):
    def setUp(self):
        self.primitives = AuctionPrimitives(Uniform(0.0, 1.0), 2, 2, 0.95, 0.0, 0.2, (0.1, 0.1))
        self.cutoff = single_round_cutoff(self.primitives, reserve=0.1)

    def test_unsold(self):
        """Test the vectorized unsold likelihood"""
        record = observation(0, None, 0, n_buyers=2, reserves=(0.1, 0.1))
        self.assertAlmostEqual(single_round_likelihood(record, self.primitives), self.cutoff**4)

    def test_second_round_sole_entrant(self):
        """Test the vectorized second-round sole entrant"""
        c = self.cutoff
        record = observation(2, 0.1, 1, n_buyers=2, reserves=(0.1, 0.1))
        expected = c**2 * 2 * (1.0 - c) * c
        self.assertAlmostEqual(single_round_likelihood(record, self.primitives), expected)

    def test_competitive_first_round(self):
        """Test the vectorized competitive first round"""
        self.assertLess(self.cutoff, 0.8)
        record = observation(1, 0.8, 2, n_buyers=2, reserves=(0.1, 0.1))
        # C(2, 2) · 2 · 1 · f(p) · (1 − F(p))
        self.assertAlmostEqual(single_round_likelihood(record, self.primitives), 2 * 0.2)


if __name__ == "__main__":
    unittest.main()
