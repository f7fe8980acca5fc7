"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import unittest

import numpy as np

from recurring_auction.errors import InvalidParameterError, MalformedObservationError
from recurring_auction.estimation import (
    DEFAULT_TRUE_PARAMS,
    AuctionObservation,
    AuctionParams,
    Covariates,
    HyperParams,
)

COVARIATES = Covariates(log_assess=4.5, area_100m2=1.3, log_dist=0.9)


def observation(**overrides):
    record = dict(
        auction_id="A1",
        round_sold=1,
        deal_price=70.0,
        entrants=3,
        n_buyers=8,
        reserves=(60.0, 48.0, 48.0),
        covariates=COVARIATES,
    )
    record.update(overrides)
    return AuctionObservation(**record)


class HyperParamsTest(unittest.TestCase):
    def test_vector_round_trip(self):
        """Test parameters survive the vector form"""
        vector = DEFAULT_TRUE_PARAMS.to_vector()
        self.assertEqual(vector.size, 15)
        rebuilt = HyperParams.from_vector(vector)
        np.testing.assert_allclose(rebuilt.to_vector(), vector, rtol=1e-12)
        self.assertEqual(rebuilt.fingerprint(), DEFAULT_TRUE_PARAMS.fingerprint())

    def test_fingerprint(self):
        """Test the parameter fingerprint"""
        fingerprint = DEFAULT_TRUE_PARAMS.fingerprint()
        self.assertEqual(len(fingerprint), 16)
        moved = DEFAULT_TRUE_PARAMS.perturbed(np.random.default_rng(0), 0.1)
        self.assertNotEqual(moved.fingerprint(), fingerprint)

    def test_vector_size(self):
        """Test a wrong-size vector is rejected"""
        with self.assertRaises(InvalidParameterError):
            HyperParams.from_vector(np.zeros(14))

    def test_scales_positive(self):
        """Test the scales must be positive"""
        with self.assertRaises(InvalidParameterError):
            HyperParams((0, 1, 0, 0), 0.0, (0, 0, 0, 0), 0.1, (0, 0, 0, 0), 0.1)

    def test_perturbation_bounded(self):
        """Test perturbed coefficients move by at most the fraction"""
        moved = DEFAULT_TRUE_PARAMS.perturbed(np.random.default_rng(3), 0.1)
        base = np.array(DEFAULT_TRUE_PARAMS.beta_mu)
        ratio = np.array(moved.beta_mu) / base
        self.assertTrue(np.all(np.abs(ratio - 1.0) <= 0.1 + 1e-12))

    def test_linear_index(self):
        """Test the covariate index"""
        index = DEFAULT_TRUE_PARAMS.linear_index(COVARIATES.as_array())
        expected_mu = np.dot(DEFAULT_TRUE_PARAMS.beta_mu, [1.0, 4.5, 1.3, 0.9])
        self.assertAlmostEqual(float(index[0]), expected_mu)


class AuctionParamsTest(unittest.TestCase):
    def test_bounds(self):
        """Test implied primitives outside their bounds are rejected"""
        with self.assertRaises(InvalidParameterError):
            AuctionParams(mu=0.5, sigma=0.2, entry_cost=0.3)
        with self.assertRaises(InvalidParameterError):
            AuctionParams(mu=4.0, sigma=0.2, entry_cost=20.0)

    def test_distribution_support(self):
        """Test the value law support"""
        dist = AuctionParams(mu=4.3, sigma=0.2, entry_cost=0.3).distribution()
        self.assertAlmostEqual(float(dist.cdf(dist.upper)), 1.0)
        self.assertAlmostEqual(float(dist.cdf(dist.lower)), 0.0)


class AuctionObservationTest(unittest.TestCase):
    def test_valid(self):
        """Test a valid observation"""
        record = observation()
        self.assertTrue(record.sold)
        self.assertEqual(record.rounds, 3)
        self.assertFalse(record.at_reserve())

    def test_at_reserve(self):
        """Test a price at the reserve"""
        self.assertTrue(observation(round_sold=2, deal_price=48.0, entrants=1).at_reserve())

    def test_price_present_iff_sold(self):
        """Test a price exactly when sold"""
        with self.assertRaises(MalformedObservationError):
            observation(deal_price=None)
        with self.assertRaises(MalformedObservationError):
            observation(round_sold=0, entrants=0)

    def test_unsold_has_no_entrants(self):
        """Test an unsold auction has no entrants"""
        with self.assertRaises(MalformedObservationError):
            observation(round_sold=0, deal_price=None, entrants=2)

    def test_entrants_within_buyers(self):
        """Test entrants never exceed buyers"""
        with self.assertRaises(MalformedObservationError):
            observation(entrants=9)

    def test_price_below_reserve(self):
        """Test a price below the reserve is rejected"""
        with self.assertRaises(MalformedObservationError):
            observation(deal_price=55.0)

    def test_round_out_of_range(self):
        """Test a sale round past the horizon"""
        with self.assertRaises(MalformedObservationError):
            observation(round_sold=4)

    def test_primitives(self):
        """Test an observation builds its primitives"""
        primitives = observation().primitives(AuctionParams(mu=4.3, sigma=0.2, entry_cost=0.3))
        self.assertEqual(primitives.n_buyers, 8)
        self.assertEqual(primitives.rounds, 3)
        self.assertEqual(primitives.reserves, (60.0, 48.0, 48.0))
        self.assertAlmostEqual(primitives.delta, 0.95)


if __name__ == "__main__":
    unittest.main()
