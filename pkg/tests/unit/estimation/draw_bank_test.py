"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import dataclasses
import os
import tempfile
import unittest

import numpy as np

from recurring_auction.errors import DatasetFormatError, EstimationError, InvalidParameterError
from recurring_auction.estimation import (
    DEFAULT_TRUE_PARAMS,
    DrawBank,
    effective_sample_size,
    evaluate_loglik,
    generate_synthetic,
    importance_log_weights,
    precompute_draws,
    simulated_loglik,
)


class DrawBankTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.dataset = generate_synthetic(n_auctions=4, seed=7)
        cls.bank = precompute_draws(DEFAULT_TRUE_PARAMS, cls.dataset, n_draws=6, seed=3, workers=1)

    def setUp(self):
        self.workspace = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.workspace.cleanup()

    def test_shape(self):
        """Test the bank holds one block per auction"""
        self.assertEqual(self.bank.n_auctions, 4)
        self.assertEqual(self.bank.n_draws, 6)
        self.assertEqual(self.bank.draws.shape, (4, 6, 3))
        self.assertTrue(np.all(self.bank.likelihood >= 0.0))

    def test_deterministic(self):
        """Test the same seed gives the same bank"""
        again = precompute_draws(DEFAULT_TRUE_PARAMS, self.dataset, n_draws=6, seed=3, workers=1)
        np.testing.assert_array_equal(again.draws, self.bank.draws)
        np.testing.assert_array_equal(again.likelihood, self.bank.likelihood)

    def test_independent_of_workers(self):
        """Test the bank ignores the worker count"""
        parallel = precompute_draws(DEFAULT_TRUE_PARAMS, self.dataset, n_draws=6, seed=3, workers=2)
        np.testing.assert_array_equal(parallel.draws, self.bank.draws)
        np.testing.assert_array_equal(parallel.likelihood, self.bank.likelihood)

    def test_save_and_load(self):
        """Test saving and loading a bank"""
        path = self.bank.save(os.path.join(self.workspace.name, "bank.npz"))
        loaded = DrawBank.load(path, expected_key=self.bank.key)
        self.assertEqual(loaded.auction_ids, self.bank.auction_ids)
        np.testing.assert_array_equal(loaded.likelihood, self.bank.likelihood)
        np.testing.assert_array_equal(loaded.valid, self.bank.valid)

    def test_load_key_mismatch(self):
        """Test a bank built for other settings is refused"""
        path = self.bank.save(os.path.join(self.workspace.name, "bank.npz"))
        with self.assertRaises(DatasetFormatError):
            DrawBank.load(path, expected_key=(self.bank.key[0], 99, self.bank.n_draws))

    def test_dataset_mismatch(self):
        """Test a bank built for another dataset is refused"""
        with self.assertRaises(EstimationError):
            self.bank.check_matches(self.dataset.subset([0, 1]))

    def test_bad_settings(self):
        """Test invalid bank settings"""
        with self.assertRaises(InvalidParameterError):
            precompute_draws(DEFAULT_TRUE_PARAMS, self.dataset, n_draws=2, model="sequential", workers=1)


class SimulatedLikelihoodTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.dataset = generate_synthetic(n_auctions=4, seed=7)
        cls.bank = precompute_draws(DEFAULT_TRUE_PARAMS, cls.dataset, n_draws=6, seed=3, workers=1)

    def test_weights_vanish_at_proposal(self):
        """Test log weights are zero at the proposal"""
        log_w = importance_log_weights(DEFAULT_TRUE_PARAMS, self.dataset, self.bank)
        np.testing.assert_allclose(log_w[self.bank.valid], 0.0, atol=1e-9)

    def test_full_sample_size_at_proposal(self):
        """Test the effective sample size is full at the proposal"""
        evaluation = evaluate_loglik(DEFAULT_TRUE_PARAMS, self.dataset, self.bank)
        np.testing.assert_allclose(evaluation.effective_sample_size, self.bank.valid.sum(axis=1), rtol=1e-9)

    def test_average_of_likelihoods_at_proposal(self):
        """Test the estimate is the plain average at the proposal"""
        evaluation = evaluate_loglik(DEFAULT_TRUE_PARAMS, self.dataset, self.bank)
        with np.errstate(divide="ignore"):
            expected = np.log(np.mean(np.where(self.bank.valid, self.bank.likelihood, 0.0), axis=1))
        explained = expected > np.log(1e-300)
        np.testing.assert_allclose(evaluation.contributions[explained], expected[explained], rtol=1e-9)
        self.assertAlmostEqual(simulated_loglik(DEFAULT_TRUE_PARAMS, self.dataset, self.bank), evaluation.value)

    def test_floor_counts_unexplained_auctions(self):
        """Test auctions no draw explains hit the floor"""
        likelihood = self.bank.likelihood.copy()
        likelihood[0] = 0.0
        bank = dataclasses.replace(self.bank, likelihood=likelihood)
        evaluation = evaluate_loglik(DEFAULT_TRUE_PARAMS, self.dataset, bank, floor=1e-200)
        self.assertGreaterEqual(evaluation.floored, 1)
        self.assertAlmostEqual(evaluation.contributions[0], np.log(1e-200))

    def test_effective_sample_size_of_one_heavy_draw(self):
        """Test one dominant draw gives a sample size near one"""
        log_w = np.array([[0.0, -np.inf, -np.inf], [0.0, 0.0, 0.0]])
        np.testing.assert_allclose(effective_sample_size(log_w), [1.0, 3.0])


if __name__ == "__main__":
    unittest.main()
