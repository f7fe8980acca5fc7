"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import os
import unittest
from unittest.mock import patch

from recurring_auction.config import (
    EstimationConfig,
    RecurringAuctionConfig,
    SimulationConfig,
    SolverConfig,
    get_config,
    reset_config,
    set_config,
)
from recurring_auction.errors import InvalidConfigurationError


class RecurringAuctionConfigTest(unittest.TestCase):
    def setUp(self):
        reset_config()

    def tearDown(self):
        reset_config()

    def test_defaults(self):
        """Test the default settings"""
        config = RecurringAuctionConfig()
        self.assertEqual(config.solver.grid_points, 512)
        self.assertEqual(config.to_dict()["simulation"], {"workers": 1, "chunk_size": 10000})
        self.assertEqual(config.estimation.draws_per_auction, 1000)
        self.assertEqual(config.logging.log_level, "INFO")

    @patch.dict(
        os.environ,
        {
            "RA_WORKERS": "4",
            "RA_DRAWS": "250",
            "RA_RESIDUAL_TOLERANCE": "1e-9",
            "LOG_LEVEL": "DEBUG",
            "ENABLE_STACK_TRACE": "true",
            "ENVIRONMENT": "ci",
        },
    )
    def test_from_environment(self):
        """Test settings read from environment variables"""
        config = get_config()
        self.assertEqual(config.simulation.workers, 4)
        self.assertEqual(config.estimation.draws_per_auction, 250)
        self.assertEqual(config.solver.residual_tolerance, 1e-9)
        self.assertEqual(config.logging.log_level, "DEBUG")
        self.assertTrue(config.logging.enable_stack_trace)
        self.assertEqual(config.environment, "ci")

    @patch.dict(os.environ, {"RA_WORKERS": "many"})
    def test_non_numeric_environment_ignored(self):
        """Test non-numeric environment values fall back to defaults"""
        self.assertEqual(get_config().simulation.workers, 1)

    @patch.dict(os.environ, {"RA_WORKERS": "0"})
    def test_invalid_environment_value(self):
        """Test an out-of-range environment value is rejected"""
        with self.assertRaises(InvalidConfigurationError):
            get_config()

    def test_cached_until_reset(self):
        """Test the config is cached until reset"""
        first = get_config()
        self.assertIs(get_config(), first)
        reset_config()
        self.assertIsNot(get_config(), first)

    def test_set_config(self):
        """Test replacing the active config"""
        set_config(RecurringAuctionConfig(simulation=SimulationConfig(workers=3)))
        self.assertEqual(get_config().simulation.workers, 3)


class SectionValidationTest(unittest.TestCase):
    def test_solver(self):
        """Test solver setting validation"""
        with self.assertRaises(InvalidConfigurationError):
            SolverConfig(grid_points=4)
        with self.assertRaises(InvalidConfigurationError):
            SolverConfig(residual_tolerance=0.0)

    def test_simulation(self):
        """Test simulation setting validation"""
        with self.assertRaises(InvalidConfigurationError):
            SimulationConfig(workers=0)
        with self.assertRaises(InvalidConfigurationError):
            SimulationConfig(chunk_size=0)

    def test_estimation(self):
        """Test estimation setting validation"""
        with self.assertRaises(InvalidConfigurationError):
            EstimationConfig(draws_per_auction=0)
        with self.assertRaises(InvalidConfigurationError):
            EstimationConfig(likelihood_floor=1.0)


if __name__ == "__main__":
    unittest.main()
