"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import json
import os
import tempfile
import unittest

from recurring_auction.cli.run_config import RunConfig, validate_target
from recurring_auction.errors import InvalidConfigurationError, UnknownConfigKeyError

EXAMPLE1 = {
    "distribution": {"family": "uniform", "params": [0, 1]},
    "n_buyers": 2,
    "rounds": 2,
    "delta": 0.97,
    "entry_cost": 0.2,
    "reserves": [0.14, 0.0],
}


class RunConfigTest(unittest.TestCase):
    def test_primitives(self):
        """Test primitives are built from the config record"""
        config = RunConfig.from_dict({"command": "solve", "primitives": EXAMPLE1})
        self.assertEqual(config.command, "solve")
        self.assertEqual(config.primitives.reserves, (0.14, 0.0))
        self.assertEqual(config.primitives.seller_value, 0.0)
        self.assertEqual(config.out, "results")

    def test_unknown_root_key(self):
        """Test an unknown top-level key is rejected"""
        with self.assertRaises(UnknownConfigKeyError):
            RunConfig.from_dict({"command": "solve", "primitves": EXAMPLE1})

    def test_unknown_nested_key(self):
        """Test an unknown nested key is rejected"""
        with self.assertRaises(UnknownConfigKeyError):
            RunConfig.from_dict({"simulation": {"n_draws": 10, "thread_count": 2}})

    def test_objective_typo(self):
        """Test a misspelled objective is rejected"""
        with self.assertRaises(InvalidConfigurationError):
            RunConfig.from_dict({"objective": "revenu"})

    def test_missing_primitive_fields(self):
        """Test missing primitive fields are reported"""
        record = dict(EXAMPLE1)
        del record["entry_cost"]
        with self.assertRaises(InvalidConfigurationError):
            RunConfig.from_dict({"primitives": record})

    def test_invalid_primitives(self):
        """Test out-of-range primitives are rejected"""
        with self.assertRaises(InvalidConfigurationError):
            RunConfig.from_dict({"primitives": dict(EXAMPLE1, delta=1.5)})

    def test_negative_draws(self):
        """Test a negative draw count is rejected"""
        with self.assertRaises(InvalidConfigurationError):
            RunConfig.from_dict({"simulation": {"n_draws": -1}})

    def test_estimation_section(self):
        """Test the estimation section is parsed"""
        config = RunConfig.from_dict(
            {"estimation": {"generate": {"n_auctions": 50}, "draws": 20, "model": "single_round"}}
        )
        self.assertTrue(config.estimation.generates)
        self.assertEqual(config.estimation.n_auctions, 50)
        self.assertEqual(config.estimation.model, "single_round")

    def test_perturbation_range(self):
        """Test the perturbation fraction range"""
        with self.assertRaises(InvalidConfigurationError):
            RunConfig.from_dict({"estimation": {"perturbation": 1.5}})

    def test_counterfactual_mode(self):
        """Test the counterfactual mode is validated"""
        config = RunConfig.from_dict({"counterfactual": {"mode": "entry-cost-scale", "cost_scales": [1, 2]}})
        self.assertEqual(config.counterfactual_mode, "entry-cost-scale")
        self.assertEqual(list(config.cost_scales), [1.0, 2.0])
        with self.assertRaises(InvalidConfigurationError):
            RunConfig.from_dict({"counterfactual": {"mode": "drop-round"}})

    def test_target(self):
        """Test reproduction targets are validated"""
        self.assertEqual(validate_target("footnotes"), "footnotes")
        with self.assertRaises(InvalidConfigurationError):
            validate_target("example3")

    def test_require_primitives(self):
        """Test commands that need primitives say so"""
        with self.assertRaises(InvalidConfigurationError):
            RunConfig().require_primitives()


class RunConfigFileTest(unittest.TestCase):
    def setUp(self):
        self.workspace = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.workspace.name, "run.json")

    def tearDown(self):
        self.workspace.cleanup()

    def test_load(self):
        """Test loading a config file from disk"""
        with open(self.path, "w", encoding="utf-8") as handle:
            json.dump({"command": "design", "primitives": EXAMPLE1, "objective": "revenue"}, handle)
        config = RunConfig.load(self.path)
        self.assertEqual(config.objective, "revenue")

    def test_malformed_json(self):
        """Test malformed JSON is a configuration error"""
        with open(self.path, "w", encoding="utf-8") as handle:
            handle.write('{"command": "solve",')
        with self.assertRaises(InvalidConfigurationError):
            RunConfig.load(self.path)

    def test_missing_file(self):
        """Test a missing config file"""
        with self.assertRaises(InvalidConfigurationError):
            RunConfig.load(os.path.join(self.workspace.name, "absent.json"))


if __name__ == "__main__":
    unittest.main()
