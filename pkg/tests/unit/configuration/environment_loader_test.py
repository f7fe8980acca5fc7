"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import os
import tempfile
import unittest
from unittest.mock import patch

from recurring_auction.config import get_config, reset_config
from recurring_auction.environment_services.environment_loader import EnvironmentLoader
from recurring_auction.errors import ConfigurationError


class EnvironmentLoaderTest(unittest.TestCase):
    def setUp(self):
        self.workspace = tempfile.TemporaryDirectory()
        self.nested = os.path.join(self.workspace.name, "runs", "today")
        os.makedirs(self.nested)
        reset_config()

    def tearDown(self):
        reset_config()
        self.workspace.cleanup()

    def test_finds_file_in_parent(self):
        """Test the env file is found in a parent directory"""
        path = os.path.join(self.workspace.name, ".env.test")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("RA_CHUNK_SIZE=2500\n")
        found = EnvironmentLoader().find_file(self.nested, ".env.test")
        self.assertEqual(found, path)

    @patch.dict(os.environ, {}, clear=False)
    def test_values_reach_config(self):
        """Test loaded values reach the config"""
        path = os.path.join(self.workspace.name, ".env.test")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("RA_CHUNK_SIZE=2500\nRA_GRID_POINTS=64\n")
        os.environ.pop("RA_CHUNK_SIZE", None)
        os.environ.pop("RA_GRID_POINTS", None)
        loaded = EnvironmentLoader().load_environment_file(starting_path=self.nested, file_name=".env.test")
        self.assertTrue(loaded)
        self.assertEqual(get_config().simulation.chunk_size, 2500)
        self.assertEqual(get_config().solver.grid_points, 64)

    def test_missing_file(self):
        """Test a missing env file"""
        loader = EnvironmentLoader()
        self.assertFalse(loader.load_environment_file(starting_path=self.nested, file_name=".env.absent"))
        with self.assertRaises(ConfigurationError):
            loader.load_environment_file(
                starting_path=self.nested, file_name=".env.absent", raise_error_if_not_found=True
            )


if __name__ == "__main__":
    unittest.main()
