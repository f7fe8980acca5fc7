"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import math
import unittest

from recurring_auction.cli.golden_suites import (
    GoldenCheck,
    GoldenReport,
    counterfactual_synthetic,
    run_suite,
    single_round_declines,
)
from recurring_auction.design import FigureSweep
from recurring_auction.errors import InvalidConfigurationError


class GoldenCheckTest(unittest.TestCase):
    def test_scalar(self):
        """Test a scalar check against its tolerance"""
        self.assertTrue(GoldenCheck("cutoff", 0.4472, 0.44721, 1e-4).passed)
        self.assertFalse(GoldenCheck("cutoff", 0.4472, 0.4490, 1e-4).passed)

    def test_vector(self):
        """Test a vector check compares element by element and by length"""
        self.assertTrue(GoldenCheck("thresholds", (0.66, 0.36), (0.661, 0.359), 0.005).passed)
        self.assertFalse(GoldenCheck("thresholds", (0.66, 0.36), (0.661,), 0.005).passed)

    def test_non_finite_fails(self):
        """Test a NaN computed value never passes"""
        self.assertFalse(GoldenCheck("surplus", 0.42, math.nan, 1.0).passed)


class GoldenReportTest(unittest.TestCase):
    def test_csv(self):
        """Test the report CSV layout and the failed list"""
        report = GoldenReport("example1")
        report.add("cutoff", 0.4472, 0.4472135955, 1e-4)
        report.add_property("ordered", False, "thresholds decrease")
        self.assertEqual(report.failed, ["ordered"])
        self.assertFalse(report.passed)
        lines = report.to_csv().splitlines()
        self.assertEqual(lines[0], "check,reference,computed,tolerance,passed,note")
        self.assertEqual(lines[1], "cutoff,0.4472,0.447214,0.0001,pass,")
        self.assertTrue(lines[2].endswith("FAIL,thresholds decrease"))

    def test_example1_suite(self):
        """Test the first worked example reproduces"""
        report = run_suite("example1")
        self.assertTrue(report.passed, report.failed)
        self.assertGreaterEqual(len(report.checks), 5)

    def test_unknown_target(self):
        """Test an unknown target is a configuration error"""
        with self.assertRaises(InvalidConfigurationError):
            run_suite("example9")

    def test_counterfactual_checks_state_their_averaging(self):
        """Test the synthetic counterfactual properties say they hold on draw means"""
        report = counterfactual_synthetic(count=2, seed=3)
        notes = {check.name: check.note for check in report.checks}
        used = next(check for check in report.checks if check.name == "draws_used")
        self.assertIn("mean over", notes["total_surplus_weakly_increasing_in_T"])
        self.assertIn(f"mean over {int(used.computed)} draws", notes["revenue_falls_with_entry_cost"])
        self.assertIn("skipped", used.note)


class SingleRoundDeclineTest(unittest.TestCase):
    def setUp(self):
        # U[1,2], K = 0.3: the minimum sits at N = 7
        surplus = (1.1439, 1.1335, 1.1303, 1.1294, 1.12915, 1.129091, 1.129101, 1.129151, 1.129218)
        self.sweep = FigureSweep(
            round_values=[2],
            rows=[{"n_buyers": n, "single_round_surplus": s} for n, s in zip(range(2, 11), surplus)],
        )

    def test_decline_checked_up_to_seven_buyers(self):
        """Test the decline holds where the one-shot surplus still falls"""
        self.assertTrue(single_round_declines(self.sweep))

    def test_rise_past_seven_buyers_detected(self):
        """Test the check fails once the rising tail is included"""
        self.assertFalse(single_round_declines(self.sweep, max_n=10))


if __name__ == "__main__":
    unittest.main()
