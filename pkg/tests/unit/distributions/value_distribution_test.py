"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from recurring_auction.distributions import (
    Power,
    TruncatedLogNormal,
    TruncatedNormal,
    Uniform,
    from_spec,
    order_statistic_integral,
)
from recurring_auction.errors import (
    InvalidParameterError,
    MissingParameterError,
)


class UniformTest(unittest.TestCase):
    def setUp(self):
        self.dist = Uniform(0.0, 1.0)

    def test_cdf_pdf_quantile(self):
        """Test the uniform CDF, density and quantile"""
        self.assertAlmostEqual(self.dist.cdf(0.25), 0.25)
        self.assertAlmostEqual(self.dist.pdf(0.25), 1.0)
        self.assertAlmostEqual(self.dist.quantile(0.75), 0.75)

    def test_values_outside_support_clamp(self):
        """Test values outside the support clamp"""
        self.assertEqual(self.dist.cdf(-1.0), 0.0)
        self.assertEqual(self.dist.cdf(2.0), 1.0)
        self.assertEqual(self.dist.pdf(2.0), 0.0)

    def test_virtual_value(self):
        """Test the uniform virtual value is 2v - 1"""
        grid = np.linspace(0.1, 0.9, 9)
        np.testing.assert_allclose(self.dist.virtual_value(grid), 2 * grid - 1, atol=1e-12)

    def test_order_statistic_partial_expectation(self):
        """Test the partial expectation of the maximum"""
        # E[max of two] over the whole support
        self.assertAlmostEqual(self.dist.partial_expectation_dG(2, 0.0, 1.0), 2.0 / 3.0, places=12)
        self.assertAlmostEqual(self.dist.partial_expectation_dG(0, 0.0, 1.0), 0.0)

    def test_bad_bounds(self):
        """Test reversed bounds are rejected"""
        with self.assertRaises(InvalidParameterError):
            Uniform(1.0, 0.0)

    def test_regular(self):
        """Test the uniform law is regular"""
        self.dist.check_regular()


class PowerTest(unittest.TestCase):
    def test_cdf(self):
        """Test the power law CDF and mean"""
        dist = Power(4.0)
        self.assertAlmostEqual(dist.cdf(0.5), 0.0625)
        self.assertAlmostEqual(dist.mean(), 0.8)

    def test_non_positive_exponent(self):
        """Test a non-positive exponent is rejected"""
        with self.assertRaises(InvalidParameterError):
            Power(0.0)


class TruncatedFamiliesTest(unittest.TestCase):
    def test_lognormal_mean(self):
        """Test the truncated lognormal mean"""
        dist = TruncatedLogNormal(4.330, 0.192, 1e-4, 1200.0)
        self.assertAlmostEqual(dist.mean(), 77.4, delta=0.1)

    def test_sf_complements_cdf(self):
        """Test survival and CDF add to one"""
        dist = TruncatedLogNormal(4.330, 0.192)
        grid = np.linspace(40.0, 160.0, 25)
        np.testing.assert_allclose(dist.cdf(grid) + dist.sf(grid), 1.0, atol=1e-12)

    def test_zero_mass_truncation_rejected(self):
        """Test a truncation window with no mass is rejected"""
        with self.assertRaises(InvalidParameterError):
            TruncatedNormal(0.0, 1.0, 40.0, 41.0)

    def test_order_statistic_table_matches_quadrature(self):
        """Test the tabulated order-statistic integral against quadrature"""
        dist = TruncatedLogNormal(4.330, 0.192)
        integral = order_statistic_integral(dist, 3)
        for a, b in ((50.0, 70.0), (70.0, 110.0), (1e-4, 1200.0)):
            reference = dist.partial_expectation_dG(3, a, b)
            self.assertAlmostEqual(integral.between(a, b) / reference, 1.0, places=7)

    def test_closed_form_table_for_uniform(self):
        """Test the uniform table uses the closed form"""
        dist = Uniform(1.0, 2.0)
        integral = order_statistic_integral(dist, 1)
        self.assertAlmostEqual(integral.between(1.0, 2.0), 1.5, places=12)

    @settings(max_examples=25, deadline=None)
    @given(
        mu=st.floats(min_value=2.0, max_value=6.0),
        sigma=st.floats(min_value=0.05, max_value=1.0),
    )
    def test_cdf_is_monotone(self, mu, sigma):
        """Test the lognormal CDF never decreases"""
        dist = TruncatedLogNormal(mu, sigma)
        grid = np.exp(np.linspace(mu - 3 * sigma, mu + 3 * sigma, 50))
        self.assertTrue(np.all(np.diff(dist.cdf(grid)) >= 0.0))


FAMILIES = (
    Uniform(0.0, 1.0),
    Power(4.0),
    TruncatedNormal(0.5, 0.2, 0.0, 1.0),
    TruncatedLogNormal(4.330, 0.192),
)


class FamilyInvariantsTest(unittest.TestCase):
    """Checks every family has to pass."""

    def grid(self, dist):
        return np.linspace(float(dist.quantile(0.01)), float(dist.quantile(0.99)), 100)

    def test_pdf_is_derivative_of_cdf(self):
        """Test the density against a central difference of the CDF"""
        for dist in FAMILIES:
            with self.subTest(family=dist.family):
                grid = self.grid(dist)
                h = 1e-5 * (grid[-1] - grid[0])
                slope = (dist.cdf(grid + h) - dist.cdf(grid - h)) / (2 * h)
                np.testing.assert_allclose(dist.pdf(grid), slope, rtol=1e-4, atol=1e-9)

    def test_quantile_inverts_cdf(self):
        """Test quantile(cdf(v)) returns v across the bulk of the support"""
        for dist in FAMILIES:
            with self.subTest(family=dist.family):
                grid = self.grid(dist)
                np.testing.assert_allclose(dist.quantile(dist.cdf(grid)), grid, rtol=1e-8, atol=1e-10)

    def test_highest_of_three_matches_draws(self):
        """Test the order-statistic CDF and mean against simulated maxima"""
        n = 20_000
        for dist in FAMILIES:
            with self.subTest(family=dist.family):
                highest = dist.sample(np.random.default_rng(13), (n, 3)).max(axis=1)
                for p in (0.2, 0.5, 0.8):
                    v = float(dist.quantile(p ** (1 / 3)))
                    exact = float(dist.order_stat_cdf(3, v))
                    band = 5 * np.sqrt(exact * (1 - exact) / n)
                    self.assertAlmostEqual(float(np.mean(highest <= v)), exact, delta=band)
                mean = dist.partial_expectation_dG(3, dist.lower, dist.upper)
                self.assertAlmostEqual(float(highest.mean()), mean, delta=5 * float(highest.std()) / np.sqrt(n))

    def test_samples_pass_ks(self):
        """Test inverse-CDF draws against the family CDF"""
        for dist in FAMILIES:
            with self.subTest(family=dist.family):
                draws = dist.sample(np.random.default_rng(29), 5000)
                self.assertGreater(stats.kstest(draws, dist.cdf).pvalue, 1e-3)


class FromSpecTest(unittest.TestCase):
    def test_power(self):
        """Test building a power law from its record"""
        dist = from_spec({"family": "power", "params": [4]})
        self.assertIsInstance(dist, Power)
        self.assertEqual(dist.to_spec(), {"family": "power", "params": [4.0]})

    def test_uniform(self):
        """Test building a uniform law from its record"""
        dist = from_spec({"family": "uniform", "params": [0.6, 1.0]})
        self.assertEqual((dist.lower, dist.upper), (0.6, 1.0))

    def test_unknown_family(self):
        """Test an unknown family is rejected"""
        with self.assertRaises(InvalidParameterError):
            from_spec({"family": "gamma", "params": [1, 2]})

    def test_missing_family(self):
        """Test a record without a family"""
        with self.assertRaises(MissingParameterError):
            from_spec({"params": [1]})

    def test_bad_arity(self):
        """Test the wrong number of parameters"""
        with self.assertRaises(InvalidParameterError):
            from_spec({"family": "power", "params": [1, 2, 3]})


if __name__ == "__main__":
    unittest.main()
