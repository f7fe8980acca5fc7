"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import pytest

from recurring_auction.cli.golden_suites import synthetic_primitives
from recurring_auction.config import SimulationConfig
from recurring_auction.distributions import Uniform
from recurring_auction.equilibrium import AuctionPrimitives
from recurring_auction.estimation import equilibrium_or_no_entry
from recurring_auction.outcomes import (
    revenue_at_recovered_reserves,
    revenue_given_reserves,
    summarize,
)
from recurring_auction.simulate import simulate_outcomes, summarize_batch

DRAWS = 1_000_000


def _agreement(primitives, seed, z):
    thresholds = equilibrium_or_no_entry(primitives)
    batch = simulate_outcomes(thresholds, primitives, DRAWS, seed, SimulationConfig(workers=2, chunk_size=50_000))
    return summarize_batch(batch).agreement(summarize(thresholds, primitives), z=z)


@pytest.mark.integration
def test_example1_within_three_standard_errors():
    primitives = AuctionPrimitives(Uniform(0.0, 1.0), 2, 2, 0.97, 0.0, 0.2, (0.14, 0.0))
    agreement = _agreement(primitives, seed=2024, z=3.0)
    assert all(agreement.values()), agreement


# 20 instances with several statistics each; 4 standard errors keeps the family-wise false alarm rate low
@pytest.mark.integration
@pytest.mark.parametrize("index", range(20))
def test_lognormal_primitives(index):
    primitives = synthetic_primitives(20, seed=17)[index]
    agreement = _agreement(primitives, seed=index, z=4.0)
    assert all(agreement.values()), agreement


@pytest.mark.integration
@pytest.mark.parametrize("index", range(20))
def test_revenue_forms_agree(index):
    primitives = synthetic_primitives(20, seed=17)[index]
    thresholds = equilibrium_or_no_entry(primitives)
    given = revenue_given_reserves(thresholds, primitives)
    recovered = revenue_at_recovered_reserves(thresholds, primitives.without_reserves())
    assert abs(given - recovered) <= 1e-8 * max(1.0, abs(given))
