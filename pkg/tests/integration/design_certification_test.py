"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

import numpy as np
import pytest

from recurring_auction.design import certify, efficient_design, foc_residuals, revenue_design
from recurring_auction.distributions import Power, TruncatedLogNormal, Uniform
from recurring_auction.equilibrium import AuctionPrimitives
from recurring_auction.outcomes import (
    expected_surplus,
    revenue_at_recovered_reserves,
    single_round_efficient,
    single_round_revenue_optimal,
)


def _random_law(rng):
    """A value law, a typical scale for the entry cost and a seller value inside the support."""
    pick = rng.random()
    if pick < 0.35:
        low = float(rng.uniform(0.0, 1.0))
        return Uniform(low, low + 1.0), 1.0, low + float(rng.uniform(0.0, 0.3))
    if pick < 0.7:
        return Power(float(rng.uniform(1.0, 5.0))), 1.0, float(rng.uniform(0.0, 0.3))
    dist = TruncatedLogNormal(float(rng.uniform(4.0, 4.6)), float(rng.uniform(0.15, 0.3)))
    median = float(dist.quantile(0.5))
    return dist, median, float(rng.uniform(0.0, 0.5)) * median


def _random_primitives(count, seed):
    rng = np.random.default_rng(seed)
    draws = []
    for index in range(count):
        dist, scale, seller_value = _random_law(rng)
        draws.append(
            AuctionPrimitives(
                dist=dist,
                n_buyers=int(rng.integers(2, 6)),
                rounds=2,
                delta=float(rng.uniform(0.85, 0.98)),
                # every other draw keeps the seller value at zero
                seller_value=seller_value if index % 2 else 0.0,
                entry_cost=float(rng.uniform(0.02, 0.15)) * scale,
            )
        )
    return draws


CASES = _random_primitives(30, seed=99)


@pytest.mark.integration
@pytest.mark.parametrize("index", range(len(CASES)))
def test_efficient_design_certified_and_dominant(index):
    primitives = CASES[index]
    result = efficient_design(primitives)
    assert result.max_foc_residual < 1e-8
    assert certify(result, primitives).certified
    assert result.objective_value > single_round_efficient(primitives.with_rounds(1)).total_surplus


@pytest.mark.integration
@pytest.mark.parametrize("index", range(len(CASES)))
def test_revenue_design_certified_and_dominant(index):
    primitives = CASES[index]
    result = revenue_design(primitives)
    assert result.max_foc_residual < 1e-8
    assert certify(result, primitives).certified
    assert result.objective_value > single_round_revenue_optimal(primitives.with_rounds(1)).revenue


@pytest.mark.integration
@pytest.mark.parametrize("index", range(len(CASES)))
def test_designs_rank_by_their_own_objective(index):
    """Each design beats the other on the objective it was built for."""
    primitives = CASES[index]
    efficient = efficient_design(primitives)
    profitable = revenue_design(primitives)
    scale = max(1.0, abs(efficient.objective_value))
    assert expected_surplus(efficient.thresholds, primitives) >= expected_surplus(profitable.thresholds, primitives) - 1e-9 * scale
    assert revenue_at_recovered_reserves(profitable.thresholds, primitives) >= (
        revenue_at_recovered_reserves(efficient.thresholds, primitives) - 1e-9 * scale
    )


@pytest.mark.integration
@pytest.mark.parametrize("index", range(len(CASES)))
def test_revenue_design_solves_virtual_value_conditions(index):
    """The profit-maximizing cutoffs satisfy the efficiency conditions with ψ in place of v."""
    primitives = CASES[index]
    profitable = revenue_design(primitives)
    np.testing.assert_allclose(foc_residuals(profitable.thresholds, primitives, "revenue"), 0.0, atol=1e-8)
    efficient = efficient_design(primitives)
    assert max(abs(r) for r in foc_residuals(efficient.thresholds, primitives, "revenue")) > 1e-6
