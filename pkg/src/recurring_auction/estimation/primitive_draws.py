"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Λ | B, X: independent truncated normals for μ, σ and K around the linear
indices Xβ with scales ω.
"""

from __future__ import annotations

from typing import Any, List

import numpy as np
from scipy import stats

from recurring_auction.estimation.models import (
    ENTRY_COST_BOUNDS,
    MU_BOUNDS,
    SIGMA_BOUNDS,
    AuctionParams,
    Covariates,
    HyperParams,
)

_BOUNDS = (MU_BOUNDS, SIGMA_BOUNDS, ENTRY_COST_BOUNDS)


def primitive_laws(params: HyperParams, covariates: Covariates) -> List[Any]:
    """
    Frozen scipy truncated normals for (μ, σ, K). scipy's tail handling keeps
    these usable when the optimizer pushes an index far outside its bounds.
    """
    index = params.linear_index(covariates.as_array())
    laws = []
    for m, w, (lo, hi) in zip(index, params.scales, _BOUNDS):
        laws.append(stats.truncnorm((lo - m) / w, (hi - m) / w, loc=float(m), scale=float(w)))
    return laws


def draw_primitives(
    params: HyperParams, covariates: Covariates, rng: np.random.Generator
) -> AuctionParams:
    values = []
    for law, (lo, hi) in zip(primitive_laws(params, covariates), _BOUNDS):
        values.append(float(np.clip(law.rvs(random_state=rng), lo, hi)))
    mu, sigma, entry_cost = values
    return AuctionParams(mu=mu, sigma=sigma, entry_cost=entry_cost)


def log_density(params: HyperParams, covariates: Covariates, draws: np.ndarray) -> np.ndarray:
    """log φ(Λ | B, X) for rows of Λ = (μ, σ, K). Rows outside the bounds get −inf."""
    draws = np.atleast_2d(np.asarray(draws, dtype=float))
    total = np.zeros(draws.shape[0])
    for j, law in enumerate(primitive_laws(params, covariates)):
        total += law.logpdf(draws[:, j])
    return total


def log_density_matrix(params: HyperParams, X: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """log φ(Λ_is | B, X_i) for draws of shape (P, S, 3) and covariates (P, 4)."""
    index = params.linear_index(X)
    total = np.zeros(draws.shape[:2])
    for j, (w, (lo, hi)) in enumerate(zip(params.scales, _BOUNDS)):
        m = index[:, j][:, None]
        total += stats.truncnorm.logpdf(draws[:, :, j], (lo - m) / w, (hi - m) / w, loc=m, scale=w)
    return total
