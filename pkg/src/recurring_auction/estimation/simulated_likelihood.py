"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Simulated log-likelihood by importance sampling over a fixed draw bank:

    ℓ(B) = Σ_i log[ (1/S) Σ_s L(y_i | Λ_is) φ(Λ_is | B, X_i) / g(Λ_is | X_i) ]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from recurring_auction.config import get_config
from recurring_auction.estimation.dataset import AuctionDataset
from recurring_auction.estimation.draw_bank import DrawBank
from recurring_auction.estimation.models import HyperParams
from recurring_auction.estimation.primitive_draws import log_density_matrix
from recurring_auction.utilities.serialization_utility import SerializableModel


@dataclass(frozen=True, eq=False)
class LikelihoodEvaluation(SerializableModel):
    """ℓ(B) with per-auction contributions and importance-sampling diagnostics."""

    value: float
    contributions: np.ndarray
    floored: int
    effective_sample_size: np.ndarray

    @property
    def min_effective_sample_size(self) -> float:
        return float(np.min(self.effective_sample_size)) if self.effective_sample_size.size else 0.0


def importance_log_weights(params: HyperParams, dataset: AuctionDataset, bank: DrawBank) -> np.ndarray:
    """log φ(Λ | B) − log g(Λ); −inf for draws whose solve failed. Zero at B = B₀."""
    log_w = log_density_matrix(params, dataset.covariate_matrix(), bank.draws) - bank.log_proposal
    return np.where(bank.valid, log_w, -np.inf)


def effective_sample_size(log_weights: np.ndarray) -> np.ndarray:
    """(Σw)² / Σw² per auction."""
    with np.errstate(invalid="ignore"):
        ess = np.exp(2.0 * logsumexp(log_weights, axis=1) - logsumexp(2.0 * log_weights, axis=1))
    return np.nan_to_num(ess, nan=0.0)


def evaluate_loglik(
    params: HyperParams,
    dataset: AuctionDataset,
    bank: DrawBank,
    floor: Optional[float] = None,
) -> LikelihoodEvaluation:
    """
    Contributions below `floor` (an auction no draw can explain) are floored and
    counted.
    """
    floor = floor if floor is not None else get_config().estimation.likelihood_floor
    log_w = importance_log_weights(params, dataset, bank)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_terms = np.log(bank.likelihood) + log_w
        contributions = logsumexp(log_terms, axis=1) - np.log(bank.n_draws)
    log_floor = np.log(floor)
    floored = ~(contributions >= log_floor)
    contributions = np.where(floored, log_floor, contributions)
    return LikelihoodEvaluation(
        value=float(np.sum(contributions)),
        contributions=contributions,
        floored=int(np.count_nonzero(floored)),
        effective_sample_size=effective_sample_size(log_w),
    )


def simulated_loglik(
    params: HyperParams,
    dataset: AuctionDataset,
    bank: DrawBank,
    floor: Optional[float] = None,
) -> float:
    return evaluate_loglik(params, dataset, bank, floor).value
