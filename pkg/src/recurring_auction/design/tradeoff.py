"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from recurring_auction.design.optimal_design import Objective, objective_transform
from recurring_auction.equilibrium import AuctionPrimitives, ThresholdSequence
from recurring_auction.utilities.serialization_utility import SerializableModel


@dataclass(frozen=True)
class TradeoffRow(SerializableModel):
    """
    Effect of moving the marginal type v*_t from round t to round t+1.

    All three terms carry the same factor ρ = [F(v*_t)/F(v*_(t−1))]^(N−1),
    the chance that nobody else shows up before round t+1.
    """

    round: int
    entry_cost_saving: float
    delayed_allocation_loss: float
    next_round_entry_loss: float

    @property
    def balance(self) -> float:
        """Gain minus losses; zero at an optimum."""
        return self.entry_cost_saving - self.delayed_allocation_loss - self.next_round_entry_loss


def design_tradeoff_report(
    primitives: AuctionPrimitives,
    thresholds: ThresholdSequence,
    objective: Objective = "efficiency",
) -> List[TradeoffRow]:
    """
    Rows t = 1..T−1 of

        gain  = {1 − δρ} K
        delay = (1 − δ) ρ (h(v*_t) − v_s)
        entry = δρ (N − 1) [F(v*_t) − F(v*_(t+1))] / F(v*_t) · K

    The last round has no continuation and no row.
    """
    N, K, delta, vs = primitives.n_buyers, primitives.entry_cost, primitives.delta, primitives.seller_value
    F = np.asarray(primitives.dist.cdf(thresholds.as_array()), dtype=float)
    h = objective_transform(primitives, objective, thresholds.as_array())
    rows = []
    for t in range(1, thresholds.rounds):
        rho = (F[t] / F[t - 1]) ** (N - 1)
        rows.append(
            TradeoffRow(
                round=t,
                entry_cost_saving=float((1.0 - delta * rho) * K),
                delayed_allocation_loss=float((1.0 - delta) * rho * (h[t] - vs)),
                next_round_entry_loss=float(delta * rho * (N - 1) * (F[t] - F[t + 1]) / F[t] * K),
            )
        )
    return rows
