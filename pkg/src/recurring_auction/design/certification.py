"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from aws_lambda_powertools import Logger

from recurring_auction.design.optimal_design import DesignResult
from recurring_auction.equilibrium import AuctionPrimitives, ThresholdSequence
from recurring_auction.outcomes import expected_surplus, revenue_at_recovered_reserves
from recurring_auction.utilities.serialization_utility import SerializableModel

logger = Logger(__name__)


@dataclass(frozen=True)
class CertificationReport(SerializableModel):
    objective_value: float
    largest_gain: float
    worst_round: Optional[int]
    step: float
    tolerance: float

    @property
    def certified(self) -> bool:
        return self.largest_gain <= self.tolerance


def _objective(result: DesignResult, thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> float:
    if result.objective == "efficiency":
        return expected_surplus(thresholds, primitives)
    return revenue_at_recovered_reserves(thresholds, primitives)


def certify(
    result: DesignResult,
    primitives: AuctionPrimitives,
    step: float = 1e-3,
    tolerance: float = 1e-10,
) -> CertificationReport:
    """
    Moves each v*_t by ±step, restores monotonicity, and re-evaluates the
    objective. A certified design has no move that gains more than `tolerance`.
    """
    primitives = primitives.without_reserves()
    dist = primitives.dist
    base = result.thresholds.as_array()
    best_value = _objective(result, result.thresholds, primitives)
    largest_gain = -np.inf
    worst_round = None
    for t in range(1, result.thresholds.rounds + 1):
        for direction in (-1.0, 1.0):
            moved = base.copy()
            moved[t] = np.clip(moved[t] + direction * step, dist.lower, dist.upper)
            moved[1:] = np.minimum.accumulate(np.minimum(moved[1:], dist.upper))
            gain = _objective(result, ThresholdSequence(tuple(moved)), primitives) - best_value
            if gain > largest_gain:
                largest_gain, worst_round = gain, t
    report = CertificationReport(
        objective_value=best_value,
        largest_gain=float(largest_gain),
        worst_round=worst_round,
        step=step,
        tolerance=tolerance,
    )
    if not report.certified:
        logger.warning({"message": "design failed perturbation check", "report": report.to_dictionary()})
    return report
