"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from recurring_auction.utilities.numbers_utility import NumberUtility
from recurring_auction.utilities.serialization_utility import SerializableModel


@dataclass(frozen=True)
class OutcomeSummary(SerializableModel):
    """Closed-form welfare and revenue of one threshold sequence."""

    total_surplus: float
    revenue: float
    failure_probability: float
    per_round_sale_probability: Tuple[float, ...]
    expected_entrants_per_round: Tuple[float, ...]
    thresholds: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def rounds(self) -> int:
        return len(self.per_round_sale_probability)

    def total_probability(self) -> float:
        """Sale probabilities plus failure probability; 1 up to rounding."""
        return float(sum(self.per_round_sale_probability) + self.failure_probability)

    def csv_header(self) -> List[str]:
        header = ["total_surplus", "revenue", "failure_probability"]
        header += [f"sale_probability_{t}" for t in range(1, self.rounds + 1)]
        header += [f"expected_entrants_{t}" for t in range(1, self.rounds + 1)]
        header += [f"threshold_{t}" for t in range(1, len(self.thresholds))]
        return header

    def to_row(self) -> Dict[str, str]:
        """One CSV row, numbers at 6 significant digits."""
        values: List[float] = [self.total_surplus, self.revenue, self.failure_probability]
        values += list(self.per_round_sale_probability)
        values += list(self.expected_entrants_per_round)
        values += list(self.thresholds[1:])
        return {
            key: NumberUtility.to_significant_digits(value)
            for key, value in zip(self.csv_header(), values)
        }

    def to_dictionary(self) -> Dict[str, Any]:
        return {
            "total_surplus": self.total_surplus,
            "revenue": self.revenue,
            "failure_probability": self.failure_probability,
            "per_round_sale_probability": list(self.per_round_sale_probability),
            "expected_entrants_per_round": list(self.expected_entrants_per_round),
            "thresholds": list(self.thresholds),
        }
