"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from recurring_auction.distributions import ValueDistribution
from recurring_auction.errors import InvalidParameterError
from recurring_auction.utilities.serialization_utility import SerializableModel

# thresholds closer than this (relative) are treated as equal
SKIP_TOLERANCE = 1e-12
ORDER_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ThresholdSequence(SerializableModel):
    """
    Entry cutoffs v*_0..v*_T, with v*_0 the upper support bound.

    A buyer with value v enters in round t when v*_t < v <= v*_(t−1).
    """

    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if len(values) < 2:
            raise InvalidParameterError("thresholds", values, "at least v*_0 and v*_1")
        diffs = np.diff(values)
        scale = max(1.0, max(abs(v) for v in values))
        if np.any(diffs > ORDER_TOLERANCE * scale):
            raise InvalidParameterError("thresholds", values, "weakly decreasing sequence")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_cutoffs(cls, dist: ValueDistribution, cutoffs: Sequence[float]) -> "ThresholdSequence":
        """Prepends v*_0 = v̄ and checks the support."""
        sequence = cls((dist.upper, *[float(c) for c in cutoffs]))
        sequence.validate_support(dist)
        return sequence

    @classmethod
    def no_entry(cls, dist: ValueDistribution, rounds: int) -> "ThresholdSequence":
        return cls(tuple([dist.upper] * (rounds + 1)))

    def validate_support(self, dist: ValueDistribution) -> None:
        scale = max(1.0, abs(dist.upper))
        if abs(self.values[0] - dist.upper) > ORDER_TOLERANCE * scale:
            raise InvalidParameterError("thresholds[0]", self.values[0], f"v*_0 = v̄ = {dist.upper}")
        if self.values[-1] < dist.lower - ORDER_TOLERANCE * scale:
            raise InvalidParameterError("thresholds", self.values, f"all >= v̲ = {dist.lower}")

    @property
    def rounds(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, t: int) -> float:
        return self.values[t]

    def cutoffs(self) -> List[float]:
        """v*_1..v*_T."""
        return list(self.values[1:])

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def is_skipped(self, t: int) -> bool:
        """Round t draws no entrants: v*_(t−1) = v*_t."""
        previous, current = self.values[t - 1], self.values[t]
        return previous - current <= SKIP_TOLERANCE * max(1.0, abs(previous))

    def skipped_rounds(self) -> List[int]:
        return [t for t in range(1, self.rounds + 1) if self.is_skipped(t)]

    def active_rounds(self) -> List[int]:
        return [t for t in range(1, self.rounds + 1) if not self.is_skipped(t)]

    def is_strictly_decreasing(self) -> bool:
        return not self.skipped_rounds()

    def to_dictionary(self) -> Dict[str, Any]:
        return {"thresholds": list(self.values), "skipped_rounds": self.skipped_rounds()}
