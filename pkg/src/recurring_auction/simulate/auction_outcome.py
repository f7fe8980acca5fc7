"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from recurring_auction.utilities.numbers_utility import NumberUtility
from recurring_auction.utilities.serialization_utility import SerializableModel


@dataclass(frozen=True)
class AuctionOutcome(SerializableModel):
    """One played-out recurring auction."""

    sold: bool
    round: Optional[int]
    price: Optional[float]
    entrants_per_round: Tuple[int, ...]
    winner_value: Optional[float]
    discounted_surplus_sample: float
    discounted_revenue_sample: float

    @property
    def entrants_in_sale_round(self) -> int:
        if self.round is None:
            return 0
        return self.entrants_per_round[self.round - 1]


@dataclass
class BatchOutcomes:
    """
    Column arrays for many auctions. `sale_round` is 0 for an auction that never
    sells; `price` and `winner_value` are NaN there.
    """

    sold: np.ndarray
    sale_round: np.ndarray
    price: np.ndarray
    winner_value: np.ndarray
    entrants: np.ndarray
    surplus: np.ndarray
    revenue: np.ndarray

    def __len__(self) -> int:
        return int(self.sold.size)

    @property
    def rounds(self) -> int:
        return int(self.entrants.shape[1])

    @classmethod
    def concatenate(cls, parts: Sequence["BatchOutcomes"], rounds: int) -> "BatchOutcomes":
        if not parts:
            return cls(
                sold=np.zeros(0, dtype=bool),
                sale_round=np.zeros(0, dtype=int),
                price=np.zeros(0),
                winner_value=np.zeros(0),
                entrants=np.zeros((0, rounds), dtype=int),
                surplus=np.zeros(0),
                revenue=np.zeros(0),
            )
        return cls(
            sold=np.concatenate([p.sold for p in parts]),
            sale_round=np.concatenate([p.sale_round for p in parts]),
            price=np.concatenate([p.price for p in parts]),
            winner_value=np.concatenate([p.winner_value for p in parts]),
            entrants=np.concatenate([p.entrants for p in parts]),
            surplus=np.concatenate([p.surplus for p in parts]),
            revenue=np.concatenate([p.revenue for p in parts]),
        )

    def outcome(self, i: int) -> AuctionOutcome:
        sold = bool(self.sold[i])
        return AuctionOutcome(
            sold=sold,
            round=int(self.sale_round[i]) if sold else None,
            price=float(self.price[i]) if sold else None,
            entrants_per_round=tuple(int(e) for e in self.entrants[i]),
            winner_value=float(self.winner_value[i]) if sold else None,
            discounted_surplus_sample=float(self.surplus[i]),
            discounted_revenue_sample=float(self.revenue[i]),
        )

    def to_frame(self) -> pd.DataFrame:
        """One row per auction with numbers formatted for CSV."""
        fmt = NumberUtility.to_significant_digits
        columns: Dict[str, List[Any]] = {
            "auction": list(range(len(self))),
            "sold": [int(s) for s in self.sold],
            "round": [int(r) for r in self.sale_round],
            "price": [fmt(p) if s else "" for p, s in zip(self.price, self.sold)],
            "winner_value": [fmt(w) if s else "" for w, s in zip(self.winner_value, self.sold)],
            "surplus": [fmt(x) for x in self.surplus],
            "revenue": [fmt(x) for x in self.revenue],
        }
        for t in range(self.rounds):
            columns[f"entrants_{t + 1}"] = self.entrants[:, t].astype(int).tolist()
        return pd.DataFrame(columns)
