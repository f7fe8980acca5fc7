"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from recurring_auction.distributions import ValueDistribution
from recurring_auction.distributions.order_statistic_integral import OrderStatisticIntegral
from recurring_auction.errors import InvalidParameterError, MissingParameterError
from recurring_auction.utilities.serialization_utility import SerializableModel


@dataclass(frozen=True)
class AuctionPrimitives(SerializableModel):
    """
    One recurring-auction environment.

    Attributes:
        dist: value law F shared by all buyers
        n_buyers: N, potential buyers (>= 1)
        rounds: T, maximum number of rounds (>= 1)
        delta: discount factor between rounds, in (0, 1)
        seller_value: v_s
        entry_cost: K > 0
        reserves: r_1..r_T, or None for design problems that choose them
    """

    dist: ValueDistribution
    n_buyers: int
    rounds: int
    delta: float
    seller_value: float
    entry_cost: float
    reserves: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        if int(self.n_buyers) != self.n_buyers or self.n_buyers < 1:
            raise InvalidParameterError("n_buyers", self.n_buyers, "integer >= 1")
        if int(self.rounds) != self.rounds or self.rounds < 1:
            raise InvalidParameterError("rounds", self.rounds, "integer >= 1")
        if not 0.0 < self.delta < 1.0:
            raise InvalidParameterError("delta", self.delta, "0 < delta < 1")
        if not self.entry_cost > 0.0:
            raise InvalidParameterError("entry_cost", self.entry_cost, "K > 0")
        if not self.seller_value < self.dist.upper - self.entry_cost:
            raise InvalidParameterError(
                "seller_value",
                self.seller_value,
                f"v_s < v̄ − K = {self.dist.upper - self.entry_cost:g}",
            )
        if self.reserves is not None:
            reserves = tuple(float(r) for r in self.reserves)
            if len(reserves) != self.rounds:
                raise InvalidParameterError(
                    "reserves", reserves, f"exactly {self.rounds} values (one per round)"
                )
            if not all(np.isfinite(reserves)):
                raise InvalidParameterError("reserves", reserves, "finite values")
            object.__setattr__(self, "reserves", reserves)

    # ------------------------------------------------------------------
    @property
    def rivals(self) -> int:
        """N − 1, the exponent of G."""
        return self.n_buyers - 1

    @property
    def has_reserves(self) -> bool:
        return self.reserves is not None

    def reserve(self, t: int) -> float:
        """r_t for 1 <= t <= T."""
        if self.reserves is None:
            raise MissingParameterError("reserves")
        if not 1 <= t <= self.rounds:
            raise InvalidParameterError("round", t, f"1 <= t <= {self.rounds}")
        return self.reserves[t - 1]

    def reserve_array(self) -> np.ndarray:
        if self.reserves is None:
            raise MissingParameterError("reserves")
        return np.asarray(self.reserves, dtype=float)

    def G(self, v):  # noqa: N802
        """Order-statistic CDF F(v)^(N−1)."""
        return self.dist.order_stat_cdf(self.rivals, v)

    def g(self, v):
        """Density of G."""
        m = self.rivals
        arr = np.asarray(v, dtype=float)
        if m == 0:
            result = np.zeros_like(arr)
        else:
            result = m * np.asarray(self.dist.cdf(arr)) ** (m - 1) * np.asarray(self.dist.pdf(arr))
        return float(result) if np.ndim(v) == 0 else result

    @property
    def integral(self) -> OrderStatisticIntegral:
        """∫ x dG evaluator for this N."""
        return self.dist.order_statistic_integral(self.rivals)

    # ------------------------------------------------------------------
    def with_reserves(self, reserves: Sequence[float]) -> "AuctionPrimitives":
        return replace(self, reserves=tuple(float(r) for r in reserves))

    def without_reserves(self) -> "AuctionPrimitives":
        return replace(self, reserves=None)

    def truncated(self, rounds: int) -> "AuctionPrimitives":
        """The first `rounds` rounds, keeping the reserve prefix."""
        if not 1 <= rounds <= self.rounds:
            raise InvalidParameterError("rounds", rounds, f"1 <= T' <= {self.rounds}")
        reserves = None if self.reserves is None else self.reserves[:rounds]
        return replace(self, rounds=rounds, reserves=reserves)

    def with_entry_cost(self, entry_cost: float) -> "AuctionPrimitives":
        return replace(self, entry_cost=float(entry_cost))

    def with_buyers(self, n_buyers: int) -> "AuctionPrimitives":
        return replace(self, n_buyers=int(n_buyers))

    def with_rounds(self, rounds: int) -> "AuctionPrimitives":
        reserves = None
        if self.reserves is not None and rounds <= self.rounds:
            reserves = self.reserves[:rounds]
        return replace(self, rounds=int(rounds), reserves=reserves)

    def to_dictionary(self) -> Dict[str, Any]:
        return {
            "distribution": self.dist.to_spec(),
            "n_buyers": self.n_buyers,
            "rounds": self.rounds,
            "delta": self.delta,
            "seller_value": self.seller_value,
            "entry_cost": self.entry_cost,
            "reserves": None if self.reserves is None else list(self.reserves),
        }
