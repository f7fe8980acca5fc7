"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Data behind the surplus-versus-N figure and the reserve-fraction plot.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import pandas as pd
from aws_lambda_powertools import Logger

from recurring_auction.config import SolverConfig
from recurring_auction.design.optimal_design import DesignResult, efficient_design
from recurring_auction.distributions import ValueDistribution
from recurring_auction.equilibrium import AuctionPrimitives
from recurring_auction.errors import InvalidParameterError
from recurring_auction.outcomes import single_round_efficient
from recurring_auction.utilities.numbers_utility import NumberUtility
from recurring_auction.utilities.serialization_utility import SerializableModel

logger = Logger(__name__)


@dataclass
class FigureSweep(SerializableModel):
    round_values: List[int]
    rows: List[Dict[str, float]] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame.from_records(self.rows)

    def to_csv(self) -> str:
        frame = self.to_frame()
        for column in frame.columns.drop("n_buyers"):
            frame[column] = frame[column].map(NumberUtility.to_significant_digits)
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()

    def column(self, name: str) -> List[float]:
        return [row[name] for row in self.rows]


def figure_sweep(
    dist: ValueDistribution,
    entry_cost: float,
    seller_value: float,
    delta: float,
    n_values: Sequence[int],
    round_values: Sequence[int] = (2, 3),
    settings: Optional[SolverConfig] = None,
) -> FigureSweep:
    """
    Maximized expected surplus against N: the single-round efficient auction
    and the efficiently designed recurring auction for each T in `round_values`.
    """
    sweep = FigureSweep(round_values=list(round_values))
    for n in n_values:
        base = AuctionPrimitives(
            dist=dist,
            n_buyers=int(n),
            rounds=1,
            delta=delta,
            seller_value=seller_value,
            entry_cost=entry_cost,
        )
        row: Dict[str, float] = {
            "n_buyers": int(n),
            "single_round_surplus": single_round_efficient(base).total_surplus,
        }
        for rounds in round_values:
            result = efficient_design(base.with_rounds(rounds), settings)
            row[f"designed_surplus_T{rounds}"] = result.objective_value
        logger.debug({"message": "figure sweep row", "row": row})
        sweep.rows.append(row)
    return sweep


def reserve_fractions(result: DesignResult, reference: float) -> List[float]:
    """Designed reserves as fractions of a reference price such as the assessed value."""
    if not reference > 0:
        raise InvalidParameterError("reference", reference, "reference > 0")
    return [r / reference for r in result.reserves]
