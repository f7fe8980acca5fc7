"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Counterfactual tables: fewer rounds, designed reserves, scaled entry costs.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Sequence

import pandas as pd
from aws_lambda_powertools import Logger

from recurring_auction.config import SolverConfig
from recurring_auction.equilibrium import AuctionPrimitives, ThresholdSequence, solve_thresholds
from recurring_auction.errors import InvalidParameterError, NoEntryEquilibriumError
from recurring_auction.outcomes.outcome_summary import OutcomeSummary
from recurring_auction.outcomes.welfare import summarize
from recurring_auction.utilities.numbers_utility import NumberUtility
from recurring_auction.utilities.serialization_utility import SerializableModel

logger = Logger(__name__)

CounterfactualMode = Literal["truncate-T", "optimal-reserves", "entry-cost-scale"]
MODES = ("truncate-T", "optimal-reserves", "entry-cost-scale")
DEFAULT_COST_SCALES = (0.9, 1.0, 1.1)


@dataclass(frozen=True)
class CounterfactualRow(SerializableModel):
    rounds: int
    label: str
    entry_cost_scale: float
    summary: OutcomeSummary
    reserves: tuple = ()


@dataclass
class CounterfactualTable(SerializableModel):
    mode: str
    settings: Dict[str, Any]
    rows: List[CounterfactualRow] = field(default_factory=list)

    def row(self, rounds: int, label: Optional[str] = None, scale: float = 1.0) -> CounterfactualRow:
        for row in self.rows:
            if row.rounds == rounds and (label is None or row.label == label) and row.entry_cost_scale == scale:
                return row
        raise KeyError((rounds, label, scale))

    def to_frame(self) -> pd.DataFrame:
        """One row per counterfactual; numeric columns at full precision."""
        records = []
        for row in self.rows:
            summary = row.summary
            record: Dict[str, Any] = {
                "rounds": row.rounds,
                "label": row.label,
                "entry_cost_scale": row.entry_cost_scale,
                "total_surplus": summary.total_surplus,
                "revenue": summary.revenue,
                "failure_probability": summary.failure_probability,
            }
            for t, p in enumerate(summary.per_round_sale_probability, start=1):
                record[f"sale_probability_{t}"] = p
            for t, r in enumerate(row.reserves, start=1):
                record[f"reserve_{t}"] = r
            records.append(record)
        return pd.DataFrame.from_records(records)

    def to_csv(self) -> str:
        """CSV text led by a comment line naming the mode and settings."""
        settings = " ".join(f"{k}={v}" for k, v in sorted(self.settings.items()))
        buffer = io.StringIO()
        buffer.write(f"# mode={self.mode} {settings}\n")
        frame = self.to_frame()
        numeric = frame.select_dtypes("number").columns.difference(["rounds"])
        for column in numeric:
            frame[column] = frame[column].map(NumberUtility.to_significant_digits)
        frame.to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()


def _equilibrium_summary(
    primitives: AuctionPrimitives, settings: Optional[SolverConfig]
) -> OutcomeSummary:
    try:
        thresholds = solve_thresholds(primitives, settings)
    except NoEntryEquilibriumError as e:
        logger.info({"message": "no entry in counterfactual", "rounds": primitives.rounds})
        thresholds = ThresholdSequence(tuple(e.thresholds))
    return summarize(thresholds, primitives)


def counterfactual_table(
    primitives: AuctionPrimitives,
    mode: CounterfactualMode,
    cost_scales: Sequence[float] = DEFAULT_COST_SCALES,
    settings: Optional[SolverConfig] = None,
) -> CounterfactualTable:
    """
    Re-solves the equilibrium for each counterfactual row.

    truncate-T: T' = 1..T with the reserve prefix r_1..r_T' (needs reserves).
    optimal-reserves: efficiency- and revenue-designed reserves for each T'.
    entry-cost-scale: each cost scale × each T', reserves held at their prefix.
    """
    if mode not in MODES:
        raise InvalidParameterError("mode", mode, f"one of {', '.join(MODES)}")
    table = CounterfactualTable(mode=mode, settings={"T": primitives.rounds, "N": primitives.n_buyers})
    horizon = range(1, primitives.rounds + 1)

    if mode == "truncate-T":
        for rounds in horizon:
            shorter = primitives.truncated(rounds)
            table.rows.append(
                CounterfactualRow(rounds, "observed", 1.0, _equilibrium_summary(shorter, settings), tuple(shorter.reserve_array()))
            )
    elif mode == "entry-cost-scale":
        table.settings["scales"] = ",".join(f"{s:g}" for s in cost_scales)
        for scale in cost_scales:
            for rounds in horizon:
                shorter = primitives.truncated(rounds).with_entry_cost(primitives.entry_cost * scale)
                table.rows.append(
                    CounterfactualRow(rounds, "observed", float(scale), _equilibrium_summary(shorter, settings), tuple(shorter.reserve_array()))
                )
    else:
        from recurring_auction.design import efficient_design, revenue_design

        for rounds in horizon:
            shorter = primitives.with_rounds(rounds).without_reserves()
            for label, designer in (("efficiency", efficient_design), ("revenue", revenue_design)):
                result = designer(shorter, settings)
                designed = shorter.with_reserves(result.reserves)
                table.rows.append(
                    CounterfactualRow(rounds, label, 1.0, summarize(result.thresholds, designed), tuple(result.reserves))
                )
    logger.debug({"message": "counterfactual table", "mode": mode, "rows": len(table.rows)})
    return table
