"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from recurring_auction.outcomes.counterfactuals import (
    CounterfactualRow,
    CounterfactualTable,
    counterfactual_table,
)
from recurring_auction.outcomes.outcome_summary import OutcomeSummary
from recurring_auction.outcomes.single_round import (
    DuopolyOutcome,
    SingleRoundBenchmark,
    always_enter_cutoff,
    asymmetric_duopoly_single_round,
    single_round_cutoff,
    single_round_efficient,
    single_round_revenue_optimal,
)
from recurring_auction.outcomes.welfare import (
    expected_buyer_payoff,
    expected_entrants,
    expected_revenue,
    expected_surplus,
    failure_probability,
    revenue_at_recovered_reserves,
    revenue_given_reserves,
    sale_probabilities,
    summarize,
)

__all__ = [
    "OutcomeSummary",
    "expected_surplus",
    "expected_revenue",
    "revenue_given_reserves",
    "revenue_at_recovered_reserves",
    "failure_probability",
    "sale_probabilities",
    "expected_entrants",
    "expected_buyer_payoff",
    "summarize",
    "SingleRoundBenchmark",
    "DuopolyOutcome",
    "single_round_cutoff",
    "single_round_efficient",
    "single_round_revenue_optimal",
    "always_enter_cutoff",
    "asymmetric_duopoly_single_round",
    "CounterfactualRow",
    "CounterfactualTable",
    "counterfactual_table",
]
