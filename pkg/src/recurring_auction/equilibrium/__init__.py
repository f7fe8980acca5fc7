"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from recurring_auction.equilibrium.auction_primitives import AuctionPrimitives
from recurring_auction.equilibrium.equilibrium_solver import (
    EquilibriumSolution,
    EquilibriumSolver,
    solve_equilibrium,
    solve_thresholds,
)
from recurring_auction.equilibrium.payoffs import (
    best_entry_time,
    definition_gaps,
    indifference_residuals,
    interim_payoff,
    payoff_profile,
)
from recurring_auction.equilibrium.reserve_recovery import reserves_from_thresholds
from recurring_auction.equilibrium.threshold_sequence import ThresholdSequence

__all__ = [
    "AuctionPrimitives",
    "ThresholdSequence",
    "EquilibriumSolution",
    "EquilibriumSolver",
    "solve_equilibrium",
    "solve_thresholds",
    "interim_payoff",
    "payoff_profile",
    "best_entry_time",
    "indifference_residuals",
    "definition_gaps",
    "reserves_from_thresholds",
]
