"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from recurring_auction.simulate.auction_outcome import AuctionOutcome, BatchOutcomes
from recurring_auction.simulate.monte_carlo import (
    OutcomeEstimate,
    chunk_generator,
    estimate_outcomes,
    play_auction,
    simulate_auction,
    simulate_batch,
    simulate_outcomes,
    summarize_batch,
)

__all__ = [
    "AuctionOutcome",
    "BatchOutcomes",
    "OutcomeEstimate",
    "simulate_batch",
    "simulate_auction",
    "play_auction",
    "simulate_outcomes",
    "summarize_batch",
    "estimate_outcomes",
    "chunk_generator",
]
