"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Interim payoffs of entering in a given round, and the indifference checks
built on them.
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np

from recurring_auction.equilibrium.auction_primitives import AuctionPrimitives
from recurring_auction.equilibrium.threshold_sequence import ThresholdSequence
from recurring_auction.errors import InvalidParameterError


def _check_round(t: int, thresholds: ThresholdSequence) -> None:
    if not 1 <= t <= thresholds.rounds:
        raise InvalidParameterError("round", t, f"1 <= t <= {thresholds.rounds}")


def interim_payoff(
    v: float, t: int, thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> float:
    """
    Expected discounted payoff Π_t(v) of a buyer with value v who enters in round t,
    given that every rival follows `thresholds`.

    Rivals in (v*_t, v*_(t−1)] enter alongside; those above v*_(t−1) entered
    earlier and a sale would already have ended the auction. The buyer wins
    against rivals below min(max(v, v*_t), v*_(t−1)) and pays the larger of
    r_t and the second-highest value.
    """
    _check_round(t, thresholds)
    previous, current = thresholds[t - 1], thresholds[t]
    reserve = primitives.reserve(t)
    G = primitives.G
    a = current
    b = min(max(v, current), previous)
    contested = v * (G(b) - G(a)) - primitives.integral.between(a, b)
    uncontested = (v - reserve) * G(current)
    return primitives.delta ** (t - 1) * (
        contested + uncontested - G(previous) * primitives.entry_cost
    )


def payoff_profile(
    v: float, thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> np.ndarray:
    """[Π_1(v), ..., Π_T(v)]."""
    return np.array(
        [interim_payoff(v, t, thresholds, primitives) for t in range(1, thresholds.rounds + 1)]
    )


def best_entry_time(
    v: float, thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> Optional[int]:
    """
    The round maximizing Π_t(v), or None when no round pays strictly more than
    staying out. Ties go to the earliest round.
    """
    profile = payoff_profile(v, thresholds, primitives)
    best = int(np.argmax(profile))
    if profile[best] <= 0.0:
        return None
    return best + 1


def _next_active_round(t: int, thresholds: ThresholdSequence) -> Optional[int]:
    for tau in range(t + 1, thresholds.rounds + 1):
        if not thresholds.is_skipped(tau):
            return tau
    return None


def indifference_residuals(
    thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> List[float]:
    """
    Per round t, (Π_t(v*_t) − Π_τ(v*_t)) / δ^(t−1), where τ is the next round
    that draws entrants (or staying out, worth 0, when none is left).

    Zero at every active round is the equilibrium indifference condition.
    """
    residuals = []
    for t in range(1, thresholds.rounds + 1):
        v = thresholds[t]
        here = interim_payoff(v, t, thresholds, primitives)
        following = _next_active_round(t, thresholds)
        there = 0.0 if following is None else interim_payoff(v, following, thresholds, primitives)
        residuals.append((here - there) / primitives.delta ** (t - 1))
    return residuals


def definition_gaps(
    thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> List[float]:
    """
    Per round t, (Π_t(v*_t) − max(0, max_{τ>t} Π_τ(v*_t))) / δ^(t−1).

    Active rounds should give zero, skipped rounds a value <= 0. A negative
    gap at an active round means a later, non-adjacent round is preferred.
    """
    gaps = []
    for t in range(1, thresholds.rounds + 1):
        v = thresholds[t]
        here = interim_payoff(v, t, thresholds, primitives)
        later = [interim_payoff(v, tau, thresholds, primitives) for tau in range(t + 1, thresholds.rounds + 1)]
        best_later = max([0.0, *later])
        gaps.append((here - best_later) / primitives.delta ** (t - 1))
    return gaps
