"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from __future__ import annotations

from typing import List

from recurring_auction.equilibrium.auction_primitives import AuctionPrimitives
from recurring_auction.equilibrium.threshold_sequence import ThresholdSequence
from recurring_auction.errors import InvalidParameterError, ZeroMassError


def reserves_from_thresholds(
    thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> List[float]:
    """
    Reserve prices r_1..r_T that make `thresholds` an equilibrium.

    Inverts the indifference conditions backward from the last round:

        r_t = [ Σ_{τ>=t} (1−δ)δ^(τ−t) G(v_τ) v_τ − K G(v_(t−1))
                + Σ_{τ=t}^{T−1} δ^(τ−t+1) ∫_{v_(τ+1)}^{v_τ} x dG
                + δ^(T−t+1) G(v_T) v_T ] / G(v_t)

    Only reserves and thresholds of rounds that draw entrants round-trip.
    `primitives.reserves` is ignored.

    Raises:
        ZeroMassError: when G(v*_t) = 0 for some t.
    """
    T = primitives.rounds
    if thresholds.rounds != T:
        raise InvalidParameterError("thresholds", thresholds.values, f"{T + 1} values")
    thresholds.validate_support(primitives.dist)

    delta = primitives.delta
    K = primitives.entry_cost
    v = thresholds.values
    G = [float(primitives.G(x)) for x in v]
    between = primitives.integral.between

    reserves = []
    for t in range(1, T + 1):
        if G[t] <= 0.0:
            raise ZeroMassError("G(v*_t)", t)
        total = sum((1.0 - delta) * delta ** (tau - t) * G[tau] * v[tau] for tau in range(t, T + 1))
        total -= K * G[t - 1]
        total += sum(delta ** (tau - t + 1) * between(v[tau + 1], v[tau]) for tau in range(t, T))
        total += delta ** (T - t + 1) * G[T] * v[T]
        reserves.append(total / G[t])
    return reserves
