"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Expected surplus, seller profit and sale probabilities of a threshold sequence.

Revenue is seller profit measured against the seller's own value v_s: every
term carries −v_s, so the numbers coincide with raw revenue when v_s = 0.
"""

from __future__ import annotations

from typing import List, Literal

import numpy as np
from aws_lambda_powertools import Logger

from recurring_auction.equilibrium import (
    AuctionPrimitives,
    ThresholdSequence,
    payoff_profile,
    reserves_from_thresholds,
)
from recurring_auction.errors import InvalidParameterError
from recurring_auction.outcomes.outcome_summary import OutcomeSummary

logger = Logger(__name__)

RevenueForm = Literal["auto", "given_reserves", "recovered_reserves"]


def _check(thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> None:
    if thresholds.rounds != primitives.rounds:
        raise InvalidParameterError(
            "thresholds", thresholds.values, f"{primitives.rounds + 1} values (T = {primitives.rounds})"
        )


def _cdf_powers(thresholds: ThresholdSequence, primitives: AuctionPrimitives, power: int) -> np.ndarray:
    return np.asarray(primitives.dist.cdf(thresholds.as_array())) ** power


def expected_surplus(thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> float:
    """
    TS = v_s + Σ_t δ^(t−1) { ∫_{v_t}^{v_(t−1)} (x − v_s) dF^N
                             − N F(v_(t−1))^(N−1) [F(v_(t−1)) − F(v_t)] K }
    """
    _check(thresholds, primitives)
    N = primitives.n_buyers
    v = thresholds.values
    F = np.asarray(primitives.dist.cdf(thresholds.as_array()))
    FN = F**N
    top = primitives.dist.order_statistic_integral(N)
    total = 0.0
    for t in range(1, primitives.rounds + 1):
        allocation = top.between(v[t], v[t - 1]) - primitives.seller_value * (FN[t - 1] - FN[t])
        entry = N * F[t - 1] ** (N - 1) * (F[t - 1] - F[t]) * primitives.entry_cost
        total += primitives.delta ** (t - 1) * (allocation - entry)
    return float(total + primitives.seller_value)


def revenue_given_reserves(thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> float:
    """
    Seller profit for the supplied reserves, before substituting r(v*):

        Σ_t δ^(t−1) { N(N−1) ∫_{v_t}^{v_(t−1)} (x − v_s) f(x) [F(v_(t−1)) − F(x)] F(x)^(N−2) dx
                      + N [F(v_(t−1)) − F(v_t)] F(v_t)^(N−1) (r_t − v_s) }

    The first line is a sale with two or more entrants, the second a sale at the reserve.
    """
    _check(thresholds, primitives)
    dist = primitives.dist
    N = primitives.n_buyers
    vs = primitives.seller_value
    v = thresholds.values
    F = np.asarray(dist.cdf(thresholds.as_array()))
    total = 0.0
    for t in range(1, primitives.rounds + 1):
        contested = 0.0
        if N >= 2 and v[t - 1] > v[t]:
            ceiling = F[t - 1]

            def integrand(x: float, ceiling: float = ceiling) -> float:
                fx = float(dist.cdf(x))
                return (x - vs) * (ceiling - fx) * fx ** (N - 2)

            contested = N * (N - 1) * dist.expect(integrand, v[t], v[t - 1])
        single = N * (F[t - 1] - F[t]) * F[t] ** (N - 1) * (primitives.reserve(t) - vs)
        total += primitives.delta ** (t - 1) * (contested + single)
    return float(total)


def revenue_at_recovered_reserves(
    thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> float:
    """
    Seller profit when the reserves are the ones that induce `thresholds`:

        δ^T N [1 − F(v_T)] G(v_T) v_T
        + Σ_t δ^(t−1) { N ∫_{v_t}^{v_(t−1)} x [1 − F(x)] dG(x) + N(1−δ) [1 − F(v_t)] G(v_t) v_t
                        − N G(v_(t−1)) [F(v_(t−1)) − F(v_t)] K − v_s [F(v_(t−1))^N − F(v_t)^N] }

    using ∫ x (1 − F) dF^(N−1) = ∫ x dF^(N−1) − (N−1)/N ∫ x dF^N.
    """
    _check(thresholds, primitives)
    dist = primitives.dist
    N = primitives.n_buyers
    T = primitives.rounds
    delta = primitives.delta
    v = thresholds.values
    F = np.asarray(dist.cdf(thresholds.as_array()))
    S = np.asarray(dist.sf(thresholds.as_array()))
    G = F ** (N - 1)
    FN = F**N
    rivals = dist.order_statistic_integral(N - 1)
    everyone = dist.order_statistic_integral(N)

    total = delta**T * N * S[T] * G[T] * v[T]
    for t in range(1, T + 1):
        upper, lower = v[t - 1], v[t]
        weighted = rivals.between(lower, upper) - (N - 1) / N * everyone.between(lower, upper)
        term = N * weighted
        term += N * (1.0 - delta) * S[t] * G[t] * v[t]
        term -= N * G[t - 1] * (F[t - 1] - F[t]) * primitives.entry_cost
        term -= primitives.seller_value * (FN[t - 1] - FN[t])
        total += delta ** (t - 1) * term
    return float(total)


def expected_revenue(
    thresholds: ThresholdSequence,
    primitives: AuctionPrimitives,
    form: RevenueForm = "auto",
) -> float:
    """
    Seller profit. `auto` uses the supplied reserves when `primitives` has them and
    the recovered-reserve closed form otherwise; both agree when the reserves are
    the ones recovered from `thresholds`.
    """
    if form == "auto":
        form = "given_reserves" if primitives.has_reserves else "recovered_reserves"
    if form == "given_reserves":
        return revenue_given_reserves(thresholds, primitives)
    if form == "recovered_reserves":
        return revenue_at_recovered_reserves(thresholds, primitives)
    raise InvalidParameterError("form", form, "auto, given_reserves or recovered_reserves")


def failure_probability(thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> float:
    """F(v*_T)^N."""
    _check(thresholds, primitives)
    return float(primitives.dist.cdf(thresholds[primitives.rounds]) ** primitives.n_buyers)


def sale_probabilities(thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> List[float]:
    """P(sold in round t) = F(v*_(t−1))^N − F(v*_t)^N."""
    _check(thresholds, primitives)
    FN = _cdf_powers(thresholds, primitives, primitives.n_buyers)
    return [float(FN[t - 1] - FN[t]) for t in range(1, primitives.rounds + 1)]


def expected_entrants(thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> List[float]:
    """Unconditional expected entrants in round t: N [F(v*_(t−1)) − F(v*_t)] F(v*_(t−1))^(N−1)."""
    _check(thresholds, primitives)
    N = primitives.n_buyers
    F = _cdf_powers(thresholds, primitives, 1)
    return [float(N * (F[t - 1] - F[t]) * F[t - 1] ** (N - 1)) for t in range(1, primitives.rounds + 1)]


def expected_buyer_payoff(thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> float:
    """
    N E[max(0, max_t Π_t(v))], the buyers' total expected surplus.

    With equilibrium thresholds, TS − v_s equals this plus the seller profit.
    Reserves are recovered from the thresholds when `primitives` has none.
    """
    _check(thresholds, primitives)
    if not primitives.has_reserves:
        primitives = primitives.with_reserves(reserves_from_thresholds(thresholds, primitives))
    dist = primitives.dist

    def best(v: float) -> float:
        return max(0.0, float(np.max(payoff_profile(v, thresholds, primitives))))

    cuts = sorted({dist.lower, dist.upper, *[x for x in thresholds.values if dist.lower < x < dist.upper]})
    total = sum(dist.expect(best, a, b) for a, b in zip(cuts[:-1], cuts[1:]) if b > a)
    return float(primitives.n_buyers * total)


def summarize(thresholds: ThresholdSequence, primitives: AuctionPrimitives) -> OutcomeSummary:
    """TS, revenue, failure, per-round sale probabilities and expected entrants in one record."""
    summary = OutcomeSummary(
        total_surplus=expected_surplus(thresholds, primitives),
        revenue=expected_revenue(thresholds, primitives),
        failure_probability=failure_probability(thresholds, primitives),
        per_round_sale_probability=tuple(sale_probabilities(thresholds, primitives)),
        expected_entrants_per_round=tuple(expected_entrants(thresholds, primitives)),
        thresholds=tuple(thresholds.values),
    )
    logger.debug({"message": "outcome summary", "summary": summary.to_dictionary()})
    return summary
