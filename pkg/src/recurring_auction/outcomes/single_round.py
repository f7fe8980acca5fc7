"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Single-round benchmarks: the efficient and the revenue-optimal one-shot
auction, and the duopoly with one bidder always entering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from aws_lambda_powertools import Logger
from scipy import optimize

from recurring_auction.config import get_config
from recurring_auction.equilibrium import (
    AuctionPrimitives,
    ThresholdSequence,
    reserves_from_thresholds,
)
from recurring_auction.errors import InvalidParameterError
from recurring_auction.outcomes.welfare import expected_surplus, revenue_at_recovered_reserves
from recurring_auction.utilities.serialization_utility import SerializableModel

logger = Logger(__name__)

# quantile distance from each end of the support for cutoff searches
SEARCH_TAIL = 1e-12


@dataclass(frozen=True)
class SingleRoundBenchmark(SerializableModel):
    cutoff: float
    reserve: float
    total_surplus: float
    revenue: float


@dataclass(frozen=True)
class DuopolyOutcome(SerializableModel):
    """Surplus and seller profit when the two buyers use different cutoffs."""

    cutoffs: Tuple[float, float]
    total_surplus: float
    revenue: float


def _xtol() -> float:
    return get_config().solver.root_xtol


def _one_round(primitives: AuctionPrimitives, reserve: Optional[float] = None) -> AuctionPrimitives:
    reserves = None if reserve is None else (float(reserve),)
    return AuctionPrimitives(
        dist=primitives.dist,
        n_buyers=primitives.n_buyers,
        rounds=1,
        delta=primitives.delta,
        seller_value=primitives.seller_value,
        entry_cost=primitives.entry_cost,
        reserves=reserves,
    )


def single_round_cutoff(primitives: AuctionPrimitives, reserve: Optional[float] = None) -> float:
    """
    Entry cutoff of a one-shot auction: solves (v − r) G(v) = K on [max(r, v̲), v̄].

    `reserve` defaults to r_1 of `primitives`. Returns v̄ when even the top type
    cannot cover the entry cost.
    """
    dist = primitives.dist
    r = primitives.reserve(1) if reserve is None else float(reserve)
    K = primitives.entry_cost

    def gain(v: float) -> float:
        return (v - r) * float(primitives.G(v)) - K

    lo = min(max(r, dist.lower), dist.upper)
    if gain(dist.upper) <= 0.0:
        logger.debug({"message": "no type covers the entry cost", "reserve": r})
        return dist.upper
    if gain(lo) >= 0.0:
        return lo
    return float(optimize.brentq(gain, lo, dist.upper, xtol=_xtol()))


def single_round_efficient(primitives: AuctionPrimitives) -> SingleRoundBenchmark:
    """Reserve at v_s, the surplus-maximizing one-shot auction."""
    one = _one_round(primitives, primitives.seller_value)
    cutoff = single_round_cutoff(one)
    thresholds = ThresholdSequence.from_cutoffs(primitives.dist, [cutoff])
    surplus = expected_surplus(thresholds, one)
    revenue = revenue_at_recovered_reserves(thresholds, one)
    return SingleRoundBenchmark(cutoff, primitives.seller_value, surplus, revenue)


def single_round_revenue_optimal(primitives: AuctionPrimitives) -> SingleRoundBenchmark:
    """
    Profit-maximizing one-shot auction: the cutoff solves K / G(v) = ψ(v) − v_s,
    the reserve follows from the cutoff.

    The condition is searched as (v − v_s) f G − (1 − F) G − K f, which has the
    same sign on the support and stays finite where f underflows.

    Raises:
        NonRegularDistributionError: when ψ is not increasing over the search region.
    """
    dist = primitives.dist
    dist.check_regular()
    vs = primitives.seller_value
    K = primitives.entry_cost

    def condition(v: float) -> float:
        g = float(primitives.G(v))
        f = float(dist.pdf(v))
        return (v - vs) * f * g - float(dist.sf(v)) * g - K * f

    lo = float(dist.quantile(SEARCH_TAIL))
    hi = float(dist.quantile(1.0 - SEARCH_TAIL))
    if condition(lo) >= 0.0:
        cutoff = lo
    elif condition(hi) <= 0.0:
        cutoff = hi
    else:
        cutoff = float(optimize.brentq(condition, lo, hi, xtol=_xtol()))

    one = _one_round(primitives)
    thresholds = ThresholdSequence.from_cutoffs(dist, [cutoff])
    reserve = reserves_from_thresholds(thresholds, one)[0]
    one = one.with_reserves([reserve])
    return SingleRoundBenchmark(
        cutoff=cutoff,
        reserve=reserve,
        total_surplus=expected_surplus(thresholds, one),
        revenue=revenue_at_recovered_reserves(thresholds, one),
    )


def always_enter_cutoff(primitives: AuctionPrimitives) -> float:
    """
    Cutoff of a duopolist whose rival always enters: c solves ∫_{v̲}^{c} (c − x) dF(x) = K.

    Returns v̄ when no such c exists.
    """
    dist = primitives.dist
    K = primitives.entry_cost

    def gain(c: float) -> float:
        return c * float(dist.cdf(c)) - dist.partial_expectation_dG(1, dist.lower, c) - K

    if gain(dist.upper) <= 0.0:
        return dist.upper
    return float(optimize.brentq(gain, dist.lower, dist.upper, xtol=_xtol()))


def asymmetric_duopoly_single_round(
    primitives: AuctionPrimitives, cutoffs: Tuple[float, float]
) -> DuopolyOutcome:
    """
    One-shot duopoly where buyer i enters iff v_i > c_i.

    Surplus: v_s + Σ_i ∫_{c_i} (v − v_s) Q_i(v) dF − K Σ_i (1 − F(c_i)), with
    Q_i(v) = max(F(c_j), F(v)) the chance that an entrant of value v wins.

    Profit is the virtual surplus of the same allocation with each cutoff type
    left indifferent to entering:
    Σ_i ∫_{c_i} [(ψ(v) − v_s) Q_i(v) − K] dF.
    In the symmetric case this is the second-price auction with reserve. The ψ f
    term is integrated as (v − v_s) Q_i dF − (1 − F) Q_i dv, with the dv part
    taken by parts through ∫ x dF^m, so no density division is needed.
    """
    if primitives.n_buyers != 2:
        raise InvalidParameterError("n_buyers", primitives.n_buyers, "exactly 2 for the duopoly")
    dist = primitives.dist
    first, second = (float(c) for c in cutoffs)
    if first > second:
        raise InvalidParameterError("cutoffs", cutoffs, "c1 <= c2")
    for c in (first, second):
        if not dist.lower <= c <= dist.upper:
            raise InvalidParameterError("cutoffs", cutoffs, "within the support")
    vs = primitives.seller_value
    K = primitives.entry_cost

    def cdf_power_area(m: int, a: float, b: float) -> float:
        # ∫ₐᵇ F^m dv = [v F^m]ₐᵇ − ∫ₐᵇ v dF^m
        Fa, Fb = float(dist.cdf(a)), float(dist.cdf(b))
        return b * Fb**m - a * Fa**m - dist.partial_expectation_dG(m, a, b)

    def virtual_surplus(a: float, b: float, flat: Optional[float]) -> float:
        """∫ₐᵇ (ψ − v_s) Q dF with Q = `flat` or, when None, Q = F."""
        Fa, Fb = float(dist.cdf(a)), float(dist.cdf(b))
        if flat is not None:
            gross = flat * (dist.partial_expectation_dG(1, a, b) - vs * (Fb - Fa))
            tail = flat * ((b - a) - cdf_power_area(1, a, b))
        else:
            gross = 0.5 * (dist.partial_expectation_dG(2, a, b) - vs * (Fb**2 - Fa**2))
            tail = cdf_power_area(1, a, b) - cdf_power_area(2, a, b)
        return gross - tail

    def pieces(own: float, rival: float) -> Dict[str, float]:
        rival_stays_out = float(dist.cdf(rival))

        def win(v: float) -> float:
            return max(rival_stays_out, float(dist.cdf(v)))

        def surplus(v: float) -> float:
            return (v - vs) * win(v)

        cuts = [own, *([rival] if own < rival < dist.upper else []), dist.upper]
        spans = list(zip(cuts[:-1], cuts[1:]))
        entry = K * float(dist.sf(own))
        profit = sum(
            virtual_surplus(a, b, rival_stays_out if b <= rival else None) for a, b in spans if b > a
        )
        return {
            "surplus": sum(dist.expect(surplus, a, b) for a, b in spans) - entry,
            "profit": profit - entry,
        }

    one, two = pieces(first, second), pieces(second, first)
    return DuopolyOutcome(
        cutoffs=(first, second),
        total_surplus=vs + one["surplus"] + two["surplus"],
        revenue=one["profit"] + two["profit"],
    )
