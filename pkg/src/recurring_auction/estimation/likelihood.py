"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Probability (or density) of one auction's observed outcome given its
primitives and equilibrium thresholds.
"""

from __future__ import annotations

from enum import Enum

from scipy.special import comb

from recurring_auction.equilibrium import AuctionPrimitives, ThresholdSequence
from recurring_auction.estimation.models import AuctionObservation
from recurring_auction.outcomes import single_round_cutoff


class OutcomeClass(str, Enum):
    """How an observed outcome enters the likelihood."""

    NO_SALE = "no_sale"
    SOLE_ENTRANT = "sole_entrant"
    COMPETITIVE = "competitive"
    IMPOSSIBLE = "impossible"


def classify_outcome(observation: AuctionObservation) -> OutcomeClass:
    """
    A lone entrant must pay the reserve; two or more entrants must clear above it.
    Anything else has probability zero under threshold strategies.
    """
    if not observation.sold:
        return OutcomeClass.NO_SALE
    at_reserve = observation.at_reserve()
    if observation.entrants == 1:
        return OutcomeClass.SOLE_ENTRANT if at_reserve else OutcomeClass.IMPOSSIBLE
    return OutcomeClass.IMPOSSIBLE if at_reserve else OutcomeClass.COMPETITIVE


def outcome_likelihood(
    observation: AuctionObservation,
    primitives: AuctionPrimitives,
    thresholds: ThresholdSequence,
) -> float:
    """
    L(y | Λ): the probability of no sale or of a sale at the reserve, or the
    density of the deal price when two or more buyers entered.
    """
    dist = primitives.dist
    N = observation.n_buyers
    kind = classify_outcome(observation)
    if kind is OutcomeClass.IMPOSSIBLE:
        return 0.0
    if kind is OutcomeClass.NO_SALE:
        return float(dist.cdf(thresholds[thresholds.rounds])) ** N

    t = observation.round_sold
    F_hi = float(dist.cdf(thresholds[t - 1]))
    F_lo = float(dist.cdf(thresholds[t]))
    if kind is OutcomeClass.SOLE_ENTRANT:
        return max(N * (F_hi - F_lo) * F_lo ** (N - 1), 0.0)

    p = float(observation.deal_price)
    if not thresholds[t] < p < thresholds[t - 1]:
        return 0.0
    Ne = observation.entrants
    F_p = float(dist.cdf(p))
    value = (
        comb(N, Ne, exact=True)
        * Ne
        * (Ne - 1)
        * F_lo ** (N - Ne)
        * float(dist.pdf(p))
        * max(F_p - F_lo, 0.0) ** (Ne - 2)
        * max(F_hi - F_p, 0.0)
    )
    return float(value)


def single_round_likelihood(
    observation: AuctionObservation, primitives: AuctionPrimitives
) -> float:
    """
    Likelihood of the misspecified model that treats every round as a separate
    one-shot auction with independently redrawn values.
    """
    dist = primitives.dist
    N = observation.n_buyers
    cutoffs = [single_round_cutoff(primitives, reserve=r) for r in observation.reserves]
    reached = 1.0
    last = observation.round_sold if observation.sold else observation.rounds + 1
    for c in cutoffs[: last - 1]:
        reached *= float(dist.cdf(c)) ** N
    if not observation.sold:
        return reached

    t = observation.round_sold
    one_shot = AuctionObservation(
        auction_id=observation.auction_id,
        round_sold=1,
        deal_price=observation.deal_price,
        entrants=observation.entrants,
        n_buyers=N,
        reserves=(observation.reserves[t - 1],),
        covariates=observation.covariates,
        delta=observation.delta,
    )
    thresholds = ThresholdSequence((dist.upper, cutoffs[t - 1]))
    return reached * outcome_likelihood(one_shot, primitives.truncated(1), thresholds)
