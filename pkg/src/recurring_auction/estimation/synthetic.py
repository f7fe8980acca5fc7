"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Synthetic judicial-auction datasets generated from a known B.

Covariates follow the summary statistics of the Beijing housing sample:
assessed price quartiles near 59 / 91 / 163 (10K CNY), floor area 1.30 ± 0.46
hundred m², median distance to the city center 2.4, and about 9.6 potential
buyers per auction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from aws_lambda_powertools import Logger

from recurring_auction.config import SolverConfig, get_config
from recurring_auction.errors import EstimationError, InvalidParameterError, NumericalError, ValidationError
from recurring_auction.estimation.dataset import AuctionDataset
from recurring_auction.estimation.draw_bank import equilibrium_or_no_entry
from recurring_auction.estimation.models import (
    DEFAULT_DELTA,
    DEFAULT_ROUNDS,
    DEFAULT_TRUE_PARAMS,
    AuctionObservation,
    Covariates,
    HyperParams,
)
from recurring_auction.estimation.primitive_draws import draw_primitives
from recurring_auction.simulate import simulate_auction

logger = Logger(__name__)


@dataclass(frozen=True)
class GeneratorSettings:
    rounds: int = DEFAULT_ROUNDS
    delta: float = DEFAULT_DELTA
    first_reserve_fraction: float = 0.75
    second_reserve_ratio: float = 0.8
    log_assess_mean: float = math.log(90.52)
    # interquartile range of log(59.09), log(162.69) over 1.349
    log_assess_sd: float = 0.7508
    area_mean: float = 1.30
    area_sd: float = 0.46
    area_min: float = 0.2
    log_dist_mean: float = math.log(2.4)
    log_dist_sd: float = 1.0
    base_buyers: int = 3
    extra_buyers_mean: float = 6.58
    max_redraws: int = 20

    def __post_init__(self) -> None:
        if self.rounds < 1:
            raise InvalidParameterError("rounds", self.rounds, "rounds >= 1")
        if not 0 < self.delta < 1:
            raise InvalidParameterError("delta", self.delta, "0 < delta < 1")
        if self.base_buyers < 1:
            raise InvalidParameterError("base_buyers", self.base_buyers, "base_buyers >= 1")

    def reserves(self, assessed: float) -> tuple:
        """r1 = 75% of the assessed price, r2 = 80% of r1, later rounds repeat r2."""
        r1 = self.first_reserve_fraction * assessed
        r2 = self.second_reserve_ratio * r1
        return tuple([r1, r2, *[r2] * (self.rounds - 2)][: self.rounds])


def draw_covariates(rng: np.random.Generator, settings: GeneratorSettings) -> Covariates:
    return Covariates(
        log_assess=float(rng.normal(settings.log_assess_mean, settings.log_assess_sd)),
        area_100m2=float(max(settings.area_min, rng.normal(settings.area_mean, settings.area_sd))),
        log_dist=float(rng.normal(settings.log_dist_mean, settings.log_dist_sd)),
    )


def auction_generator(seed: int, auction: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(auction,)))


def generate_synthetic(
    params: HyperParams = DEFAULT_TRUE_PARAMS,
    n_auctions: int = 500,
    seed: int = 0,
    generator: Optional[GeneratorSettings] = None,
    settings: Optional[SolverConfig] = None,
) -> AuctionDataset:
    """
    Draws X, N and Λ per auction, solves the equilibrium at the auction's reserves
    and plays it once. Primitives whose solve fails are redrawn.

    Raises:
        EstimationError: an auction exhausts `max_redraws` without a solvable draw.
    """
    if n_auctions < 1:
        raise InvalidParameterError("n_auctions", n_auctions, "n_auctions >= 1")
    generator = generator or GeneratorSettings()
    settings = settings or get_config().solver

    observations = []
    for i in range(n_auctions):
        rng = auction_generator(seed, i)
        covariates = draw_covariates(rng, generator)
        n_buyers = generator.base_buyers + int(rng.poisson(generator.extra_buyers_mean))
        reserves = generator.reserves(covariates.assessed_price)
        template = AuctionObservation(
            auction_id=f"A{i:05d}",
            round_sold=0,
            deal_price=None,
            entrants=0,
            n_buyers=n_buyers,
            reserves=reserves,
            covariates=covariates,
            delta=generator.delta,
        )
        for attempt in range(generator.max_redraws):
            try:
                primitives = template.primitives(draw_primitives(params, covariates, rng))
                thresholds = equilibrium_or_no_entry(primitives, settings)
                break
            except (NumericalError, ValidationError) as e:
                logger.debug({"message": "primitive redraw", "auction": i, "attempt": attempt, "error": str(e)})
        else:
            raise EstimationError(
                message=f"Auction {i} has no solvable primitive draw",
                error_code="NO_SOLVABLE_DRAW",
                details={"attempts": generator.max_redraws},
            )

        outcome = simulate_auction(thresholds, primitives, rng)
        observations.append(
            AuctionObservation(
                auction_id=template.auction_id,
                round_sold=outcome.round or 0,
                deal_price=outcome.price,
                entrants=outcome.entrants_in_sale_round,
                n_buyers=n_buyers,
                reserves=reserves,
                covariates=covariates,
                delta=generator.delta,
            )
        )

    dataset = AuctionDataset(observations)
    logger.info({"message": "synthetic dataset generated", "auctions": n_auctions, "sale_rates": dataset.sale_rates()})
    return dataset
