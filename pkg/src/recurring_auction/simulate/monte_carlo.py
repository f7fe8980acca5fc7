"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Monte Carlo play-out of the recurring auction under threshold strategies.

Draws are generated in fixed-size chunks. Chunk i uses the substream
SeedSequence(seed, spawn_key=(i,)), so the value stream does not depend on
how many workers run the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from aws_lambda_powertools import Logger

from recurring_auction.config import SimulationConfig, get_config
from recurring_auction.equilibrium import AuctionPrimitives, ThresholdSequence
from recurring_auction.errors import InvalidParameterError
from recurring_auction.outcomes import OutcomeSummary
from recurring_auction.simulate.auction_outcome import AuctionOutcome, BatchOutcomes
from recurring_auction.utilities.serialization_utility import SerializableModel

logger = Logger(__name__)


def simulate_batch(
    values: np.ndarray, thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> BatchOutcomes:
    """
    Plays out one auction per row of `values` (shape n × N).

    A buyer enters in round t when v*_t < value <= v*_(t−1). The first round with
    an entrant sells: at r_t to a lone entrant, otherwise at the second-highest
    entrant value.
    """
    values = np.atleast_2d(np.asarray(values, dtype=float))
    if values.shape[1] != primitives.n_buyers:
        raise InvalidParameterError("values", values.shape, f"n × {primitives.n_buyers}")
    T = primitives.rounds
    v = thresholds.values
    reserves = primitives.reserve_array()
    delta, K, vs = primitives.delta, primitives.entry_cost, primitives.seller_value
    n = values.shape[0]

    entry_round = np.zeros(values.shape, dtype=int)
    for t in range(T, 0, -1):
        entry_round[(values > v[t]) & (values <= v[t - 1])] = t

    sale_round = np.where(entry_round > 0, entry_round, T + 1).min(axis=1) if n else np.zeros(0, int)
    sold = sale_round <= T
    in_sale_round = (entry_round == sale_round[:, None]) & sold[:, None]
    count = in_sale_round.sum(axis=1)

    entrant_values = np.sort(np.where(in_sale_round, values, -np.inf), axis=1)
    second = entrant_values[:, -2] if primitives.n_buyers >= 2 else np.full(n, -np.inf)
    round_index = np.clip(sale_round - 1, 0, T - 1)
    price = np.where(count >= 2, second, reserves[round_index])
    price = np.where(sold, price, np.nan)
    winner = np.where(sold, values.max(axis=1), np.nan)

    entrants = np.zeros((n, T), dtype=int)
    rows = np.flatnonzero(sold)
    entrants[rows, sale_round[rows] - 1] = count[rows]

    discount = np.where(sold, delta ** (round_index.astype(float)), 0.0)
    entry_costs = (entrants * (delta ** np.arange(T))[None, :]).sum(axis=1) * K
    surplus = np.where(sold, discount * (winner - vs), 0.0) - entry_costs + vs
    revenue = np.where(sold, discount * (price - vs), 0.0)
    return BatchOutcomes(
        sold=sold,
        sale_round=np.where(sold, sale_round, 0),
        price=price,
        winner_value=winner,
        entrants=entrants,
        surplus=surplus,
        revenue=revenue,
    )


def play_auction(
    values: np.ndarray, thresholds: ThresholdSequence, primitives: AuctionPrimitives
) -> AuctionOutcome:
    """One auction for given buyer values."""
    return simulate_batch(np.asarray(values, dtype=float)[None, :], thresholds, primitives).outcome(0)


def simulate_auction(
    thresholds: ThresholdSequence, primitives: AuctionPrimitives, rng: np.random.Generator
) -> AuctionOutcome:
    """Draws N values from `rng` and plays one auction."""
    values = np.asarray(primitives.dist.sample(rng, primitives.n_buyers), dtype=float)
    return play_auction(values, thresholds, primitives)


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(chunk,)))


def _simulate_chunk(
    task: Tuple[int, int, int, ThresholdSequence, AuctionPrimitives],
) -> BatchOutcomes:
    seed, chunk, size, thresholds, primitives = task
    rng = chunk_generator(seed, chunk)
    values = np.asarray(primitives.dist.sample(rng, (size, primitives.n_buyers)), dtype=float)
    return simulate_batch(values, thresholds, primitives)


def simulate_outcomes(
    thresholds: ThresholdSequence,
    primitives: AuctionPrimitives,
    n_draws: int,
    seed: int,
    settings: Optional[SimulationConfig] = None,
) -> BatchOutcomes:
    """All `n_draws` auctions in draw order, identical for any worker count."""
    if n_draws < 0:
        raise InvalidParameterError("n_draws", n_draws, "n_draws >= 0")
    settings = settings or get_config().simulation
    chunk_size = settings.chunk_size
    chunks = math.ceil(n_draws / chunk_size)
    tasks = [
        (seed, i, min(chunk_size, n_draws - i * chunk_size), thresholds, primitives)
        for i in range(chunks)
    ]
    if settings.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:
            parts = list(pool.map(_simulate_chunk, tasks))
    else:
        parts = [_simulate_chunk(task) for task in tasks]
    logger.debug({"message": "simulated auctions", "draws": n_draws, "chunks": chunks, "workers": settings.workers})
    return BatchOutcomes.concatenate(parts, primitives.rounds)


def _mean_and_error(samples: np.ndarray) -> Tuple[float, float]:
    n = samples.size
    mean = float(np.sum(samples) / n)
    error = float(np.std(samples, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return mean, error


@dataclass(frozen=True)
class OutcomeEstimate(SerializableModel):
    """Sample means with standard errors."""

    n_draws: int
    total_surplus: float
    total_surplus_se: float
    revenue: float
    revenue_se: float
    failure_rate: float
    failure_rate_se: float
    sale_probability: Tuple[float, ...]
    sale_probability_se: Tuple[float, ...]
    entrants_per_round: Tuple[float, ...]

    def agreement(self, summary: OutcomeSummary, z: float = 3.0) -> Dict[str, bool]:
        """
        Whether each closed-form value lies within z standard errors of its estimate.

        Probabilities use the larger of the sample error and the binomial error
        sqrt(p (1 − p) / n) at the closed-form p, so an event too rare to show up
        in the draws still gets a nonzero band.
        """

        def close(estimate: float, error: float, exact: float) -> bool:
            return abs(estimate - exact) <= z * error + 1e-12 * max(1.0, abs(exact))

        def close_probability(estimate: float, error: float, exact: float) -> bool:
            p = min(max(exact, 0.0), 1.0)
            binomial = math.sqrt(p * (1.0 - p) / self.n_draws)
            return close(estimate, max(error, binomial), exact)

        checks = {
            "total_surplus": close(self.total_surplus, self.total_surplus_se, summary.total_surplus),
            "revenue": close(self.revenue, self.revenue_se, summary.revenue),
            "failure_probability": close_probability(self.failure_rate, self.failure_rate_se, summary.failure_probability),
        }
        for t, (p, se, exact) in enumerate(
            zip(self.sale_probability, self.sale_probability_se, summary.per_round_sale_probability),
            start=1,
        ):
            checks[f"sale_probability_{t}"] = close_probability(p, se, exact)
        return checks


def summarize_batch(batch: BatchOutcomes) -> OutcomeEstimate:
    if len(batch) < 1:
        raise InvalidParameterError("n_draws", len(batch), "n_draws >= 1")
    surplus, surplus_se = _mean_and_error(batch.surplus)
    revenue, revenue_se = _mean_and_error(batch.revenue)
    failure, failure_se = _mean_and_error((~batch.sold).astype(float))
    sale: List[Tuple[float, float]] = [
        _mean_and_error((batch.sale_round == t).astype(float)) for t in range(1, batch.rounds + 1)
    ]
    entrants = [float(np.sum(batch.entrants[:, t]) / len(batch)) for t in range(batch.rounds)]
    return OutcomeEstimate(
        n_draws=len(batch),
        total_surplus=surplus,
        total_surplus_se=surplus_se,
        revenue=revenue,
        revenue_se=revenue_se,
        failure_rate=failure,
        failure_rate_se=failure_se,
        sale_probability=tuple(p for p, _ in sale),
        sale_probability_se=tuple(e for _, e in sale),
        entrants_per_round=tuple(entrants),
    )


def estimate_outcomes(
    thresholds: ThresholdSequence,
    primitives: AuctionPrimitives,
    n_draws: int,
    seed: int,
    settings: Optional[SimulationConfig] = None,
) -> OutcomeEstimate:
    """Monte Carlo TS, revenue, failure rate and per-round sale rates with standard errors."""
    if n_draws < 1:
        raise InvalidParameterError("n_draws", n_draws, "n_draws >= 1")
    return summarize_batch(simulate_outcomes(thresholds, primitives, n_draws, seed, settings))
