"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Importance-sampling draw bank.

For every auction i and draw s, Λ_is is drawn once from the proposal
g = φ(· | B₀, X_i) and the equilibrium is solved once. Each later change of B
only reweights these draws. Draw (i, s) uses the substream
SeedSequence(seed, spawn_key=(i, s)), so the bank does not depend on the
worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np
from aws_lambda_powertools import Logger

from recurring_auction.config import SolverConfig, get_config
from recurring_auction.equilibrium import AuctionPrimitives, ThresholdSequence, solve_thresholds
from recurring_auction.errors import (
    DatasetFormatError,
    EstimationError,
    InvalidParameterError,
    NoEntryEquilibriumError,
    NumericalError,
    ValidationError,
)
from recurring_auction.estimation.dataset import AuctionDataset
from recurring_auction.estimation.likelihood import outcome_likelihood, single_round_likelihood
from recurring_auction.estimation.models import AuctionObservation, HyperParams
from recurring_auction.estimation.primitive_draws import draw_primitives, log_density

logger = Logger(__name__)

LikelihoodModel = Literal["recurring", "single_round"]


def draw_generator(seed: int, auction: int, draw: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(auction, draw)))


@dataclass
class DrawBank:
    """
    Arrays indexed (auction, draw). `valid` is False where the equilibrium solve
    failed; those draws carry no weight.
    """

    proposal: HyperParams
    seed: int
    model: str
    auction_ids: Tuple[str, ...]
    draws: np.ndarray
    log_proposal: np.ndarray
    likelihood: np.ndarray
    valid: np.ndarray

    @property
    def n_auctions(self) -> int:
        return int(self.likelihood.shape[0])

    @property
    def n_draws(self) -> int:
        return int(self.likelihood.shape[1])

    @property
    def failures(self) -> int:
        return int(np.count_nonzero(~self.valid))

    @property
    def key(self) -> Tuple[str, int, int]:
        return (self.proposal.fingerprint(), self.seed, self.n_draws)

    def subset(self, indices: Sequence[int]) -> "DrawBank":
        idx = np.asarray(indices, dtype=int)
        return DrawBank(
            proposal=self.proposal,
            seed=self.seed,
            model=self.model,
            auction_ids=tuple(self.auction_ids[i] for i in idx),
            draws=self.draws[idx],
            log_proposal=self.log_proposal[idx],
            likelihood=self.likelihood[idx],
            valid=self.valid[idx],
        )

    def check_matches(self, dataset: AuctionDataset) -> None:
        ids = tuple(o.auction_id for o in dataset)
        if ids != self.auction_ids:
            raise EstimationError(
                message="Draw bank was built for a different dataset",
                error_code="DRAW_BANK_MISMATCH",
                details={"bank_auctions": self.n_auctions, "dataset_auctions": len(ids)},
            )

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as handle:
            np.savez_compressed(
                handle,
                proposal=self.proposal.to_vector(),
                seed=np.array(self.seed),
                model=np.array(self.model),
                auction_ids=np.array(self.auction_ids, dtype=str),
                draws=self.draws,
                log_proposal=self.log_proposal,
                likelihood=self.likelihood,
                valid=self.valid,
            )
        logger.info({"message": "draw bank saved", "path": str(path), "key": list(self.key)})
        return path

    @classmethod
    def load(
        cls, path: Union[str, Path], expected_key: Optional[Tuple[str, int, int]] = None
    ) -> "DrawBank":
        """
        Raises:
            DatasetFormatError: unreadable file, or a key other than `expected_key`.
        """
        try:
            with np.load(path, allow_pickle=False) as data:
                bank = cls(
                    proposal=HyperParams.from_vector(data["proposal"]),
                    seed=int(data["seed"]),
                    model=str(data["model"]),
                    auction_ids=tuple(str(i) for i in data["auction_ids"]),
                    draws=data["draws"],
                    log_proposal=data["log_proposal"],
                    likelihood=data["likelihood"],
                    valid=data["valid"].astype(bool),
                )
        except (OSError, KeyError, ValueError, ValidationError) as e:
            raise DatasetFormatError(path=str(path), message=f"Cannot read draw bank: {e}") from e
        if expected_key is not None and bank.key != tuple(expected_key):
            raise DatasetFormatError(
                path=str(path), message=f"Draw bank key {bank.key} does not match {tuple(expected_key)}"
            )
        return bank


def equilibrium_or_no_entry(
    primitives: AuctionPrimitives, settings: Optional[SolverConfig] = None
) -> ThresholdSequence:
    """Equilibrium thresholds, or all-v̄ when nobody ever enters."""
    try:
        return solve_thresholds(primitives, settings)
    except NoEntryEquilibriumError as e:
        return ThresholdSequence(tuple(e.thresholds))


def _auction_draws(
    task: Tuple[int, AuctionObservation, HyperParams, int, int, str, SolverConfig],
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    index, observation, proposal, n_draws, seed, model, settings = task
    draws = np.zeros((n_draws, 3))
    likelihood = np.zeros(n_draws)
    valid = np.ones(n_draws, dtype=bool)
    for s in range(n_draws):
        params = draw_primitives(proposal, observation.covariates, draw_generator(seed, index, s))
        draws[s] = params.as_array()
        try:
            primitives = observation.primitives(params)
            if model == "single_round":
                likelihood[s] = single_round_likelihood(observation, primitives)
            else:
                thresholds = equilibrium_or_no_entry(primitives, settings)
                likelihood[s] = outcome_likelihood(observation, primitives, thresholds)
        except (NumericalError, ValidationError) as e:
            valid[s] = False
            logger.debug(
                {"message": "draw excluded", "auction": observation.auction_id, "draw": s, "error": str(e)}
            )
    log_g = log_density(proposal, observation.covariates, draws)
    return draws, log_g, likelihood, valid


def precompute_draws(
    proposal: HyperParams,
    dataset: AuctionDataset,
    n_draws: Optional[int] = None,
    seed: int = 0,
    model: LikelihoodModel = "recurring",
    workers: Optional[int] = None,
    settings: Optional[SolverConfig] = None,
) -> DrawBank:
    """Draws Λ from the proposal and stores L(y_i | Λ_is) for every auction."""
    config = get_config()
    n_draws = n_draws or config.estimation.draws_per_auction
    workers = workers or config.simulation.workers
    settings = settings or config.solver
    if n_draws < 1:
        raise InvalidParameterError("n_draws", n_draws, "n_draws >= 1")
    if model not in ("recurring", "single_round"):
        raise InvalidParameterError("model", model, "'recurring' or 'single_round'")

    tasks = [(i, o, proposal, n_draws, seed, model, settings) for i, o in enumerate(dataset)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_auction_draws, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        parts = [_auction_draws(task) for task in tasks]

    shape = (len(dataset), n_draws)
    bank = DrawBank(
        proposal=proposal,
        seed=seed,
        model=model,
        auction_ids=tuple(o.auction_id for o in dataset),
        draws=np.array([p[0] for p in parts]).reshape(shape + (3,)),
        log_proposal=np.array([p[1] for p in parts]).reshape(shape),
        likelihood=np.array([p[2] for p in parts]).reshape(shape),
        valid=np.array([p[3] for p in parts]).reshape(shape),
    )
    if bank.failures:
        logger.warning(
            {"message": "equilibrium solves failed", "failures": bank.failures, "draws": bank.likelihood.size}
        )
    logger.info({"message": "draw bank built", "auctions": len(dataset), "draws": n_draws, "model": model})
    return bank
