"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Maximum simulated likelihood over B, recovery reports and bootstrap standard
errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np
from aws_lambda_powertools import Logger
from scipy import optimize, stats

from recurring_auction.config import EstimationConfig, get_config
from recurring_auction.errors import EstimationError, InvalidParameterError, ValidationError
from recurring_auction.estimation.dataset import AuctionDataset
from recurring_auction.estimation.draw_bank import DrawBank
from recurring_auction.estimation.models import (
    COVARIATE_NAMES,
    ENTRY_COST_BOUNDS,
    MU_BOUNDS,
    SIGMA_BOUNDS,
    HyperParams,
)
from recurring_auction.estimation.simulated_likelihood import evaluate_loglik
from recurring_auction.utilities.serialization_utility import SerializableModel

logger = Logger(__name__)

# objective value for vectors that do not map to valid hyper-parameters
_PENALTY = 1e300


def parameter_names() -> List[str]:
    names = []
    for block in ("mu", "sigma", "k"):
        names.extend(f"beta_{block}[{c}]" for c in COVARIATE_NAMES)
    return names + ["log_omega_mu", "log_omega_sigma", "log_omega_k"]


@dataclass(frozen=True, eq=False)
class SimplexResult:
    x: np.ndarray
    value: float
    converged: bool
    iterations: int
    evaluations: int
    message: str
    trace: List[float]


def simplex_maximize(
    func: Callable[[np.ndarray], float],
    start: np.ndarray,
    settings: Optional[EstimationConfig] = None,
) -> SimplexResult:
    """
    Maximizes `func` by Nelder-Mead, restarting from each optimum up to
    `settings.restarts` times until a pass stops improving.
    """
    settings = settings or get_config().estimation
    x = np.asarray(start, dtype=float)
    trace = [float(func(x))]
    iterations = evaluations = 0
    result = None
    for attempt in range(settings.restarts + 1):
        result = optimize.minimize(
            lambda z: -func(z),
            x,
            method="Nelder-Mead",
            options={
                "maxiter": settings.max_iterations,
                "xatol": settings.tolerance,
                "fatol": settings.tolerance,
                "adaptive": True,
            },
        )
        iterations += int(result.nit)
        evaluations += int(result.nfev)
        improvement = -float(result.fun) - trace[-1]
        x = result.x
        trace.append(-float(result.fun))
        logger.info(
            {
                "message": "nelder-mead pass finished",
                "attempt": attempt,
                "value": trace[-1],
                "iterations": int(result.nit),
                "success": bool(result.success),
            }
        )
        if attempt > 0 and result.success and abs(improvement) <= settings.tolerance:
            break
    return SimplexResult(
        x=x,
        value=trace[-1],
        converged=bool(result.success),
        iterations=iterations,
        evaluations=evaluations,
        message=str(result.message),
        trace=trace,
    )


@dataclass(frozen=True)
class FitResult(SerializableModel):
    params: HyperParams
    loglik: float
    converged: bool
    iterations: int
    evaluations: int
    message: str
    floored: int
    min_effective_sample_size: float
    median_effective_sample_size: float
    trace: List[float] = field(default_factory=list)

    def to_dictionary(self) -> Dict:
        record = super().to_dictionary()
        record["vector"] = dict(zip(parameter_names(), self.params.to_vector().tolist()))
        return record


def fit(
    dataset: AuctionDataset,
    bank: DrawBank,
    start: Optional[HyperParams] = None,
    settings: Optional[EstimationConfig] = None,
) -> FitResult:
    """
    Maximizes the simulated log-likelihood over the 15-vector of B, starting
    from `start` (default: the bank's proposal B₀). Non-convergence is logged and
    reported, not raised.

    Raises:
        EstimationError: the dataset is empty or does not match the bank.
    """
    settings = settings or get_config().estimation
    if len(dataset) == 0:
        raise EstimationError(message="Cannot fit an empty dataset", error_code="EMPTY_DATASET")
    bank.check_matches(dataset)
    start = start or bank.proposal
    floor = settings.likelihood_floor

    def loglik(vector: np.ndarray) -> float:
        try:
            params = HyperParams.from_vector(vector)
        except ValidationError:
            return -_PENALTY
        value = evaluate_loglik(params, dataset, bank, floor).value
        return value if np.isfinite(value) else -_PENALTY

    search = simplex_maximize(loglik, start.to_vector(), settings)
    params = HyperParams.from_vector(search.x)
    evaluation = evaluate_loglik(params, dataset, bank, floor)
    if not search.converged:
        logger.warning({"message": "estimation did not converge", "detail": search.message})
    ess = evaluation.effective_sample_size
    median_ess = float(np.median(ess)) if ess.size else 0.0
    if median_ess < 0.01 * bank.n_draws:
        logger.warning(
            {"message": "importance weights degenerate", "median_ess": median_ess, "draws": bank.n_draws}
        )
    if evaluation.floored:
        logger.warning({"message": "floored likelihood contributions", "auctions": evaluation.floored})
    return FitResult(
        params=params,
        loglik=evaluation.value,
        converged=search.converged,
        iterations=search.iterations,
        evaluations=search.evaluations,
        message=search.message,
        floored=evaluation.floored,
        min_effective_sample_size=evaluation.min_effective_sample_size,
        median_effective_sample_size=median_ess,
        trace=search.trace,
    )


def implied_primitive_means(params: HyperParams, dataset: AuctionDataset) -> Dict[str, float]:
    """Sample averages of E[μ | X_i], E[σ | X_i] and E[K | X_i] under B."""
    index = params.linear_index(dataset.covariate_matrix())
    means = {}
    for j, (name, (lo, hi)) in enumerate(
        zip(("mu", "sigma", "entry_cost"), (MU_BOUNDS, SIGMA_BOUNDS, ENTRY_COST_BOUNDS))
    ):
        m, w = index[:, j], params.scales[j]
        means[name] = float(np.mean(stats.truncnorm.mean((lo - m) / w, (hi - m) / w, loc=m, scale=w)))
    return means


@dataclass(frozen=True)
class RecoveryReport(SerializableModel):
    fitted: Dict[str, float]
    truth: Dict[str, float]
    relative_error: Dict[str, float]
    band: float

    @property
    def within_band(self) -> bool:
        return all(abs(e) <= self.band for e in self.relative_error.values())


def recovery_report(
    fitted: HyperParams, truth: HyperParams, dataset: AuctionDataset, band: float = 0.10
) -> RecoveryReport:
    got = implied_primitive_means(fitted, dataset)
    want = implied_primitive_means(truth, dataset)
    errors = {k: (got[k] - want[k]) / abs(want[k]) for k in want}
    return RecoveryReport(fitted=got, truth=want, relative_error=errors, band=band)


@dataclass(frozen=True, eq=False)
class BootstrapResult(SerializableModel):
    standard_errors: Dict[str, float]
    replicates: np.ndarray
    failed: int


def bootstrap_standard_errors(
    dataset: AuctionDataset,
    bank: DrawBank,
    estimate: HyperParams,
    replications: int = 50,
    seed: int = 0,
    settings: Optional[EstimationConfig] = None,
) -> BootstrapResult:
    """
    Resamples auctions with replacement, keeping each auction's draws, and refits
    from `estimate`. Standard errors are on the 15-vector scale.
    """
    if replications < 2:
        raise InvalidParameterError("replications", replications, "replications >= 2")
    bank.check_matches(dataset)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    replicates = []
    failed = 0
    for b in range(replications):
        indices = rng.integers(0, len(dataset), len(dataset))
        result = fit(dataset.subset(indices), bank.subset(indices), start=estimate, settings=settings)
        if not result.converged:
            failed += 1
        replicates.append(result.params.to_vector())
        logger.debug({"message": "bootstrap replicate", "replicate": b, "loglik": result.loglik})
    matrix = np.array(replicates)
    errors = np.std(matrix, axis=0, ddof=1)
    return BootstrapResult(
        standard_errors=dict(zip(parameter_names(), errors.tolist())),
        replicates=matrix,
        failed=failed,
    )
