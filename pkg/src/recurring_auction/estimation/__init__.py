"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from recurring_auction.estimation.dataset import AuctionDataset, read_dataset, write_dataset
from recurring_auction.estimation.draw_bank import (
    DrawBank,
    draw_generator,
    equilibrium_or_no_entry,
    precompute_draws,
)
from recurring_auction.estimation.fitting import (
    BootstrapResult,
    FitResult,
    RecoveryReport,
    SimplexResult,
    bootstrap_standard_errors,
    fit,
    implied_primitive_means,
    parameter_names,
    recovery_report,
    simplex_maximize,
)
from recurring_auction.estimation.likelihood import (
    OutcomeClass,
    classify_outcome,
    outcome_likelihood,
    single_round_likelihood,
)
from recurring_auction.estimation.models import (
    COVARIATE_NAMES,
    DEFAULT_TRUE_PARAMS,
    AuctionObservation,
    AuctionParams,
    Covariates,
    HyperParams,
)
from recurring_auction.estimation.primitive_draws import (
    draw_primitives,
    log_density,
    log_density_matrix,
    primitive_laws,
)
from recurring_auction.estimation.simulated_likelihood import (
    LikelihoodEvaluation,
    effective_sample_size,
    evaluate_loglik,
    importance_log_weights,
    simulated_loglik,
)
from recurring_auction.estimation.synthetic import GeneratorSettings, draw_covariates, generate_synthetic

__all__ = [
    "COVARIATE_NAMES",
    "DEFAULT_TRUE_PARAMS",
    "Covariates",
    "HyperParams",
    "AuctionParams",
    "AuctionObservation",
    "AuctionDataset",
    "read_dataset",
    "write_dataset",
    "draw_primitives",
    "primitive_laws",
    "log_density",
    "log_density_matrix",
    "OutcomeClass",
    "classify_outcome",
    "outcome_likelihood",
    "single_round_likelihood",
    "DrawBank",
    "draw_generator",
    "equilibrium_or_no_entry",
    "precompute_draws",
    "LikelihoodEvaluation",
    "evaluate_loglik",
    "simulated_loglik",
    "importance_log_weights",
    "effective_sample_size",
    "SimplexResult",
    "simplex_maximize",
    "FitResult",
    "fit",
    "implied_primitive_means",
    "RecoveryReport",
    "recovery_report",
    "BootstrapResult",
    "bootstrap_standard_errors",
    "parameter_names",
    "GeneratorSettings",
    "draw_covariates",
    "generate_synthetic",
]
