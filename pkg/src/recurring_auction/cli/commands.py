"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

One function per subcommand. Each writes its files under the output directory
and returns the paths it wrote.
"""

from __future__ import annotations

import io
import os
from dataclasses import replace
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from aws_lambda_powertools import Logger

from recurring_auction.cli.golden_suites import run_suite
from recurring_auction.cli.run_config import RunConfig, validate_target
from recurring_auction.config import EstimationConfig, SolverConfig, get_config
from recurring_auction.design import (
    certify,
    design_tradeoff_report,
    efficient_design,
    figure_sweep,
    reserve_fractions,
    revenue_design,
)
from recurring_auction.equilibrium import (
    EquilibriumSolution,
    ThresholdSequence,
    definition_gaps,
    indifference_residuals,
    solve_equilibrium,
)
from recurring_auction.errors import (
    GoldenCheckFailedError,
    InvalidConfigurationError,
    NoEntryEquilibriumError,
)
from recurring_auction.estimation import (
    bootstrap_standard_errors,
    evaluate_loglik,
    fit,
    generate_synthetic,
    precompute_draws,
    read_dataset,
    recovery_report,
    write_dataset,
)
from recurring_auction.outcomes import counterfactual_table, summarize
from recurring_auction.simulate import simulate_outcomes, summarize_batch
from recurring_auction.utilities.file_operations import FileOperations
from recurring_auction.utilities.numbers_utility import NumberUtility
from recurring_auction.utilities.serialization_utility import Serialization

logger = Logger(__name__)


def _frame_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def _write(out: str, name: str, text: str, written: List[str]) -> None:
    path = os.path.join(out, name)
    FileOperations.write_file(path, text)
    written.append(path)


def _solver_settings() -> SolverConfig:
    return get_config().solver


def cmd_solve(config: RunConfig) -> List[str]:
    """Equilibrium thresholds, outcome summary and residual diagnostics."""
    primitives = config.require_primitives()
    written: List[str] = []
    record: Dict[str, Any] = {"primitives": primitives.to_dictionary()}
    try:
        solution: Optional[EquilibriumSolution] = solve_equilibrium(primitives, _solver_settings())
        thresholds = solution.thresholds
        record["diagnostics"] = solution.to_dictionary()
    except NoEntryEquilibriumError as e:
        logger.warning({"message": "no buyer type enters", "thresholds": list(e.thresholds)})
        solution = None
        thresholds = ThresholdSequence(tuple(e.thresholds))
        record["diagnostics"] = {"no_entry": True}

    summary = summarize(thresholds, primitives)
    record["thresholds"] = list(thresholds.values)
    record["reserves"] = list(primitives.reserve_array())
    record["summary"] = summary.to_dictionary()
    record["indifference_residuals"] = indifference_residuals(thresholds, primitives)
    record["definition_gaps"] = definition_gaps(thresholds, primitives)

    if config.counterfactual_mode:
        table = counterfactual_table(
            primitives, config.counterfactual_mode, config.cost_scales, _solver_settings()
        )
        _write(config.out, "counterfactual.csv", table.to_csv(), written)

    _write(config.out, "solve.json", Serialization.to_json(record), written)
    _write(config.out, "solve.csv", _frame_csv(pd.DataFrame([summary.to_row()])), written)
    logger.info({"message": "solve finished", "thresholds": record["thresholds"], "files": written})
    return written


def cmd_design(config: RunConfig) -> List[str]:
    """Optimal thresholds and reserves for the chosen objective."""
    primitives = config.require_primitives().without_reserves()
    designer = efficient_design if config.objective == "efficiency" else revenue_design
    result = designer(primitives, _solver_settings())
    written: List[str] = []

    record: Dict[str, Any] = result.to_dictionary()
    designed = primitives.with_reserves(result.reserves)
    record["summary"] = summarize(result.thresholds, designed).to_dictionary()
    record["certification"] = certify(result, primitives).to_dictionary()
    record["tradeoff"] = [
        row.to_dictionary() for row in design_tradeoff_report(primitives, result.thresholds, result.objective)
    ]
    _write(config.out, "design.json", Serialization.to_json(record), written)
    _write(config.out, "design.csv", _frame_csv(pd.DataFrame([result.to_row()])), written)

    if config.reference_price is not None:
        fractions = reserve_fractions(result, config.reference_price)
        frame = pd.DataFrame(
            {
                "round": list(range(1, len(fractions) + 1)),
                "reserve": [NumberUtility.to_significant_digits(r) for r in result.reserves],
                "fraction": [NumberUtility.to_significant_digits(f) for f in fractions],
            }
        )
        _write(config.out, "reserve_fractions.csv", _frame_csv(frame), written)

    if config.n_values:
        sweep = figure_sweep(
            primitives.dist,
            primitives.entry_cost,
            primitives.seller_value,
            primitives.delta,
            config.n_values,
            config.round_values,
            _solver_settings(),
        )
        _write(config.out, "figure_sweep.csv", sweep.to_csv(), written)
    logger.info({"message": "design finished", "objective": result.objective, "files": written})
    return written


def cmd_simulate(config: RunConfig) -> List[str]:
    """Outcome stream CSV plus a summary checked against the closed forms."""
    primitives = config.require_primitives()
    try:
        thresholds = solve_equilibrium(primitives, _solver_settings()).thresholds
    except NoEntryEquilibriumError as e:
        thresholds = ThresholdSequence(tuple(e.thresholds))
    settings = get_config().simulation
    if config.chunk_size:
        settings = replace(settings, chunk_size=config.chunk_size)

    batch = simulate_outcomes(thresholds, primitives, config.n_draws, config.seed, settings)
    written: List[str] = []
    _write(config.out, "outcomes.csv", _frame_csv(batch.to_frame()), written)
    if len(batch) > 0:
        estimate = summarize_batch(batch)
        closed_form = summarize(thresholds, primitives)
        agreement = estimate.agreement(closed_form)
        summary = {
            "seed": config.seed,
            "n_draws": config.n_draws,
            "monte_carlo": estimate.to_dictionary(),
            "closed_form": closed_form.to_dictionary(),
            "within_3_se": agreement,
            "all_agree": all(agreement.values()),
        }
        if not summary["all_agree"]:
            logger.warning({"message": "monte carlo disagrees with closed form", "checks": agreement})
        _write(config.out, "simulate_summary.json", Serialization.to_json(summary), written)
    logger.info({"message": "simulate finished", "draws": config.n_draws, "files": written})
    return written


def cmd_reproduce(config: RunConfig) -> List[str]:
    """
    Raises:
        GoldenCheckFailedError: after the report is written, when any check fails.
    """
    if config.target is None:
        raise InvalidConfigurationError("target", "reproduce needs --target")
    target = validate_target(config.target)
    report = run_suite(target, _solver_settings(), seed=config.seed)
    written: List[str] = []
    _write(config.out, f"reproduce_{target}.csv", report.to_csv(), written)
    for name, text in sorted(report.artifacts.items()):
        _write(config.out, name, text, written)
    if not report.passed:
        for check in report.checks:
            if not check.passed:
                logger.error({"message": "golden check failed", "check": check.name, "computed": check.computed})
        raise GoldenCheckFailedError(target, report.failed)
    logger.info({"message": "reproduce finished", "target": target, "checks": len(report.checks)})
    return written


def _estimation_settings(config: RunConfig) -> EstimationConfig:
    settings = get_config().estimation
    section = config.estimation
    overrides: Dict[str, Any] = {}
    if section.draws is not None:
        overrides["draws_per_auction"] = section.draws
    if section.max_iterations is not None:
        overrides["max_iterations"] = section.max_iterations
    if section.restarts is not None:
        overrides["restarts"] = section.restarts
    return replace(settings, **overrides) if overrides else settings


def cmd_estimate(config: RunConfig) -> List[str]:
    """Generate-then-fit, or fit-only on a dataset file."""
    section = config.estimation
    written: List[str] = []
    if section.generates:
        dataset = generate_synthetic(section.true_params, section.n_auctions, config.seed)
        written.append(str(write_dataset(dataset, os.path.join(config.out, "dataset.csv"))))
    elif section.dataset:
        dataset = read_dataset(section.dataset)
    else:
        raise InvalidConfigurationError("estimation.dataset", "estimate needs a dataset path or a generate section")

    settings = _estimation_settings(config)
    if section.start is not None:
        start = section.start
    else:
        rng = np.random.default_rng(np.random.SeedSequence(entropy=config.seed, spawn_key=(1,)))
        start = section.true_params.perturbed(rng, section.perturbation)

    bank = precompute_draws(
        start,
        dataset,
        n_draws=settings.draws_per_auction,
        seed=config.seed,
        model=section.model,  # type: ignore[arg-type]
        workers=config.workers,
    )
    result = fit(dataset, bank, start=start, settings=settings)
    evaluation = evaluate_loglik(result.params, dataset, bank, settings.likelihood_floor)

    record: Dict[str, Any] = {
        "fit": result.to_dictionary(),
        "start": start.to_dictionary(),
        "draw_bank": {"key": list(bank.key), "failures": bank.failures, "model": bank.model},
        "auctions": len(dataset),
        "sale_rates": dataset.sale_rates(),
    }
    if section.generates:
        report = recovery_report(result.params, section.true_params, dataset, section.recovery_band)
        record["recovery"] = {**report.to_dictionary(), "within_band": report.within_band}
        record["loglik_at_truth"] = evaluate_loglik(section.true_params, dataset, bank).value
    if section.bootstrap:
        bootstrap = bootstrap_standard_errors(
            dataset, bank, result.params, section.bootstrap, config.seed, settings
        )
        record["bootstrap"] = {"standard_errors": bootstrap.standard_errors, "failed": bootstrap.failed}

    _write(config.out, "estimate.json", Serialization.to_json(record), written)
    trace = pd.DataFrame({"pass": range(len(result.trace)), "loglik": result.trace})
    _write(config.out, "loglik_trace.csv", _frame_csv(trace), written)
    ess = pd.DataFrame(
        {
            "id": [o.auction_id for o in dataset],
            "effective_sample_size": [NumberUtility.to_significant_digits(e) for e in evaluation.effective_sample_size],
            "log_contribution": [NumberUtility.to_significant_digits(c) for c in evaluation.contributions],
        }
    )
    _write(config.out, "weights.csv", _frame_csv(ess), written)
    logger.info({"message": "estimate finished", "loglik": result.loglik, "converged": result.converged})
    return written


COMMANDS = {
    "solve": cmd_solve,
    "design": cmd_design,
    "simulate": cmd_simulate,
    "reproduce": cmd_reproduce,
    "estimate": cmd_estimate,
}
