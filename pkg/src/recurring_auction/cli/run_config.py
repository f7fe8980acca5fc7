"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Run configuration files for the command-line tool.

A run config is a JSON object. Every section has a fixed key set; unknown keys
are rejected before anything runs. See docs/configuration.md for the schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

from recurring_auction.distributions import from_spec
from recurring_auction.equilibrium import AuctionPrimitives
from recurring_auction.errors import (
    InvalidConfigurationError,
    UnknownConfigKeyError,
    ValidationError,
)
from recurring_auction.estimation import DEFAULT_TRUE_PARAMS, HyperParams
from recurring_auction.outcomes.counterfactuals import MODES
from recurring_auction.utilities.file_operations import FileOperations

ROOT_KEYS = {
    "command",
    "primitives",
    "objective",
    "reference_price",
    "sweep",
    "simulation",
    "estimation",
    "counterfactual",
    "target",
    "seed",
    "out",
}
PRIMITIVE_KEYS = {"distribution", "n_buyers", "rounds", "delta", "seller_value", "entry_cost", "reserves"}
SWEEP_KEYS = {"n_values", "round_values"}
SIMULATION_KEYS = {"n_draws", "workers", "chunk_size"}
ESTIMATION_KEYS = {
    "dataset",
    "generate",
    "draws",
    "start",
    "perturbation",
    "model",
    "bootstrap",
    "max_iterations",
    "restarts",
    "recovery_band",
}
GENERATE_KEYS = {"n_auctions", "true_params"}
HYPER_KEYS = {"beta_mu", "omega_mu", "beta_sigma", "omega_sigma", "beta_k", "omega_k"}
COUNTERFACTUAL_KEYS = {"mode", "cost_scales"}

COMMANDS = ("solve", "design", "simulate", "reproduce", "estimate")
TARGETS = ("example1", "example2", "footnotes", "counterfactual-synthetic")
OBJECTIVES = ("efficiency", "revenue")


def _check_keys(section: Mapping[str, Any], allowed: set, name: str) -> None:
    if not isinstance(section, Mapping):
        raise InvalidConfigurationError(name, f"'{name}' must be a JSON object")
    unknown = set(section) - allowed
    if unknown:
        raise UnknownConfigKeyError(sorted(unknown), section=name)


def _int(value: Any, name: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise InvalidConfigurationError(name, f"'{name}' must be an integer >= {minimum}")
    return value


def _number(value: Any, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidConfigurationError(name, f"'{name}' must be a number")
    return float(value)


def _hyper_params(record: Mapping[str, Any], name: str) -> HyperParams:
    _check_keys(record, HYPER_KEYS, name)
    missing = HYPER_KEYS - set(record)
    if missing:
        raise InvalidConfigurationError(name, f"'{name}' is missing {', '.join(sorted(missing))}")
    try:
        return HyperParams(**{k: record[k] for k in HYPER_KEYS})
    except (TypeError, ValidationError) as e:
        raise InvalidConfigurationError(name, f"'{name}' is not a valid parameter set: {e}") from e


@dataclass
class EstimationSection:
    dataset: Optional[str] = None
    n_auctions: Optional[int] = None
    true_params: HyperParams = DEFAULT_TRUE_PARAMS
    draws: Optional[int] = None
    start: Optional[HyperParams] = None
    perturbation: float = 0.10
    model: str = "recurring"
    bootstrap: int = 0
    max_iterations: Optional[int] = None
    restarts: Optional[int] = None
    recovery_band: float = 0.10

    @property
    def generates(self) -> bool:
        return self.n_auctions is not None


@dataclass
class RunConfig:
    """A validated run configuration. Command-line flags override file values."""

    command: Optional[str] = None
    primitives: Optional[AuctionPrimitives] = None
    objective: str = "efficiency"
    reference_price: Optional[float] = None
    n_values: List[int] = field(default_factory=list)
    round_values: List[int] = field(default_factory=lambda: [2, 3])
    n_draws: int = 0
    workers: Optional[int] = None
    chunk_size: Optional[int] = None
    estimation: EstimationSection = field(default_factory=EstimationSection)
    counterfactual_mode: Optional[str] = None
    cost_scales: Sequence[float] = (0.9, 1.0, 1.1)
    target: Optional[str] = None
    seed: int = 0
    out: str = "results"

    @classmethod
    def from_dict(cls, record: Mapping[str, Any]) -> "RunConfig":
        """
        Raises:
            UnknownConfigKeyError: a key outside the published schema.
            InvalidConfigurationError: a value of the wrong type or out of range.
        """
        _check_keys(record, ROOT_KEYS, "root")
        config = cls()

        if "command" in record:
            if record["command"] not in COMMANDS:
                raise InvalidConfigurationError("command", f"command must be one of {', '.join(COMMANDS)}")
            config.command = record["command"]
        if "primitives" in record:
            config.primitives = parse_primitives(record["primitives"])
        if "objective" in record:
            if record["objective"] not in OBJECTIVES:
                raise InvalidConfigurationError(
                    "objective", f"objective must be one of {', '.join(OBJECTIVES)}"
                )
            config.objective = record["objective"]
        if "reference_price" in record:
            config.reference_price = _number(record["reference_price"], "reference_price")
            if config.reference_price <= 0:
                raise InvalidConfigurationError("reference_price", "reference_price must be positive")
        if "sweep" in record:
            sweep = record["sweep"]
            _check_keys(sweep, SWEEP_KEYS, "sweep")
            config.n_values = [_int(n, "sweep.n_values", 1) for n in sweep.get("n_values", [])]
            config.round_values = [_int(t, "sweep.round_values", 1) for t in sweep.get("round_values", [2, 3])]
        if "simulation" in record:
            simulation = record["simulation"]
            _check_keys(simulation, SIMULATION_KEYS, "simulation")
            config.n_draws = _int(simulation.get("n_draws", 0), "simulation.n_draws")
            if "workers" in simulation:
                config.workers = _int(simulation["workers"], "simulation.workers", 1)
            if "chunk_size" in simulation:
                config.chunk_size = _int(simulation["chunk_size"], "simulation.chunk_size", 1)
        if "estimation" in record:
            config.estimation = parse_estimation(record["estimation"])
        if "counterfactual" in record:
            section = record["counterfactual"]
            _check_keys(section, COUNTERFACTUAL_KEYS, "counterfactual")
            mode = section.get("mode", "truncate-T")
            if mode not in MODES:
                raise InvalidConfigurationError("counterfactual.mode", f"mode must be one of {', '.join(MODES)}")
            config.counterfactual_mode = mode
            if "cost_scales" in section:
                config.cost_scales = [_number(s, "counterfactual.cost_scales") for s in section["cost_scales"]]
        if "target" in record:
            config.target = validate_target(record["target"])
        if "seed" in record:
            config.seed = _int(record["seed"], "seed")
        if "out" in record:
            config.out = str(record["out"])
        return config

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        try:
            text = FileOperations.read_file(str(path))
        except OSError as e:
            raise InvalidConfigurationError("config", f"Cannot read config file {path}: {e}") from e
        try:
            record = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidConfigurationError("config", f"Malformed JSON in {path}: {e}") from e
        return cls.from_dict(record)

    def require_primitives(self) -> AuctionPrimitives:
        if self.primitives is None:
            raise InvalidConfigurationError("primitives", "this command needs a 'primitives' section")
        return self.primitives


def parse_primitives(record: Mapping[str, Any]) -> AuctionPrimitives:
    _check_keys(record, PRIMITIVE_KEYS, "primitives")
    missing = {"distribution", "n_buyers", "rounds", "delta", "entry_cost"} - set(record)
    if missing:
        raise InvalidConfigurationError("primitives", f"primitives is missing {', '.join(sorted(missing))}")
    reserves = record.get("reserves")
    try:
        return AuctionPrimitives(
            dist=from_spec(record["distribution"]),
            n_buyers=_int(record["n_buyers"], "primitives.n_buyers", 1),
            rounds=_int(record["rounds"], "primitives.rounds", 1),
            delta=_number(record["delta"], "primitives.delta"),
            seller_value=_number(record.get("seller_value", 0.0), "primitives.seller_value"),
            entry_cost=_number(record["entry_cost"], "primitives.entry_cost"),
            reserves=None if reserves is None else tuple(_number(r, "primitives.reserves") for r in reserves),
        )
    except ValidationError as e:
        raise InvalidConfigurationError("primitives", f"Invalid primitives: {e.message}") from e


def parse_estimation(record: Mapping[str, Any]) -> EstimationSection:
    _check_keys(record, ESTIMATION_KEYS, "estimation")
    section = EstimationSection()
    if "dataset" in record:
        section.dataset = str(record["dataset"])
    if "generate" in record:
        generate = record["generate"]
        _check_keys(generate, GENERATE_KEYS, "estimation.generate")
        section.n_auctions = _int(generate.get("n_auctions", 500), "estimation.generate.n_auctions", 1)
        if "true_params" in generate:
            section.true_params = _hyper_params(generate["true_params"], "estimation.generate.true_params")
    if "draws" in record:
        section.draws = _int(record["draws"], "estimation.draws", 1)
    if "start" in record:
        section.start = _hyper_params(record["start"], "estimation.start")
    if "perturbation" in record:
        section.perturbation = _number(record["perturbation"], "estimation.perturbation")
        if not 0 <= section.perturbation < 1:
            raise InvalidConfigurationError("estimation.perturbation", "perturbation must lie in [0, 1)")
    if "model" in record:
        if record["model"] not in ("recurring", "single_round"):
            raise InvalidConfigurationError("estimation.model", "model must be 'recurring' or 'single_round'")
        section.model = record["model"]
    if "bootstrap" in record:
        section.bootstrap = _int(record["bootstrap"], "estimation.bootstrap")
    if "max_iterations" in record:
        section.max_iterations = _int(record["max_iterations"], "estimation.max_iterations", 1)
    if "restarts" in record:
        section.restarts = _int(record["restarts"], "estimation.restarts")
    if "recovery_band" in record:
        section.recovery_band = _number(record["recovery_band"], "estimation.recovery_band")
    return section


def validate_target(target: Any) -> str:
    if target not in TARGETS:
        raise InvalidConfigurationError("target", f"target must be one of {', '.join(TARGETS)}")
    return str(target)
