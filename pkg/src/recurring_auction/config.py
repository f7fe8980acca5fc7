"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Centralized configuration management for recurring-auction.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

from recurring_auction.environment_services.environment_variables import EnvironmentVariables
from recurring_auction.errors import InvalidConfigurationError


@dataclass
class SolverConfig:
    """Equilibrium and design solver settings."""

    grid_points: int = 512
    residual_tolerance: float = 1e-8
    root_xtol: float = 1e-14
    bisection_xtol: float = 1e-10

    def __post_init__(self) -> None:
        if self.grid_points < 8:
            raise InvalidConfigurationError("solver.grid_points", "grid_points must be >= 8")
        if self.residual_tolerance <= 0:
            raise InvalidConfigurationError(
                "solver.residual_tolerance", "residual_tolerance must be positive"
            )

    @classmethod
    def from_environment(cls) -> "SolverConfig":
        """Create solver configuration from environment variables."""
        return cls(
            grid_points=EnvironmentVariables.Solver.grid_points(),
            residual_tolerance=EnvironmentVariables.Solver.residual_tolerance(),
        )


@dataclass
class SimulationConfig:
    """Monte Carlo settings."""

    workers: int = 1
    chunk_size: int = 10_000

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise InvalidConfigurationError("simulation.workers", "workers must be >= 1")
        if self.chunk_size < 1:
            raise InvalidConfigurationError("simulation.chunk_size", "chunk_size must be >= 1")

    @classmethod
    def from_environment(cls) -> "SimulationConfig":
        """Create simulation configuration from environment variables."""
        return cls(
            workers=EnvironmentVariables.Simulation.workers(),
            chunk_size=EnvironmentVariables.Simulation.chunk_size(),
        )


@dataclass
class EstimationConfig:
    """Simulated maximum likelihood settings."""

    draws_per_auction: int = 1000
    likelihood_floor: float = 1e-300
    max_iterations: int = 2000
    restarts: int = 2
    tolerance: float = 1e-6

    def __post_init__(self) -> None:
        if self.draws_per_auction < 1:
            raise InvalidConfigurationError(
                "estimation.draws_per_auction", "draws_per_auction must be >= 1"
            )
        if not 0 < self.likelihood_floor < 1:
            raise InvalidConfigurationError(
                "estimation.likelihood_floor", "likelihood_floor must lie in (0, 1)"
            )

    @classmethod
    def from_environment(cls) -> "EstimationConfig":
        """Create estimation configuration from environment variables."""
        return cls(
            draws_per_auction=EnvironmentVariables.Estimation.draws_per_auction(),
            max_iterations=EnvironmentVariables.Estimation.max_iterations(),
        )


@dataclass
class LoggingConfig:
    """Logging configuration settings."""

    log_level: str = "INFO"
    enable_stack_trace: bool = False

    @classmethod
    def from_environment(cls) -> "LoggingConfig":
        """Create logging configuration from environment variables."""
        return cls(
            log_level=EnvironmentVariables.Logging.log_level(),
            enable_stack_trace=EnvironmentVariables.Logging.enable_stack_trace(),
        )


@dataclass
class RecurringAuctionConfig:
    """
    Centralized configuration for recurring-auction.

    Attributes:
        solver: Threshold and design solver settings
        simulation: Monte Carlo settings
        estimation: Simulated maximum likelihood settings
        logging: Logging configuration
        environment: Environment name (dev, ci, etc.)

    Example:
        >>> config = RecurringAuctionConfig.from_environment()
        >>> config.solver.grid_points
        512
    """

    solver: SolverConfig = field(default_factory=SolverConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    estimation: EstimationConfig = field(default_factory=EstimationConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    environment: str = ""

    @classmethod
    def from_environment(cls) -> "RecurringAuctionConfig":
        """
        Create configuration from environment variables.

        Returns:
            RecurringAuctionConfig: Configuration loaded from environment variables
        """
        return cls(
            solver=SolverConfig.from_environment(),
            simulation=SimulationConfig.from_environment(),
            estimation=EstimationConfig.from_environment(),
            logging=LoggingConfig.from_environment(),
            environment=EnvironmentVariables.get_environment_setting(),
        )

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert configuration to dictionary.

        Example:
            >>> RecurringAuctionConfig().to_dict()["simulation"]
            {'workers': 1, 'chunk_size': 10000}
        """
        return asdict(self)


# Global configuration instance (lazy-loaded)
_config: Optional[RecurringAuctionConfig] = None


def get_config() -> RecurringAuctionConfig:
    """
    Get the global configuration instance.

    The instance is loaded from environment variables on first use and cached.

    Example:
        >>> from recurring_auction.config import get_config
        >>> get_config().solver.residual_tolerance
        1e-08
    """
    global _config
    if _config is None:
        _config = RecurringAuctionConfig.from_environment()
    return _config


def reset_config() -> None:
    """
    Reset the global configuration instance.

    Forces the configuration to be reloaded from environment variables
    on the next call to get_config().
    """
    global _config
    _config = None


def set_config(config: RecurringAuctionConfig) -> None:
    """
    Set a custom configuration instance.

    Example:
        >>> set_config(RecurringAuctionConfig(simulation=SimulationConfig(workers=4)))
        >>> get_config().simulation.workers
        4
    """
    global _config
    _config = config
