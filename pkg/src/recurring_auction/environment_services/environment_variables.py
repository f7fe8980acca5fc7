"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License.  See Project Root for the license information.
"""

import os

from aws_lambda_powertools import Logger

logger = Logger(__name__)


def _get_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer value for {name}: {value}")
        return default


def _get_float(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return float(value)
    except ValueError:
        logger.warning(f"Ignoring non-numeric value for {name}: {value}")
        return default


class EnvironmentVariables:
    """
    Easy access to all the environment variables we use in the application.
    Keeping every os.getenv in one place lets us track what is in use.
    """

    class Solver:
        """Equilibrium and design solver settings"""

        @staticmethod
        def grid_points() -> int:
            """number of first-round candidates scanned when bracketing"""
            return _get_int("RA_GRID_POINTS", 512)

        @staticmethod
        def residual_tolerance() -> float:
            """largest accepted indifference / FOC residual, in value units"""
            return _get_float("RA_RESIDUAL_TOLERANCE", 1e-8)

    class Simulation:
        """Monte Carlo settings"""

        @staticmethod
        def workers() -> int:
            """process count for simulation and draw banks"""
            return _get_int("RA_WORKERS", 1)

        @staticmethod
        def chunk_size() -> int:
            """draws per random substream"""
            return _get_int("RA_CHUNK_SIZE", 10_000)

    class Estimation:
        """Simulated maximum likelihood settings"""

        @staticmethod
        def draws_per_auction() -> int:
            """S, the number of importance draws per auction"""
            return _get_int("RA_DRAWS", 1000)

        @staticmethod
        def max_iterations() -> int:
            """simplex iteration cap per restart"""
            return _get_int("RA_MAX_ITERATIONS", 2000)

    class Logging:
        """Logging settings"""

        @staticmethod
        def log_level() -> str:
            """gets the log level"""
            return os.getenv("LOG_LEVEL", "INFO")

        @staticmethod
        def enable_stack_trace() -> bool:
            """emit tracebacks on CLI failures"""
            return str(os.getenv("ENABLE_STACK_TRACE", "false")).lower() == "true"

    @staticmethod
    def get_environment_setting() -> str:
        """gets the environment name"""
        return os.getenv("ENVIRONMENT", "")
