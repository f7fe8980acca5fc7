"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Comprehensive exception hierarchy for recurring-auction.
"""

from typing import Any, Dict, Optional, Sequence


class RecurringAuctionError(Exception):
    """
    Base exception for all recurring-auction errors.

    All custom exceptions in recurring-auction inherit from this class,
    making it easy to catch any library-specific error.

    Attributes:
        message: Human-readable error message
        error_code: Machine-readable error code
        details: Additional context about the error
    """

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.details:
            return f"[{self.error_code}] {self.message} | Details: {self.details}"
        return f"[{self.error_code}] {self.message}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for logging or CLI reports."""
        return {
            "error_code": self.error_code,
            "message": self.message,
            "details": self.details,
        }


# ============================================================================
# Validation Errors
# ============================================================================


class ValidationError(RecurringAuctionError):
    """Base exception for validation errors."""

    pass


class InvalidParameterError(ValidationError):
    """Raised when a parameter has an invalid value."""

    def __init__(
        self,
        parameter_name: str,
        value: Any,
        expected: Optional[str] = None,
        message: Optional[str] = None,
    ):
        details = {
            "parameter_name": parameter_name,
            "value": str(value),
        }
        if expected:
            details["expected"] = expected

        msg = message or f"Invalid value for parameter '{parameter_name}': {value}"
        super().__init__(message=msg, error_code="INVALID_PARAMETER", details=details)


class MissingParameterError(ValidationError):
    """Raised when a required parameter is missing."""

    def __init__(self, parameter_name: str, message: Optional[str] = None):
        details = {"parameter_name": parameter_name}
        msg = message or f"Required parameter '{parameter_name}' is missing"
        super().__init__(message=msg, error_code="MISSING_PARAMETER", details=details)


# ============================================================================
# Configuration Errors
# ============================================================================


class ConfigurationError(RecurringAuctionError):
    """Base exception for configuration errors."""

    pass


class InvalidConfigurationError(ConfigurationError):
    """Raised when configuration is invalid."""

    def __init__(
        self,
        config_key: Optional[str] = None,
        message: Optional[str] = None,
    ):
        details = {}
        if config_key:
            details["config_key"] = config_key

        msg = message or "Invalid configuration"
        super().__init__(message=msg, error_code="INVALID_CONFIGURATION", details=details)


class UnknownConfigKeyError(ConfigurationError):
    """Raised when a run configuration carries keys outside the published schema."""

    def __init__(self, keys: Sequence[str], section: str = "root"):
        details = {"keys": sorted(keys), "section": section}
        msg = f"Unknown configuration keys in '{section}': {', '.join(sorted(keys))}"
        super().__init__(message=msg, error_code="UNKNOWN_CONFIG_KEY", details=details)


# ============================================================================
# Numerical Errors
# ============================================================================


class NumericalError(RecurringAuctionError):
    """Base exception for solver and integration failures."""

    pass


class DegenerateDensityError(NumericalError):
    """Raised when a density is too small to divide by (virtual value)."""

    def __init__(self, value: float, density: float, message: Optional[str] = None):
        details = {"value": value, "density": density}
        msg = message or f"Density {density:.3e} at v={value:.6g} is degenerate"
        super().__init__(message=msg, error_code="DEGENERATE_DENSITY", details=details)


class ZeroMassError(NumericalError):
    """Raised when a formula divides by a probability mass that is zero."""

    def __init__(self, quantity: str, round_index: Optional[int] = None):
        details: Dict[str, Any] = {"quantity": quantity}
        if round_index is not None:
            details["round"] = round_index
        msg = f"Zero probability mass in {quantity}"
        super().__init__(message=msg, error_code="ZERO_MASS", details=details)


class NonRegularDistributionError(NumericalError):
    """Raised when the virtual value is not increasing on the search region."""

    def __init__(self, value: float, message: Optional[str] = None):
        details = {"value": value}
        msg = message or f"Virtual value decreases near v={value:.6g}"
        super().__init__(message=msg, error_code="NON_REGULAR_DISTRIBUTION", details=details)


class NoEntryEquilibriumError(NumericalError):
    """
    Raised when no type can profitably enter any round.

    The corner thresholds (all equal to the upper support bound) are attached so
    callers that treat "no entry" as a legitimate outcome can keep going.
    """

    def __init__(self, thresholds: Sequence[float], message: Optional[str] = None):
        self.thresholds = tuple(thresholds)
        details = {"thresholds": list(self.thresholds)}
        msg = message or "Even the highest type cannot profitably enter any round"
        super().__init__(message=msg, error_code="NO_ENTRY", details=details)


class ShootingBracketError(NumericalError):
    """Raised when the shooting residual cannot be bracketed or does not verify."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message, error_code="SHOOTING_NOT_BRACKETED", details=diagnostics or {}
        )


class DesignBracketError(NumericalError):
    """Raised when the first-order system of a design problem has no verified root."""

    def __init__(self, objective: str, diagnostics: Optional[Dict[str, Any]] = None):
        details = {"objective": objective, **(diagnostics or {})}
        msg = f"No verified root for the {objective} design conditions"
        super().__init__(message=msg, error_code="DESIGN_NOT_BRACKETED", details=details)


# ============================================================================
# Estimation Errors
# ============================================================================


class EstimationError(RecurringAuctionError):
    """Base exception for estimation errors."""

    pass


class MalformedObservationError(EstimationError):
    """Raised when an auction observation is internally inconsistent."""

    def __init__(self, observation_id: str, reason: str):
        details = {"observation_id": observation_id, "reason": reason}
        msg = f"Malformed observation '{observation_id}': {reason}"
        super().__init__(message=msg, error_code="MALFORMED_OBSERVATION", details=details)


# ============================================================================
# Serialization Errors
# ============================================================================


class SerializationError(RecurringAuctionError):
    """Base exception for serialization/deserialization errors."""

    pass


class DatasetFormatError(SerializationError):
    """Raised when a dataset or cache file cannot be parsed."""

    def __init__(
        self,
        path: Optional[str] = None,
        row: Optional[int] = None,
        message: Optional[str] = None,
    ):
        details: Dict[str, Any] = {}
        if path:
            details["path"] = path
        if row is not None:
            details["row"] = row

        msg = message or "Dataset could not be parsed"
        super().__init__(message=msg, error_code="DATASET_FORMAT_ERROR", details=details)


# ============================================================================
# Golden Check Errors
# ============================================================================


class GoldenCheckFailedError(RecurringAuctionError):
    """Raised when one or more pinned reference values fail to reproduce."""

    def __init__(self, target: str, failed: Sequence[str]):
        details = {"target": target, "failed": list(failed)}
        msg = f"{len(failed)} golden check(s) failed for target '{target}'"
        super().__init__(message=msg, error_code="GOLDEN_CHECK_FAILED", details=details)
