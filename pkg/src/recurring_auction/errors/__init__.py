"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Exception classes for recurring-auction.
"""

from recurring_auction.errors.exceptions import (  # Base; Validation; Configuration; Numerical; Estimation; Serialization; Golden
    ConfigurationError,
    DatasetFormatError,
    DegenerateDensityError,
    DesignBracketError,
    EstimationError,
    GoldenCheckFailedError,
    InvalidConfigurationError,
    InvalidParameterError,
    MalformedObservationError,
    MissingParameterError,
    NoEntryEquilibriumError,
    NonRegularDistributionError,
    NumericalError,
    RecurringAuctionError,
    SerializationError,
    ShootingBracketError,
    UnknownConfigKeyError,
    ValidationError,
    ZeroMassError,
)

__all__ = [
    "RecurringAuctionError",
    "ValidationError",
    "InvalidParameterError",
    "MissingParameterError",
    "ConfigurationError",
    "InvalidConfigurationError",
    "UnknownConfigKeyError",
    "NumericalError",
    "DegenerateDensityError",
    "ZeroMassError",
    "NonRegularDistributionError",
    "NoEntryEquilibriumError",
    "ShootingBracketError",
    "DesignBracketError",
    "EstimationError",
    "MalformedObservationError",
    "SerializationError",
    "DatasetFormatError",
    "GoldenCheckFailedError",
]
