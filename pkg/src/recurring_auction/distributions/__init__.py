"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from typing import Any, Dict, Mapping, Type

from recurring_auction.distributions.families import Power, Uniform
from recurring_auction.distributions.order_statistic_integral import (
    OrderStatisticIntegral,
    order_statistic_integral,
)
from recurring_auction.distributions.truncated import TruncatedLogNormal, TruncatedNormal
from recurring_auction.distributions.value_distribution import ValueDistribution
from recurring_auction.errors import InvalidParameterError, MissingParameterError

FAMILIES: Dict[str, Type[ValueDistribution]] = {
    "uniform": Uniform,
    "power": Power,
    "trln": TruncatedLogNormal,
    "trn": TruncatedNormal,
}

_ARITY = {"uniform": (2, 2), "power": (1, 1), "trln": (2, 4), "trn": (4, 4)}


def from_spec(record: Mapping[str, Any]) -> ValueDistribution:
    """
    Build a distribution from its tagged JSON record.

    >>> from_spec({"family": "power", "params": [4]}).cdf(0.5)
    0.0625
    """
    if "family" not in record:
        raise MissingParameterError("distribution.family")
    family = str(record["family"]).lower()
    if family not in FAMILIES:
        raise InvalidParameterError(
            "distribution.family", family, f"one of {', '.join(sorted(FAMILIES))}"
        )
    params = record.get("params", [])
    if not isinstance(params, (list, tuple)):
        raise InvalidParameterError("distribution.params", params, "a list of numbers")
    low, high = _ARITY[family]
    if not low <= len(params) <= high:
        raise InvalidParameterError(
            "distribution.params", params, f"{low} to {high} numbers for '{family}'"
        )
    try:
        values = [float(p) for p in params]
    except (TypeError, ValueError) as e:
        raise InvalidParameterError("distribution.params", params, "numbers") from e
    return FAMILIES[family](*values)  # type: ignore[call-arg]


__all__ = [
    "ValueDistribution",
    "Uniform",
    "Power",
    "TruncatedLogNormal",
    "TruncatedNormal",
    "OrderStatisticIntegral",
    "order_statistic_integral",
    "from_spec",
    "FAMILIES",
]
