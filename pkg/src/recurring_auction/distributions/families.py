"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Closed-form families: uniform and power laws.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from recurring_auction.distributions.value_distribution import ValueDistribution, adaptive_quad
from recurring_auction.errors import InvalidParameterError


@dataclass(frozen=True)
class Uniform(ValueDistribution):
    """Uniform values on [a, b]."""

    a: float
    b: float

    family = "uniform"

    def __post_init__(self) -> None:
        if not (np.isfinite(self.a) and np.isfinite(self.b)) or self.a >= self.b:
            raise InvalidParameterError("uniform.bounds", (self.a, self.b), "a < b, both finite")

    @property
    def lower(self) -> float:
        return float(self.a)

    @property
    def upper(self) -> float:
        return float(self.b)

    def params(self) -> List[float]:
        return [self.a, self.b]

    @property
    def _width(self) -> float:
        return float(self.b - self.a)

    def _cdf(self, v: np.ndarray) -> np.ndarray:
        return (v - self.a) / self._width

    def _sf(self, v: np.ndarray) -> np.ndarray:
        return (self.b - v) / self._width

    def _pdf(self, v: np.ndarray) -> np.ndarray:
        return np.full_like(v, 1.0 / self._width, dtype=float)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return self.a + p * self._width

    def _integrate_dF(self, func: Callable[[float], float], a: float, b: float) -> float:
        width = self._width
        return adaptive_quad(lambda x: func(x) / width, a, b)

    def _partial_expectation_closed(
        self, m: int, a: np.ndarray, b: np.ndarray
    ) -> Optional[np.ndarray]:
        # x·F^m integrated by parts: [x F^m] − ∫ F^m dx
        lo = np.clip(a, self.a, self.b)
        hi = np.clip(b, self.a, self.b)
        f_lo = self._cdf(lo)
        f_hi = self._cdf(hi)
        boundary = hi * f_hi**m - lo * f_lo**m
        area = self._width * (f_hi ** (m + 1) - f_lo ** (m + 1)) / (m + 1)
        return boundary - area


@dataclass(frozen=True)
class Power(ValueDistribution):
    """F(v) = v^k on [0, 1]."""

    k: float

    family = "power"

    def __post_init__(self) -> None:
        if not np.isfinite(self.k) or self.k <= 0:
            raise InvalidParameterError("power.k", self.k, "k > 0")

    @property
    def lower(self) -> float:
        return 0.0

    @property
    def upper(self) -> float:
        return 1.0

    def params(self) -> List[float]:
        return [self.k]

    def _cdf(self, v: np.ndarray) -> np.ndarray:
        return v**self.k

    def _sf(self, v: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return -np.expm1(self.k * np.log(v))

    def _pdf(self, v: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return self.k * v ** (self.k - 1.0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return p ** (1.0 / self.k)

    def _integrate_dF(self, func: Callable[[float], float], a: float, b: float) -> float:
        k = self.k
        return adaptive_quad(lambda x: func(x) * k * x ** (k - 1.0), a, b)

    def _partial_expectation_closed(
        self, m: int, a: np.ndarray, b: np.ndarray
    ) -> Optional[np.ndarray]:
        exponent = self.k * m
        lo = np.clip(a, 0.0, 1.0)
        hi = np.clip(b, 0.0, 1.0)
        return exponent / (exponent + 1.0) * (hi ** (exponent + 1.0) - lo ** (exponent + 1.0))
