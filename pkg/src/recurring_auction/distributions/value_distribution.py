"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Value-distribution abstraction shared by every solver.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any, Callable, ClassVar, Dict, List, Optional, Union

import numpy as np
from aws_lambda_powertools import Logger
from scipy import integrate

from recurring_auction.errors import DegenerateDensityError, NonRegularDistributionError

if TYPE_CHECKING:
    from recurring_auction.distributions.order_statistic_integral import OrderStatisticIntegral

logger = Logger(__name__)

ArrayLike = Union[float, np.ndarray]

DENSITY_FLOOR = 1e-12
QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 200


def _finish(result: np.ndarray, scalar: bool) -> ArrayLike:
    if scalar:
        return float(result)
    return result


def adaptive_quad(
    func: Callable[[float], float],
    a: float,
    b: float,
    points: Optional[List[float]] = None,
) -> float:
    """QUADPACK (Gauss–Kronrod 21) with the package-wide tolerances."""
    inner = None
    if points:
        inner = [p for p in points if a < p < b] or None
    value, _ = integrate.quad(
        func, a, b, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT, points=inner
    )
    return float(value)


class ValueDistribution(ABC):
    """
    Law F of a buyer's private value on [lower, upper].

    Subclasses implement the vectorized primitives (`_cdf`, `_sf`, `_pdf`,
    `_quantile`) on arrays already clipped to the support, plus
    `_integrate_dF` for integrals against the measure dF. Everything else
    (order statistics, partial expectations, virtual values, sampling) is
    derived here.
    """

    family: ClassVar[str] = ""

    # ------------------------------------------------------------------
    # support
    # ------------------------------------------------------------------
    @property
    @abstractmethod
    def lower(self) -> float:
        """v̲, the lower support bound"""

    @property
    @abstractmethod
    def upper(self) -> float:
        """v̄, the upper support bound"""

    @abstractmethod
    def params(self) -> List[float]:
        """Parameters in the order used by the JSON tagged record."""

    # ------------------------------------------------------------------
    # vectorized primitives
    # ------------------------------------------------------------------
    @abstractmethod
    def _cdf(self, v: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _sf(self, v: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _pdf(self, v: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _quantile(self, p: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _integrate_dF(self, func: Callable[[float], float], a: float, b: float) -> float:
        """∫ₐᵇ func(x) dF(x) by adaptive quadrature."""

    def _partial_expectation_closed(self, m: int, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """Closed form of ∫ₐᵇ x dF^m when the family has one."""
        return None

    # ------------------------------------------------------------------
    # public API
    # ------------------------------------------------------------------
    def _clip(self, v: ArrayLike) -> tuple[np.ndarray, bool]:
        scalar = np.ndim(v) == 0
        arr = np.clip(np.asarray(v, dtype=float), self.lower, self.upper)
        return arr, scalar

    def cdf(self, v: ArrayLike) -> ArrayLike:
        """F(v); values outside the support clamp to 0 or 1."""
        arr, scalar = self._clip(v)
        return _finish(np.clip(self._cdf(arr), 0.0, 1.0), scalar)

    def sf(self, v: ArrayLike) -> ArrayLike:
        """1 − F(v), computed without cancellation in the upper tail."""
        arr, scalar = self._clip(v)
        return _finish(np.clip(self._sf(arr), 0.0, 1.0), scalar)

    def pdf(self, v: ArrayLike) -> ArrayLike:
        """f(v) on the support, 0 outside."""
        raw = np.asarray(v, dtype=float)
        arr, scalar = self._clip(v)
        inside = (raw >= self.lower) & (raw <= self.upper)
        return _finish(np.where(inside, self._pdf(arr), 0.0), scalar)

    def quantile(self, p: ArrayLike) -> ArrayLike:
        """F⁻¹(p) for p in [0, 1]."""
        scalar = np.ndim(p) == 0
        arr = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
        values = np.clip(self._quantile(arr), self.lower, self.upper)
        return _finish(values, scalar)

    def order_stat_cdf(self, m: int, v: ArrayLike) -> ArrayLike:
        """G(v) = F(v)^m, the CDF of the highest of m rival values; m = 0 gives 1."""
        if m == 0:
            return _finish(np.ones_like(np.asarray(v, dtype=float)), np.ndim(v) == 0)
        cdf = self.cdf(v)
        return cdf**m

    def partial_expectation_dG(self, m: int, a: float, b: float) -> float:
        """
        ∫ₐᵇ x dF(x)^m.

        Closed form where the family provides one, adaptive quadrature otherwise.
        """
        if m == 0 or a == b:
            return 0.0
        closed = self._partial_expectation_closed(m, np.asarray(a, float), np.asarray(b, float))
        if closed is not None:
            return float(closed)
        lo = max(min(a, b), self.lower)
        hi = min(max(a, b), self.upper)
        if hi <= lo:
            return 0.0
        sign = 1.0 if b >= a else -1.0

        def integrand(x: float) -> float:
            return x * m * float(self._cdf(np.asarray(x))) ** (m - 1)

        return sign * self._integrate_dF(integrand, lo, hi)

    def expect(self, func: Callable[[float], float], a: Optional[float] = None, b: Optional[float] = None) -> float:
        """∫ₐᵇ func(x) f(x) dx over a sub-interval of the support (default: all of it)."""
        lo = self.lower if a is None else max(a, self.lower)
        hi = self.upper if b is None else min(b, self.upper)
        if hi <= lo:
            return 0.0
        return self._integrate_dF(func, lo, hi)

    def mean(self) -> float:
        """E[v]."""
        return self.partial_expectation_dG(1, self.lower, self.upper)

    def virtual_value(self, v: ArrayLike) -> ArrayLike:
        """ψ(v) = v − (1 − F(v)) / f(v)."""
        arr, scalar = self._clip(v)
        survival = np.clip(self._sf(arr), 0.0, 1.0)
        density = self._pdf(arr)
        degenerate = (survival > 0.0) & (density < DENSITY_FLOOR)
        if np.any(degenerate):
            idx = int(np.argmax(degenerate))
            raise DegenerateDensityError(float(arr.flat[idx]), float(density.flat[idx]))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(survival > 0.0, survival / np.where(density > 0, density, 1.0), 0.0)
        return _finish(arr - ratio, scalar)

    def check_regular(
        self, a: Optional[float] = None, b: Optional[float] = None, points: int = 257
    ) -> None:
        """
        Raises NonRegularDistributionError when ψ decreases on [a, b].

        The default window runs from the 0.1% to the 99.9% quantile, where the
        density is bounded away from zero for every supported family.
        """
        lo = float(self.quantile(1e-3)) if a is None else max(a, self.lower)
        hi = float(self.quantile(1.0 - 1e-3)) if b is None else min(b, self.upper)
        if hi <= lo:
            return
        grid = np.linspace(lo, hi, points)
        psi = np.asarray(self.virtual_value(grid))
        drops = np.diff(psi) < -1e-9 * np.maximum(1.0, np.abs(psi[:-1]))
        if np.any(drops):
            idx = int(np.argmax(drops))
            raise NonRegularDistributionError(float(grid[idx + 1]))

    def sample(self, rng: np.random.Generator, size: Optional[int | tuple] = None) -> ArrayLike:
        """Inverse-CDF draws using the caller-owned generator."""
        uniforms = rng.random(size)
        return self.quantile(uniforms)

    def order_statistic_integral(self, m: int) -> "OrderStatisticIntegral":
        """Vectorized evaluator of ∫ x dF^m reused across many solver calls."""
        from recurring_auction.distributions.order_statistic_integral import (
            order_statistic_integral,
        )

        return order_statistic_integral(self, m)

    def to_spec(self) -> Dict[str, Any]:
        """Tagged record as used in JSON run configs."""
        return {"family": self.family, "params": [float(p) for p in self.params()]}

    def describe(self) -> str:
        """Short label for logs and CSV headers."""
        params = ", ".join(f"{p:g}" for p in self.params())
        return f"{self.family}({params})"

