"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Truncated normal and truncated log-normal families.

Both are handled in the standard-normal coordinate z of the untruncated law,
where the density is a renormalized Gaussian and every integral is smooth.
"""

from __future__ import annotations

from abc import abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List

import numpy as np
from scipy import special

from recurring_auction.distributions.value_distribution import ValueDistribution, adaptive_quad
from recurring_auction.errors import InvalidParameterError

MIN_TRUNCATED_MASS = 1e-12
# Gaussian weight beyond |z| = 12 is below 1e-32
Z_CUTOFF = 12.0


class _GaussianCoordinateFamily(ValueDistribution):
    """Shared machinery for laws that are monotone transforms of a truncated Gaussian."""

    mu: float
    sigma: float
    lo: float
    hi: float

    def _validate(self, name: str) -> None:
        if not np.isfinite(self.mu):
            raise InvalidParameterError(f"{name}.mu", self.mu, "finite")
        if not np.isfinite(self.sigma) or self.sigma <= 0:
            raise InvalidParameterError(f"{name}.sigma", self.sigma, "sigma > 0")
        if not self.lo < self.hi:
            raise InvalidParameterError(f"{name}.bounds", (self.lo, self.hi), "lo < hi")
        if self.mass < MIN_TRUNCATED_MASS:
            raise InvalidParameterError(
                f"{name}.bounds",
                (self.lo, self.hi),
                f"truncated mass >= {MIN_TRUNCATED_MASS:g}",
                message=f"Truncation interval carries mass {self.mass:.3e}",
            )

    @abstractmethod
    def to_z(self, x: np.ndarray) -> np.ndarray:
        """Value to standard-normal coordinate."""

    @abstractmethod
    def from_z(self, z: np.ndarray) -> np.ndarray:
        """Standard-normal coordinate to value."""

    @abstractmethod
    def dx_dz(self, z: np.ndarray) -> np.ndarray:
        """Jacobian of from_z."""

    @property
    def lower(self) -> float:
        return float(self.lo)

    @property
    def upper(self) -> float:
        return float(self.hi)

    def params(self) -> List[float]:
        return [self.mu, self.sigma, self.lo, self.hi]

    @cached_property
    def z_lower(self) -> float:
        return float(self.to_z(np.asarray(self.lo, dtype=float)))

    @cached_property
    def z_upper(self) -> float:
        return float(self.to_z(np.asarray(self.hi, dtype=float)))

    @cached_property
    def mass(self) -> float:
        """Φ(z̄) − Φ(z̲), computed on the side of zero that avoids cancellation."""
        za, zb = self.z_lower, self.z_upper
        if za > 0:
            return float(special.ndtr(-za) - special.ndtr(-zb))
        return float(special.ndtr(zb) - special.ndtr(za))

    def _cdf_z(self, z: np.ndarray) -> np.ndarray:
        za, zb, mass = self.z_lower, self.z_upper, self.mass
        lower_form = (special.ndtr(z) - special.ndtr(za)) / mass
        upper_form = 1.0 - (special.ndtr(-z) - special.ndtr(-zb)) / mass
        return np.where(z <= 0, lower_form, upper_form)

    def _sf_z(self, z: np.ndarray) -> np.ndarray:
        za, zb, mass = self.z_lower, self.z_upper, self.mass
        upper_form = (special.ndtr(-z) - special.ndtr(-zb)) / mass
        lower_form = 1.0 - (special.ndtr(z) - special.ndtr(za)) / mass
        return np.where(z > 0, upper_form, lower_form)

    def _cdf(self, v: np.ndarray) -> np.ndarray:
        return self._cdf_z(self.to_z(v))

    def _sf(self, v: np.ndarray) -> np.ndarray:
        return self._sf_z(self.to_z(v))

    def _pdf(self, v: np.ndarray) -> np.ndarray:
        z = self.to_z(v)
        return np.exp(-0.5 * z * z) / np.sqrt(2.0 * np.pi) / (self.mass * self.dx_dz(z))

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        za, zb, mass = self.z_lower, self.z_upper, self.mass
        with np.errstate(divide="ignore", invalid="ignore"):
            lower_form = special.ndtri(np.clip(special.ndtr(za) + p * mass, 0.0, 1.0))
            upper_form = -special.ndtri(np.clip(special.ndtr(-zb) + (1.0 - p) * mass, 0.0, 1.0))
        z = np.where(p <= 0.5, lower_form, upper_form)
        return self.from_z(np.clip(z, za, zb))

    def integration_window(self, a: float, b: float) -> tuple[float, float]:
        """[a, b] in z, cut to where the Gaussian weight is non-negligible."""
        za = max(float(self.to_z(np.asarray(a, dtype=float))), -Z_CUTOFF)
        zb = min(float(self.to_z(np.asarray(b, dtype=float))), Z_CUTOFF)
        return za, zb

    def _integrate_dF(self, func: Callable[[float], float], a: float, b: float) -> float:
        za, zb = self.integration_window(a, b)
        if zb <= za:
            return 0.0
        norm = np.sqrt(2.0 * np.pi) * self.mass

        def integrand(z: float) -> float:
            return func(float(self.from_z(np.asarray(z)))) * np.exp(-0.5 * z * z) / norm

        return adaptive_quad(integrand, za, zb, points=[0.0, self.sigma])


@dataclass(frozen=True)
class TruncatedNormal(_GaussianCoordinateFamily):
    """N(mu, sigma²) truncated to [lo, hi]."""

    mu: float
    sigma: float
    lo: float
    hi: float

    family = "trn"

    def __post_init__(self) -> None:
        self._validate("trn")

    def to_z(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mu) / self.sigma

    def from_z(self, z: np.ndarray) -> np.ndarray:
        return self.mu + self.sigma * z

    def dx_dz(self, z: np.ndarray) -> np.ndarray:
        return np.full_like(np.asarray(z, dtype=float), self.sigma)


@dataclass(frozen=True)
class TruncatedLogNormal(_GaussianCoordinateFamily):
    """exp(N(mu, sigma²)) truncated to [lo, hi], lo > 0."""

    mu: float
    sigma: float
    lo: float = 1e-4
    hi: float = 1200.0

    family = "trln"

    def __post_init__(self) -> None:
        if not self.lo > 0:
            raise InvalidParameterError("trln.lo", self.lo, "lo > 0")
        self._validate("trln")

    def to_z(self, x: np.ndarray) -> np.ndarray:
        return (np.log(x) - self.mu) / self.sigma

    def from_z(self, z: np.ndarray) -> np.ndarray:
        return np.exp(self.mu + self.sigma * z)

    def dx_dz(self, z: np.ndarray) -> np.ndarray:
        return self.sigma * self.from_z(z)
