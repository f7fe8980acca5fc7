"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Records of the structural model: covariates, hyper-parameters, per-auction
primitives and observed outcomes. Money is in units of 10,000 CNY.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from recurring_auction.distributions import TruncatedLogNormal
from recurring_auction.equilibrium import AuctionPrimitives
from recurring_auction.errors import InvalidParameterError, MalformedObservationError
from recurring_auction.utilities.serialization_utility import SerializableModel

COVARIATE_NAMES = ("constant", "log_assess", "area_100m2", "log_dist")

MU_BOUNDS = (1.0, 7.0)
SIGMA_BOUNDS = (0.01, 3.0)
ENTRY_COST_BOUNDS = (0.0, 15.0)

VALUE_LOWER = 1e-4
VALUE_UPPER = 1200.0
DEFAULT_DELTA = 0.95
DEFAULT_ROUNDS = 3

# relative gap below which a deal price counts as "at the reserve"
RESERVE_MATCH_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Covariates(SerializableModel):
    """X_i without the constant."""

    log_assess: float
    area_100m2: float
    log_dist: float

    def as_array(self) -> np.ndarray:
        return np.array([1.0, self.log_assess, self.area_100m2, self.log_dist])

    @property
    def assessed_price(self) -> float:
        return float(np.exp(self.log_assess))


@dataclass(frozen=True)
class AuctionParams(SerializableModel):
    """Λ_i = (μ, σ, K): the value law TRLN(μ, σ) and the entry cost."""

    mu: float
    sigma: float
    entry_cost: float

    def __post_init__(self) -> None:
        for name, value, (lo, hi) in (
            ("mu", self.mu, MU_BOUNDS),
            ("sigma", self.sigma, SIGMA_BOUNDS),
            ("entry_cost", self.entry_cost, ENTRY_COST_BOUNDS),
        ):
            if not lo <= value <= hi:
                raise InvalidParameterError(name, value, f"{lo} <= {name} <= {hi}")

    def distribution(self) -> TruncatedLogNormal:
        return TruncatedLogNormal(self.mu, self.sigma, VALUE_LOWER, VALUE_UPPER)

    def as_array(self) -> np.ndarray:
        return np.array([self.mu, self.sigma, self.entry_cost])


@dataclass(frozen=True)
class HyperParams(SerializableModel):
    """
    B: linear indices Xβ and scales ω of the truncated-normal laws of μ, σ and K.

    The optimizer works on a 15-vector (the three β's, then log ω's) so the
    scales stay positive.
    """

    beta_mu: Tuple[float, ...]
    omega_mu: float
    beta_sigma: Tuple[float, ...]
    omega_sigma: float
    beta_k: Tuple[float, ...]
    omega_k: float

    def __post_init__(self) -> None:
        for name in ("beta_mu", "beta_sigma", "beta_k"):
            beta = tuple(float(b) for b in getattr(self, name))
            if len(beta) != len(COVARIATE_NAMES):
                raise InvalidParameterError(name, beta, f"{len(COVARIATE_NAMES)} coefficients")
            object.__setattr__(self, name, beta)
        for name in ("omega_mu", "omega_sigma", "omega_k"):
            if not getattr(self, name) > 0:
                raise InvalidParameterError(name, getattr(self, name), f"{name} > 0")

    def to_vector(self) -> np.ndarray:
        return np.concatenate(
            [
                self.beta_mu,
                self.beta_sigma,
                self.beta_k,
                np.log([self.omega_mu, self.omega_sigma, self.omega_k]),
            ]
        )

    @classmethod
    def from_vector(cls, vector: np.ndarray) -> "HyperParams":
        vector = np.asarray(vector, dtype=float)
        if vector.size != 15:
            raise InvalidParameterError("vector", vector.size, "15 entries")
        omegas = np.exp(vector[12:15])
        return cls(
            beta_mu=tuple(vector[0:4]),
            omega_mu=float(omegas[0]),
            beta_sigma=tuple(vector[4:8]),
            omega_sigma=float(omegas[1]),
            beta_k=tuple(vector[8:12]),
            omega_k=float(omegas[2]),
        )

    def linear_index(self, X: np.ndarray) -> np.ndarray:
        """Rows of [Xβ_μ, Xβ_σ, Xβ_K] for a covariate matrix (or one row)."""
        betas = np.array([self.beta_mu, self.beta_sigma, self.beta_k]).T
        return np.asarray(X, dtype=float) @ betas

    @property
    def scales(self) -> np.ndarray:
        return np.array([self.omega_mu, self.omega_sigma, self.omega_k])

    def perturbed(self, rng: np.random.Generator, relative: float) -> "HyperParams":
        """Each coefficient and scale multiplied by 1 + U(−relative, relative)."""
        natural = np.concatenate([self.beta_mu, self.beta_sigma, self.beta_k, self.scales])
        factors = 1.0 + rng.uniform(-relative, relative, natural.size)
        moved = natural * factors
        return HyperParams(
            beta_mu=tuple(moved[0:4]),
            omega_mu=float(moved[12]),
            beta_sigma=tuple(moved[4:8]),
            omega_sigma=float(moved[13]),
            beta_k=tuple(moved[8:12]),
            omega_k=float(moved[14]),
        )

    def fingerprint(self) -> str:
        return hashlib.sha256(np.round(self.to_vector(), 12).tobytes()).hexdigest()[:16]


DEFAULT_TRUE_PARAMS = HyperParams(
    beta_mu=(-0.198, 0.994, -0.036, -0.040),
    omega_mu=0.162,
    beta_sigma=(0.249, -0.028, 0.031, 0.023),
    omega_sigma=0.100,
    beta_k=(-2.971, 0.634, 0.301, -0.260),
    omega_k=0.479,
)


@dataclass(frozen=True)
class AuctionObservation(SerializableModel):
    """
    y_i plus the auction's design: the round of sale (0 when every round failed),
    the deal price, and the entrant count in the round of sale.
    """

    auction_id: str
    round_sold: int
    deal_price: Optional[float]
    entrants: int
    n_buyers: int
    reserves: Tuple[float, ...]
    covariates: Covariates
    delta: float = DEFAULT_DELTA
    extra: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "reserves", tuple(float(r) for r in self.reserves))
        rounds = len(self.reserves)
        if rounds < 1:
            raise MalformedObservationError(self.auction_id, "no reserve prices")
        if self.n_buyers < 1:
            raise MalformedObservationError(self.auction_id, "N must be >= 1")
        if not 0 <= self.round_sold <= rounds:
            raise MalformedObservationError(self.auction_id, f"round_sold outside 0..{rounds}")
        sold = self.round_sold > 0
        if sold != (self.deal_price is not None):
            raise MalformedObservationError(self.auction_id, "deal price must be present iff sold")
        if sold:
            if not 1 <= self.entrants <= self.n_buyers:
                raise MalformedObservationError(self.auction_id, "entrants outside 1..N")
            reserve = self.reserves[self.round_sold - 1]
            if self.deal_price < reserve * (1.0 - RESERVE_MATCH_TOLERANCE) - RESERVE_MATCH_TOLERANCE:
                raise MalformedObservationError(self.auction_id, "deal price below the round's reserve")
        elif self.entrants != 0:
            raise MalformedObservationError(self.auction_id, "an unsold auction has no entrants")

    @property
    def rounds(self) -> int:
        return len(self.reserves)

    @property
    def sold(self) -> bool:
        return self.round_sold > 0

    def at_reserve(self) -> bool:
        """Deal price equal to the round's reserve, up to RESERVE_MATCH_TOLERANCE."""
        if not self.sold:
            return False
        reserve = self.reserves[self.round_sold - 1]
        return abs(self.deal_price - reserve) <= RESERVE_MATCH_TOLERANCE * max(1.0, abs(reserve))

    def primitives(self, params: AuctionParams) -> AuctionPrimitives:
        return AuctionPrimitives(
            dist=params.distribution(),
            n_buyers=self.n_buyers,
            rounds=self.rounds,
            delta=self.delta,
            seller_value=0.0,
            entry_cost=params.entry_cost,
            reserves=self.reserves,
        )
