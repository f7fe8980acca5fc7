"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Surplus- and profit-maximizing threshold sequences.

For t < T the first-order condition is linear in F(v*_(t+1)), so a guess for
v*_1 unrolls the whole sequence in closed form:

    F(v*_(t+1)) = b [(1−δ)(h(v*_t) − v_s) + δNK − (a/b)^(N−1) K] / (δ(N−1)K)

with a = F(v*_(t−1)), b = F(v*_t), and h the identity (surplus) or the
virtual value (profit). The last-round condition (a/b)^(N−1) K = h(v*_T) − v_s
is the shooting residual, which falls as v*_1 rises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from aws_lambda_powertools import Logger
from scipy import optimize

from recurring_auction.config import SolverConfig, get_config
from recurring_auction.distributions.value_distribution import DENSITY_FLOOR
from recurring_auction.equilibrium import (
    AuctionPrimitives,
    ThresholdSequence,
    reserves_from_thresholds,
)
from recurring_auction.errors import DesignBracketError, InvalidParameterError
from recurring_auction.outcomes import expected_surplus, revenue_at_recovered_reserves
from recurring_auction.utilities.numbers_utility import NumberUtility
from recurring_auction.utilities.serialization_utility import SerializableModel

logger = Logger(__name__)

Objective = Literal["efficiency", "revenue"]
OBJECTIVES = ("efficiency", "revenue")
# finite stand-in for an infeasible unroll inside brentq
INFEASIBLE_FINITE = 1e6


@dataclass(frozen=True)
class DesignResult(SerializableModel):
    """Optimal thresholds, the reserves that induce them, and the FOC residuals."""

    objective: str
    thresholds: ThresholdSequence
    reserves: Tuple[float, ...]
    objective_value: float
    foc_residuals: Tuple[float, ...]
    candidates: Tuple[float, ...] = ()

    @property
    def max_foc_residual(self) -> float:
        return float(max((abs(r) for r in self.foc_residuals), default=0.0))

    def to_dictionary(self) -> Dict[str, Any]:
        return {
            "objective": self.objective,
            "thresholds": list(self.thresholds.values),
            "reserves": list(self.reserves),
            "objective_value": self.objective_value,
            "foc_residuals": list(self.foc_residuals),
            "max_foc_residual": self.max_foc_residual,
        }

    def to_row(self) -> Dict[str, str]:
        row = {"objective": self.objective, "objective_value": NumberUtility.to_significant_digits(self.objective_value)}
        for t, value in enumerate(self.thresholds.values[1:], start=1):
            row[f"threshold_{t}"] = NumberUtility.to_significant_digits(value)
        for t, value in enumerate(self.reserves, start=1):
            row[f"reserve_{t}"] = NumberUtility.to_significant_digits(value)
        return row


def objective_transform(primitives: AuctionPrimitives, objective: Objective, v: np.ndarray) -> np.ndarray:
    """h(v): v itself, or ψ(v) with NaN where the density is too thin to divide by."""
    v = np.asarray(v, dtype=float)
    if objective == "efficiency":
        return v
    dist = primitives.dist
    density = np.asarray(dist.pdf(v), dtype=float)
    survival = np.asarray(dist.sf(v), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        psi = v - survival / density
    psi = np.where(survival <= 0.0, v, psi)
    return np.where((density < DENSITY_FLOOR) & (survival > 0.0), np.nan, psi)


def foc_residuals(
    thresholds: ThresholdSequence, primitives: AuctionPrimitives, objective: Objective
) -> List[float]:
    """
    First-order conditions of the design problem, one per round:

        t < T: [(a/b)^(N−1) − δ (N b − (N−1) c)/b] K − (1−δ)(h(v*_t) − v_s)
        t = T: (a/b)^(N−1) K − (h(v*_T) − v_s)

    with a, b, c the CDF at v*_(t−1), v*_t, v*_(t+1).
    """
    N, K, delta, vs = primitives.n_buyers, primitives.entry_cost, primitives.delta, primitives.seller_value
    F = np.asarray(primitives.dist.cdf(thresholds.as_array()), dtype=float)
    h = objective_transform(primitives, objective, thresholds.as_array())
    T = thresholds.rounds
    residuals = []
    for t in range(1, T + 1):
        a, b = F[t - 1], F[t]
        ratio = (a / b) ** (N - 1) if b > 0 else np.inf
        if t < T:
            c = F[t + 1]
            value = (ratio - delta * (N * b - (N - 1) * c) / b) * K - (1 - delta) * (h[t] - vs)
        else:
            value = ratio * K - (h[t] - vs)
        residuals.append(float(value))
    return residuals


class _DesignShooter:
    def __init__(self, primitives: AuctionPrimitives, objective: Objective):
        self.primitives = primitives
        self.objective = objective

    def unroll(self, first: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Terminal residuals and threshold paths for first-cutoff guesses.

        Guesses that push F(v*_(t+1)) to 0 or below get +inf (v*_1 too low);
        guesses that push it to F(v*_t) or above get −inf (v*_1 too high).
        """
        p = self.primitives
        dist = p.dist
        N, K, delta, vs, T = p.n_buyers, p.entry_cost, p.delta, p.seller_value, p.rounds
        n = first.size
        paths = np.full((n, T + 1), dist.upper)
        paths[:, 1] = first
        residual = np.full(n, np.nan)
        alive = np.ones(n, dtype=bool)
        a = np.ones(n)
        b = np.asarray(dist.cdf(first), dtype=float)
        alive &= b > 0
        residual[~alive] = np.inf

        for t in range(1, T):
            h = objective_transform(p, self.objective, paths[:, t])
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(b > 0, (a / np.where(b > 0, b, 1.0)) ** (N - 1), np.inf)
                c = b * ((1 - delta) * (h - vs) + delta * N * K - ratio * K) / (delta * (N - 1) * K)
            undefined = alive & ~np.isfinite(c)
            residual[undefined] = np.nan
            alive &= ~undefined
            too_low = alive & (c <= 0.0)
            too_high = alive & (c >= b)
            residual[too_low] = np.inf
            residual[too_high] = -np.inf
            alive &= ~(too_low | too_high)
            paths[alive, t + 1] = np.asarray(dist.quantile(c[alive]), dtype=float)
            a = np.where(alive, b, a)
            b = np.where(alive, c, b)

        h_last = objective_transform(p, self.objective, paths[:, T])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = (a / b) ** (N - 1)
        residual[alive] = (ratio * K - (h_last - vs))[alive]
        return residual, paths


class RecurringAuctionDesigner:
    """Chooses thresholds, then recovers the reserves that implement them."""

    def __init__(
        self,
        primitives: AuctionPrimitives,
        objective: Objective,
        settings: Optional[SolverConfig] = None,
    ):
        if objective not in OBJECTIVES:
            raise InvalidParameterError("objective", objective, "efficiency or revenue")
        self.primitives = primitives.without_reserves()
        self.objective = objective
        self.settings = settings or get_config().solver

    def evaluate(self, thresholds: ThresholdSequence) -> float:
        if self.objective == "efficiency":
            return expected_surplus(thresholds, self.primitives)
        return revenue_at_recovered_reserves(thresholds, self.primitives)

    def design(self) -> DesignResult:
        if self.objective == "revenue":
            self.primitives.dist.check_regular()
        if self.primitives.n_buyers == 1:
            thresholds = self._single_buyer()
            return self._result(thresholds, [thresholds[1]], strict=False)

        dist = self.primitives.dist
        shooter = _DesignShooter(self.primitives, self.objective)
        probabilities = np.linspace(0.0, 1.0, self.settings.grid_points + 1)[1:]
        guesses = np.unique(np.asarray(dist.quantile(probabilities), dtype=float))
        residual, paths = shooter.unroll(guesses)

        candidates: List[ThresholdSequence] = []
        for i in np.flatnonzero(residual == 0.0):
            candidates.append(ThresholdSequence(tuple(paths[i])))
        signs = np.sign(residual)
        for i in np.flatnonzero(signs[:-1] * signs[1:] < 0):
            found = self._refine(shooter, guesses[i], guesses[i + 1], residual[i], residual[i + 1])
            if found is not None:
                candidates.append(found)

        if not candidates:
            raise DesignBracketError(
                self.objective,
                {
                    "grid_points": int(guesses.size),
                    "finite_residuals": int(np.isfinite(residual).sum()),
                    "positive": int((residual > 0).sum()),
                    "negative": int((residual < 0).sum()),
                },
            )
        values = [self.evaluate(c) for c in candidates]
        best = candidates[int(np.argmax(values))]
        if len(candidates) > 1:
            logger.warning(
                {
                    "message": "several stationary threshold sequences; keeping the best",
                    "objective": self.objective,
                    "values": values,
                }
            )
        return self._result(best, [c[1] for c in candidates], strict=True)

    def _refine(
        self, shooter: _DesignShooter, a: float, b: float, fa: float, fb: float
    ) -> Optional[ThresholdSequence]:
        while not (np.isfinite(fa) and np.isfinite(fb)):
            if b - a <= self.settings.bisection_xtol * max(1.0, abs(b)):
                return None
            mid = 0.5 * (a + b)
            fm = float(shooter.unroll(np.array([mid]))[0][0])
            if np.isnan(fm):
                return None
            if fm == 0.0:
                a = b = mid
                break
            if np.sign(fm) == np.sign(fa):
                a, fa = mid, fm
            else:
                b, fb = mid, fm

        def objective(x: float) -> float:
            value = float(shooter.unroll(np.array([x]))[0][0])
            if np.isnan(value):
                return 0.0
            return float(np.clip(value, -INFEASIBLE_FINITE, INFEASIBLE_FINITE))

        root = a if a == b else optimize.brentq(objective, a, b, xtol=self.settings.root_xtol, maxiter=200)
        residual, paths = shooter.unroll(np.array([root]))
        if not abs(residual[0]) < self.settings.residual_tolerance:
            logger.debug({"message": "discarding design bracket", "bracket": [a, b], "residual": float(residual[0])})
            return None
        return ThresholdSequence(tuple(paths[0]))

    def _single_buyer(self) -> ThresholdSequence:
        """With N = 1 every round's condition reads h(v) = v_s + K."""
        p = self.primitives
        dist = p.dist
        target = p.seller_value + p.entry_cost

        def gap(v: float) -> float:
            return float(objective_transform(p, self.objective, np.asarray(v))) - target

        lo = float(dist.quantile(1e-12))
        if gap(lo) >= 0.0:
            cutoff = dist.lower
        else:
            cutoff = float(optimize.brentq(gap, lo, dist.upper, xtol=self.settings.root_xtol))
        return ThresholdSequence.from_cutoffs(dist, [cutoff] * p.rounds)

    def _result(self, thresholds: ThresholdSequence, candidates: List[float], strict: bool) -> DesignResult:
        if strict and not thresholds.is_strictly_decreasing():
            raise DesignBracketError(
                self.objective,
                {"thresholds": list(thresholds.values), "reason": "thresholds not strictly decreasing"},
            )
        residuals = foc_residuals(thresholds, self.primitives, self.objective)
        if strict and max(abs(r) for r in residuals) > self.settings.residual_tolerance:
            raise DesignBracketError(
                self.objective, {"thresholds": list(thresholds.values), "foc_residuals": residuals}
            )
        reserves = reserves_from_thresholds(thresholds, self.primitives)
        result = DesignResult(
            objective=self.objective,
            thresholds=thresholds,
            reserves=tuple(float(r) for r in reserves),
            objective_value=self.evaluate(thresholds),
            foc_residuals=tuple(residuals),
            candidates=tuple(float(c) for c in candidates),
        )
        logger.debug({"message": "design solved", "result": result.to_dictionary()})
        return result


def efficient_design(
    primitives: AuctionPrimitives, settings: Optional[SolverConfig] = None
) -> DesignResult:
    """Surplus-maximizing thresholds and reserves; any reserves on `primitives` are ignored."""
    return RecurringAuctionDesigner(primitives, "efficiency", settings).design()


def revenue_design(
    primitives: AuctionPrimitives, settings: Optional[SolverConfig] = None
) -> DesignResult:
    """
    Profit-maximizing thresholds and reserves.

    Raises:
        NonRegularDistributionError: ψ is not increasing.
    """
    return RecurringAuctionDesigner(primitives, "revenue", settings).design()
