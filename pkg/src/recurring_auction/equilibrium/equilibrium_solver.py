"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Entry thresholds for given reserve prices.

A guess for the first cutoff is pushed forward through the round-by-round
indifference conditions. Every later cutoff then follows by a monotone
one-dimensional solve. A round whose indifference cannot hold at any lower
cutoff is skipped, and the cutoff carries over. The residual left at the
last round is increasing in the guess, so a grid scan plus Brent refinement
finds every equilibrium. Guesses that make a later round impossible count as
negative, since the first cutoff was too low.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from aws_lambda_powertools import Logger
from scipy import optimize

from recurring_auction.config import SolverConfig, get_config
from recurring_auction.equilibrium.auction_primitives import AuctionPrimitives
from recurring_auction.equilibrium.payoffs import definition_gaps, indifference_residuals
from recurring_auction.equilibrium.threshold_sequence import ThresholdSequence
from recurring_auction.errors import (
    MissingParameterError,
    NoEntryEquilibriumError,
    ShootingBracketError,
)
from recurring_auction.utilities.serialization_utility import SerializableModel

logger = Logger(__name__)

INFEASIBLE = -np.inf
# stand-in for INFEASIBLE inside brentq, which needs finite values
INFEASIBLE_FINITE = -1e6
NEWTON_ITERATIONS = 100


@dataclass(frozen=True)
class EquilibriumSolution(SerializableModel):
    """Thresholds plus the diagnostics of the solve."""

    thresholds: ThresholdSequence
    first_entry_round: int
    candidate_cutoffs: Tuple[float, ...]
    residuals: Tuple[float, ...]
    gaps: Tuple[float, ...]
    non_adjacent_rounds: Tuple[int, ...] = ()

    @property
    def multiple_equilibria(self) -> bool:
        return len(self.candidate_cutoffs) > 1

    @property
    def max_residual(self) -> float:
        active = self.thresholds.active_rounds()
        if not active:
            return 0.0
        return float(max(abs(self.residuals[t - 1]) for t in active))

    def to_dictionary(self) -> Dict[str, Any]:
        return {
            "thresholds": list(self.thresholds.values),
            "skipped_rounds": self.thresholds.skipped_rounds(),
            "first_entry_round": self.first_entry_round,
            "candidate_cutoffs": list(self.candidate_cutoffs),
            "multiple_equilibria": self.multiple_equilibria,
            "max_residual": self.max_residual,
            "non_adjacent_rounds": list(self.non_adjacent_rounds),
        }


def _vector_root(
    func: Callable[[np.ndarray], np.ndarray],
    derivative: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    f_lo: np.ndarray,
    f_hi: np.ndarray,
    xtol: float,
) -> np.ndarray:
    """
    Element-wise root of increasing functions with func(lo) <= 0 < func(hi).

    Newton steps that leave the current bracket fall back to bisection.
    """
    a = lo.copy()
    b = hi.copy()
    span = f_hi - f_lo
    safe_span = np.where(span > 0, span, 1.0)
    x = np.where(span > 0, a - f_lo * (b - a) / safe_span, 0.5 * (a + b))
    x = np.clip(x, a, b)
    for _ in range(NEWTON_ITERATIONS):
        fx = func(x)
        a = np.where(fx <= 0, x, a)
        b = np.where(fx > 0, x, b)
        slope = derivative(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = x - fx / slope
        inside = (slope > 0) & np.isfinite(step) & (step > a) & (step < b)
        x_new = np.where(inside, step, 0.5 * (a + b))
        x_new = np.where(fx == 0, x, x_new)
        done = np.abs(x_new - x) <= xtol * (1.0 + np.abs(x))
        x = x_new
        if np.all(done):
            break
    return x


class _ForwardShooter:
    """Vectorized forward recursion from a first-cutoff guess to the terminal residual."""

    def __init__(self, primitives: AuctionPrimitives, settings: SolverConfig):
        self.primitives = primitives
        self.settings = settings
        self.rounds = primitives.rounds
        self.delta = primitives.delta
        self.entry_cost = primitives.entry_cost
        self.lower = primitives.dist.lower
        self.upper = primitives.dist.upper
        # 1-based: reserves[t] is r_t
        self.reserves = np.concatenate(([np.nan], primitives.reserve_array()))
        self.antiderivative = primitives.integral.antiderivative

    def G(self, v: np.ndarray) -> np.ndarray:  # noqa: N802
        return np.asarray(self.primitives.G(np.asarray(v, dtype=float)), dtype=float)

    def unroll(self, start: int, guesses: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Terminal residuals and threshold paths (n × (T+1)) for first-cutoff
        guesses placed at round `start`; earlier rounds sit at v̄.
        """
        n = guesses.size
        T = self.rounds
        K = self.entry_cost
        paths = np.full((n, T + 1), self.upper)
        paths[:, start] = guesses
        residual = np.full(n, np.nan)
        previous = np.full(n, self.upper)
        current = np.asarray(guesses, dtype=float).copy()
        index = np.full(n, start)
        active = np.ones(n, dtype=bool)

        while np.any(active):
            rows = np.flatnonzero(active)
            cur = current[rows]
            g_cur = self.G(cur)
            lhs = g_cur * (cur - self.reserves[index[rows]]) - K * self.G(previous[rows])

            following = index[rows] + 1
            pending = np.ones(rows.size, dtype=bool)
            to_solve = np.zeros(rows.size, dtype=bool)
            while np.any(pending):
                ended = pending & (following > T)
                if np.any(ended):
                    residual[rows[ended]] = lhs[ended]
                    active[rows[ended]] = False
                    pending &= ~ended
                if not np.any(pending):
                    break
                sel = np.flatnonzero(pending)
                gap = following[sel] - index[rows[sel]]
                top = self.delta**gap * g_cur[sel] * (
                    cur[sel] - self.reserves[following[sel]] - K
                )
                skip = lhs[sel] >= top
                skipped = sel[skip]
                paths[rows[skipped], following[skipped]] = cur[skipped]
                following[skipped] += 1
                stop = sel[~skip]
                to_solve[stop] = True
                pending[stop] = False

            sel = np.flatnonzero(to_solve)
            if sel.size == 0:
                continue
            self._advance(
                rows[sel],
                cur[sel],
                g_cur[sel],
                lhs[sel],
                following[sel],
                index,
                previous,
                current,
                paths,
                residual,
                active,
            )
        return residual, paths

    def _advance(
        self,
        rows: np.ndarray,
        cur: np.ndarray,
        g_cur: np.ndarray,
        lhs: np.ndarray,
        following: np.ndarray,
        index: np.ndarray,
        previous: np.ndarray,
        current: np.ndarray,
        paths: np.ndarray,
        residual: np.ndarray,
        active: np.ndarray,
    ) -> None:
        """Solve the next cutoff for rows whose next active round is `following`."""
        K = self.entry_cost
        discount = self.delta ** (following - index[rows])
        reserve = self.reserves[following]
        low = np.minimum(np.maximum(reserve, self.lower), cur)
        j_cur = self.antiderivative(cur)

        def waiting_value(u, disc, g_c, c, j_c, r):
            return disc * (g_c * (c - K) - (j_c - self.antiderivative(u)) - r * self.G(u))

        f_low = waiting_value(low, discount, g_cur, cur, j_cur, reserve) - lhs
        infeasible = f_low > 0
        if np.any(infeasible):
            residual[rows[infeasible]] = INFEASIBLE
            active[rows[infeasible]] = False
        ok = ~infeasible
        if not np.any(ok):
            return

        rows, cur, g_cur, lhs = rows[ok], cur[ok], g_cur[ok], lhs[ok]
        following, discount, reserve = following[ok], discount[ok], reserve[ok]
        low, j_cur, f_low = low[ok], j_cur[ok], f_low[ok]
        f_high = discount * g_cur * (cur - reserve - K) - lhs

        def func(u: np.ndarray) -> np.ndarray:
            return waiting_value(u, discount, g_cur, cur, j_cur, reserve) - lhs

        def derivative(u: np.ndarray) -> np.ndarray:
            return discount * (u - reserve) * np.asarray(self.primitives.g(u), dtype=float)

        roots = _vector_root(func, derivative, low, cur, f_low, f_high, self.settings.root_xtol)
        paths[rows, following] = roots
        previous[rows] = cur
        current[rows] = roots
        index[rows] = following

    def residual_at(self, start: int, guess: float) -> Tuple[float, np.ndarray]:
        residual, paths = self.unroll(start, np.array([guess], dtype=float))
        return float(residual[0]), paths[0]


class EquilibriumSolver:
    """Symmetric threshold equilibrium for one environment with fixed reserves."""

    def __init__(self, primitives: AuctionPrimitives, settings: Optional[SolverConfig] = None):
        if not primitives.has_reserves:
            raise MissingParameterError("reserves", "Equilibrium solving needs r_1..r_T")
        self.primitives = primitives
        self.settings = settings or get_config().solver

    # ------------------------------------------------------------------
    def solve(self) -> EquilibriumSolution:
        if self.primitives.n_buyers == 1:
            return self._finish(self._solve_single_buyer(), [])
        shooter = _ForwardShooter(self.primitives, self.settings)
        dist = self.primitives.dist
        probabilities = np.linspace(0.0, 1.0, self.settings.grid_points + 1)
        guesses = np.unique(np.asarray(dist.quantile(probabilities), dtype=float))

        for start in range(1, self.primitives.rounds + 1):
            residual, paths = shooter.unroll(start, guesses)
            roots = self._roots(shooter, start, guesses, residual, paths)
            if roots:
                roots.sort(key=lambda item: item[0])
                cutoffs = [root for root, _ in roots]
                if len(roots) > 1:
                    logger.warning(
                        {
                            "message": "multiple equilibria; keeping the largest first cutoff",
                            "first_round": start,
                            "candidates": cutoffs,
                        }
                    )
                return self._finish(ThresholdSequence(tuple(roots[-1][1])), cutoffs)
            if np.all(residual > 0):
                corner = [self.primitives.dist.upper] * start + [dist.lower] * (
                    self.primitives.rounds - start + 1
                )
                logger.info({"message": "every type enters immediately", "round": start})
                return self._finish(ThresholdSequence(tuple(corner)), [dist.lower], corner=True)
            logger.debug({"message": "round draws no entrants", "round": start})

        thresholds = ThresholdSequence.no_entry(dist, self.primitives.rounds)
        raise NoEntryEquilibriumError(thresholds.values)

    # ------------------------------------------------------------------
    def _roots(
        self,
        shooter: _ForwardShooter,
        start: int,
        guesses: np.ndarray,
        residual: np.ndarray,
        paths: np.ndarray,
    ) -> List[Tuple[float, np.ndarray]]:
        found: List[Tuple[float, np.ndarray]] = []
        for i in np.flatnonzero(residual == 0.0):
            found.append((float(guesses[i]), paths[i].copy()))
        signs = np.sign(residual)
        changes = np.flatnonzero(signs[:-1] * signs[1:] < 0)
        for i in changes:
            refined = self._refine(
                shooter, start, guesses[i], guesses[i + 1], residual[i], residual[i + 1]
            )
            if refined is not None:
                found.append(refined)
        return found

    def _refine(
        self,
        shooter: _ForwardShooter,
        start: int,
        a: float,
        b: float,
        fa: float,
        fb: float,
    ) -> Optional[Tuple[float, np.ndarray]]:
        tolerance = self.settings.residual_tolerance
        while not (np.isfinite(fa) and np.isfinite(fb)):
            if b - a <= self.settings.bisection_xtol * max(1.0, abs(b)):
                return None
            mid = 0.5 * (a + b)
            fm, path = shooter.residual_at(start, mid)
            if fm == 0.0:
                return mid, path
            if np.sign(fm) == np.sign(fa):
                a, fa = mid, fm
            else:
                b, fb = mid, fm

        def objective(x: float) -> float:
            value, _ = shooter.residual_at(start, x)
            return value if np.isfinite(value) else INFEASIBLE_FINITE

        root = optimize.brentq(objective, a, b, xtol=self.settings.root_xtol, maxiter=200)
        value, path = shooter.residual_at(start, root)
        if not abs(value) < tolerance:
            logger.debug(
                {"message": "discarding bracket", "bracket": [a, b], "residual": value}
            )
            return None
        return float(root), path

    def _solve_single_buyer(self) -> ThresholdSequence:
        """
        With one buyer there is no competition; Π_t(v) = δ^(t−1)(v − r_t − K).
        The buyer has entered by round t iff the best of rounds 1..t beats
        both later rounds and staying out, which is monotone in v.
        """
        p = self.primitives
        dist = p.dist
        reserves = p.reserve_array()
        discounts = p.delta ** np.arange(p.rounds)

        def gain(v: float, t: int) -> float:
            payoffs = discounts * (v - reserves - p.entry_cost)
            later = max(0.0, float(np.max(payoffs[t:]))) if t < p.rounds else 0.0
            return float(np.max(payoffs[:t])) - later

        cutoffs = []
        for t in range(1, p.rounds + 1):
            if gain(dist.lower, t) >= 0:
                cutoffs.append(dist.lower)
            elif gain(dist.upper, t) < 0:
                cutoffs.append(dist.upper)
            else:
                cutoffs.append(
                    optimize.brentq(
                        lambda v: gain(v, t), dist.lower, dist.upper, xtol=self.settings.root_xtol
                    )
                )
        cutoffs = list(np.minimum.accumulate(cutoffs))
        if all(c >= dist.upper for c in cutoffs):
            raise NoEntryEquilibriumError(ThresholdSequence.no_entry(dist, p.rounds).values)
        return ThresholdSequence.from_cutoffs(dist, cutoffs)

    def _finish(
        self, thresholds: ThresholdSequence, candidates: List[float], corner: bool = False
    ) -> EquilibriumSolution:
        tolerance = self.settings.residual_tolerance
        residuals = indifference_residuals(thresholds, self.primitives)
        gaps = definition_gaps(thresholds, self.primitives)
        active = thresholds.active_rounds()
        first = active[0] if active else self.primitives.rounds

        if self.primitives.n_buyers > 1 and not corner:
            worst = max((abs(residuals[t - 1]) for t in active), default=0.0)
            if worst > tolerance:
                raise ShootingBracketError(
                    "Equilibrium indifference residual above tolerance",
                    {"thresholds": list(thresholds.values), "residuals": residuals},
                )

        flagged = []
        for t in range(1, thresholds.rounds + 1):
            gap = gaps[t - 1]
            if (t in active and gap < -tolerance) or (t not in active and gap > tolerance):
                flagged.append(t)
        if flagged:
            logger.warning(
                {
                    "message": "a non-adjacent entry round is preferred at some cutoff",
                    "rounds": flagged,
                    "gaps": gaps,
                }
            )

        if not candidates:
            candidates = [thresholds[first]]
        logger.debug(
            {
                "message": "equilibrium solved",
                "environment": self.primitives.dist.describe(),
                "thresholds": list(thresholds.values),
            }
        )
        return EquilibriumSolution(
            thresholds=thresholds,
            first_entry_round=first,
            candidate_cutoffs=tuple(float(c) for c in candidates),
            residuals=tuple(residuals),
            gaps=tuple(gaps),
            non_adjacent_rounds=tuple(flagged),
        )


def solve_equilibrium(
    primitives: AuctionPrimitives, settings: Optional[SolverConfig] = None
) -> EquilibriumSolution:
    """Thresholds and diagnostics for `primitives` (reserves required)."""
    return EquilibriumSolver(primitives, settings).solve()


def solve_thresholds(
    primitives: AuctionPrimitives, settings: Optional[SolverConfig] = None
) -> ThresholdSequence:
    """
    Equilibrium thresholds v*_0..v*_T.

    Raises:
        NoEntryEquilibriumError: no buyer type ever enters; `.thresholds` holds all-v̄.
        ShootingBracketError: the refined root fails the residual tolerance.
    """
    return solve_equilibrium(primitives, settings).thresholds
