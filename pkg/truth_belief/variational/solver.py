"""Projected gradient descent for ``min_y Phi_q(x, y)`` on the simplex.

The search runs on the face of the simplex spanned by support(x); mass off
the support is fixed at zero. The gradient is scaled by the inverse of the
(diagonal) curvature of Phi, shifted so the step keeps the total mass, and
the step is projected back onto the simplex. Steps are accepted by an Armijo
test (monotone, shrink by `backtrack_factor`). Near the minimum the scaled
step is close to ``x - y``, so its length measures the distance to the truth
whatever the conditioning of x.

The Armijo test compares the excess ``Phi_q(x, y) - H_q(x)`` written per
coordinate as ``x^q g(ln(y/x))`` with g >= 0, g(0) = 0; on the simplex this
equals the divergence and it stays accurate far below the round-off floor of
Phi itself, so descent can be certified all the way to the tolerances.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from ..dist import Distribution, make_distribution, random_distribution, same_alphabet
from ..exceptions import DomainError
from ..qcore import BRANCH_WINDOW, QLike, QParam, as_qparam
from ..quantities import complexity, entropy
from .config import RANDOM_ON_SUPPORT, UNIFORM_ON_SUPPORT, SolverConfig, SolverResult
from .gradient import excess_gradient
from .projection import project_simplex

logger = logging.getLogger(__name__)

INTERIOR_FLOOR = 1e-15
MIN_TRIAL_STEP = 1e-30
SPECTRAL_STEP_BOUNDS = (1e-12, 1e12)
LOG_EVERY = 1000
CURVATURE_FLOOR = 1.0
STALL_SLACK = 100.0


def excess_terms(q: float, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Per-coordinate ``Phi - H`` on the support face; each term is >= 0."""
    if q == 0.0:
        return np.where(ys > 0.0, 0.0, math.inf)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        s = np.log1p((ys - xs) / xs)
        near = np.abs(s) <= 1.0
        if abs(q - 1.0) < BRANCH_WINDOW:
            local = xs * (np.expm1(s) - s)
            direct = ys - xs - xs * s
        else:
            a = 1.0 - q
            local = np.power(xs, q) * (q * np.expm1(-a * s) + a * np.expm1(q * s)) / a
            direct = (q * xs * np.power(ys, -a) + a * np.power(ys, q) - np.power(xs, q)) / a
        terms = np.where(near, local, direct)
    terms = np.where(np.isnan(terms), math.inf, terms)
    return np.maximum(terms, 0.0)


def excess(q: float, xs: np.ndarray, ys: np.ndarray) -> float:
    terms = excess_terms(q, xs, ys)
    if np.isinf(terms).any():
        return math.inf
    return math.fsum(terms)


def _initial_point(config: SolverConfig, x: Distribution, support: np.ndarray) -> np.ndarray:
    k = support.size
    start = config.initial_point
    if isinstance(start, Distribution):
        same_alphabet(x, start)
        ys = start.probs[support]
        if np.any(ys <= 0.0):
            raise DomainError("the initial point must be positive on support(x)")
        return ys / math.fsum(ys)
    if start == RANDOM_ON_SUPPORT:
        return random_distribution(k, config.seed).probs.copy()
    if start == UNIFORM_ON_SUPPORT:
        return np.full(k, 1.0 / k)
    raise DomainError(f"unknown initial point {start!r}")


def _lift(x: Distribution, support: np.ndarray, ys: np.ndarray) -> Distribution:
    full = np.zeros(len(x))
    full[support] = ys
    return make_distribution(x.alphabet, full, normalize=True)


def _first_order_residual(q: float, xs: np.ndarray, ys: np.ndarray) -> float:
    g = excess_gradient(q, xs, ys)
    if not np.all(np.isfinite(g)):
        return math.inf
    return float(np.max(np.abs(g - g.mean())))


def step_weights(q: float, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Inverse curvature of the excess along each coordinate.

    The second derivative is ``q y^(q-2) c`` with
    ``c = ((2-q) x + (q-1) y) / y``, which equals 1 at y = x and can turn
    negative far from it; c is floored at `CURVATURE_FLOOR`.
    """
    curvature = ((2.0 - q) * xs + (q - 1.0) * ys) / ys
    return np.power(ys, 2.0 - q) / (q * np.maximum(curvature, CURVATURE_FLOOR))


def scaled_direction(g: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """``-W (g - lam)`` with lam chosen so the components sum to zero."""
    shift = math.fsum(weights * g) / math.fsum(weights)
    return -weights * (g - shift)


def _finish(
    q: QParam,
    config: SolverConfig,
    x: Distribution,
    support: np.ndarray,
    ys: np.ndarray,
    iterations: int,
    converged: bool,
    status: str,
    trace: List[float],
    min_coordinate: float,
) -> SolverResult:
    minimizer = _lift(x, support, ys)
    value = float(complexity(q, x, minimizer))
    gap = value - entropy(q, x)
    if converged and not abs(gap) <= config.value_tolerance:
        converged = False
        status = f"{status}, value gap {gap!r} above tolerance"
    result = SolverResult(
        minimizer=minimizer,
        minimum_value=value,
        iterations_used=iterations,
        converged=converged,
        first_order_residual=_first_order_residual(q.q, x.probs[support], ys),
        degenerate_minimum=q.q == 0.0,
        status=status,
        objective_trace=tuple(trace),
        min_coordinate=min_coordinate,
    )
    if converged:
        logger.info(
            "q=%r: %s after %d iterations, value=%r", q.q, status, iterations, value
        )
    else:
        logger.warning("q=%r: no convergence (%s) after %d iterations", q.q, status, iterations)
    return result


def minimize_complexity(
    q: QLike, x: Distribution, config: Optional[SolverConfig] = None
) -> SolverResult:
    """Minimise Phi_q(x, .) over beliefs supported on support(x).

    Returns ``converged=False`` with diagnostics when the iteration budget
    runs out or the line search cannot find descent; it never substitutes
    the known minimiser. At q = 0 the objective is constant on the open
    face over support(x), so the start point is returned as a degenerate
    minimum.
    """
    q = as_qparam(q)
    config = config or SolverConfig()
    support = x.support
    xs = x.probs[support]
    k = support.size

    ys = _initial_point(config, x, support)

    def finish(ys: np.ndarray, iterations: int, converged: bool, status: str) -> SolverResult:
        return _finish(q, config, x, support, ys, iterations, converged, status, trace, min_coordinate)

    trace: List[float] = [0.0]
    min_coordinate = float(ys.min())
    if k == 1:
        return finish(np.ones(1), 0, True, "point mass")
    if q.q == 0.0:
        return finish(ys, 0, True, "degenerate minimum")

    floor = min(INTERIOR_FLOOR, 0.5 * float(xs.min()))
    f = excess(q.q, xs, ys)
    trace = [f]
    if not math.isfinite(f):
        return finish(ys, 0, False, "infinite start value")
    g = excess_gradient(q.q, xs, ys)
    weights = step_weights(q.q, xs, ys)
    step = config.initial_step

    for iteration in range(1, config.max_iterations + 1):
        direction = scaled_direction(g, weights)
        mapping = float(np.max(np.abs(direction)))
        if mapping <= config.step_tolerance:
            return finish(ys, iteration - 1, True, "stationary")

        t = step
        accepted = None
        while t >= MIN_TRIAL_STEP:
            candidate = project_simplex(ys + t * direction)
            if candidate.min() >= floor:
                f_new = excess(q.q, xs, candidate)
                slope = float(g @ (candidate - ys))
                if f_new < f and f_new <= f + config.armijo_slope * slope:
                    accepted = candidate
                    break
            t *= config.backtrack_factor
        if accepted is None:
            # descent no longer resolvable; accept only a point next to the truth
            converged = mapping <= STALL_SLACK * config.step_tolerance
            return finish(ys, iteration - 1, converged, "line search exhausted")

        g_new = excess_gradient(q.q, xs, accepted)
        weights_new = step_weights(q.q, xs, accepted)
        d = accepted - ys
        if config.spectral_steps:
            curvature = float(d @ (g_new - g))
            if curvature > 0.0:
                length = float(d @ (d / weights_new))
                step = float(np.clip(length / curvature, *SPECTRAL_STEP_BOUNDS))
            else:
                step = config.initial_step
        ys, f, g, weights = accepted, f_new, g_new, weights_new
        trace.append(f)
        min_coordinate = min(min_coordinate, float(ys.min()))
        if iteration % LOG_EVERY == 0:
            logger.debug("q=%r iteration %d: excess=%r", q.q, iteration, f)

    return finish(ys, config.max_iterations, False, "iteration limit")


def minimize_many(
    q: QLike,
    xs: Sequence[Distribution],
    config: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> List[SolverResult]:
    """Solve many independent problems; results follow the input order."""
    q = as_qparam(q)

    def solve(x: Distribution) -> SolverResult:
        return minimize_complexity(q, x, config)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(solve, xs))
    return [solve(x) for x in xs]


__all__ = ["minimize_complexity", "minimize_many", "excess", "excess_terms"]
