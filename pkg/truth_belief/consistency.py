"""Certification of the interaction axioms for the canonical pi_q.

Weak consistency holds for every q >= 0 because pi_q is affine and both x
and y sum to one. Strong consistency, pi_q(x_i, y_i) in [0, 1] for every
entry, holds exactly for 0 <= q <= 1: there pi_q(x, y) is a convex
combination of two numbers in [0, 1], so it stays in [0, 1]. For q > 1 the
pair x = (0, 1), y = (1/2, 1/2) gives pi_0 = (1 - q)/2 < 0. The randomised
search below is the executable stand-in for the convexity argument.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .dist import Distribution, point_mass, random_distribution, same_alphabet, uniform
from .exceptions import DomainError
from .qcore import QLike, QParam, as_qparam, interaction_array

logger = logging.getLogger(__name__)

WEAK_TOLERANCE = 1e-12
STRONG_TOLERANCE = 1e-12
SEARCH_SHARDS = 8
DEFAULT_TRIALS = 10_000


@dataclass(frozen=True)
class ConsistencyWitness:
    q: QParam
    x: Distribution
    y: Distribution
    offending_index: Optional[int] = None
    offending_value: Optional[float] = None
    residual: float = 0.0

    def __post_init__(self) -> None:
        if not self.residual >= 0.0:
            raise DomainError(f"witness residual must be non-negative, got {self.residual!r}")
        if (self.offending_index is None) != (self.offending_value is None):
            raise DomainError("offending index and value must be given together")

    @property
    def passed(self) -> bool:
        return self.offending_index is None

    def as_dict(self) -> Dict[str, object]:
        return {
            "q": self.q.q,
            "labels": list(self.x.labels),
            "x": [float(p) for p in self.x.probs],
            "y": [float(p) for p in self.y.probs],
            "offending_index": self.offending_index,
            "offending_value": self.offending_value,
            "residual": self.residual,
        }


def weak_consistency_residual(q: QLike, x: Distribution, y: Distribution) -> float:
    """|sum_i pi_q(x_i, y_i) - 1|."""
    q = as_qparam(q)
    same_alphabet(x, y)
    return abs(math.fsum(interaction_array(q.q, x.probs, y.probs)) - 1.0)


def strong_consistency_check(q: QLike, x: Distribution, y: Distribution) -> ConsistencyWitness:
    """Check that the interaction vector is itself a distribution.

    On failure the witness names the first entry outside
    ``[-STRONG_TOLERANCE, 1 + STRONG_TOLERANCE]``.
    """
    q = as_qparam(q)
    same_alphabet(x, y)
    pi = interaction_array(q.q, x.probs, y.probs)
    weak = abs(math.fsum(pi) - 1.0)
    outside = np.flatnonzero((pi < -STRONG_TOLERANCE) | (pi > 1.0 + STRONG_TOLERANCE))
    if outside.size:
        i = int(outside[0])
        value = float(pi[i])
        excess = -value if value < 0.0 else value - 1.0
        return ConsistencyWitness(q, x, y, i, value, excess)
    if weak > WEAK_TOLERANCE:
        i = int(np.argmax(np.abs(pi)))
        return ConsistencyWitness(q, x, y, i, float(pi[i]), weak)
    return ConsistencyWitness(q, x, y, residual=weak)


def soundness_residual(q: QLike, grid_size: int) -> float:
    """max_t |pi_q(t, t) - t| over a uniform grid of [0, 1]."""
    q = as_qparam(q)
    if grid_size < 2:
        raise DomainError(f"grid_size must be at least 2, got {grid_size!r}")
    t = np.linspace(0.0, 1.0, int(grid_size))
    return float(np.max(np.abs(interaction_array(q.q, t, t) - t)))


def boundary_family(n_max: int = 5) -> List[Tuple[Distribution, Distribution]]:
    """Point masses against uniforms and against each other, n <= n_max."""
    pairs: List[Tuple[Distribution, Distribution]] = []
    for n in range(1, n_max + 1):
        u = uniform(n)
        masses = [point_mass(n, i) for i in range(n)]
        for mass in masses:
            pairs.append((mass, u))
            pairs.append((u, mass))
            pairs.extend((mass, other) for other in masses)
    return pairs


def _shard_trials(trials: int, shard: int) -> int:
    base, extra = divmod(trials, SEARCH_SHARDS)
    return base + (1 if shard < extra else 0)


def _search_shard(
    q: QParam, seed: int, shard: int, trials: int, n_max: int
) -> Optional[ConsistencyWitness]:
    rng = np.random.default_rng([seed, shard])
    for _ in range(_shard_trials(trials, shard)):
        n = int(rng.integers(2, n_max + 1))
        sizes = [None, None]
        if rng.random() < 0.5:
            sizes = [int(rng.integers(1, n + 1)), int(rng.integers(1, n + 1))]
        x = random_distribution(n, int(rng.integers(2**32)), sizes[0])
        y = random_distribution(n, int(rng.integers(2**32)), sizes[1])
        witness = strong_consistency_check(q, x, y)
        if not witness.passed:
            return witness
    return None


def find_strong_violation(
    q: QLike,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    n_max: int = 8,
    jobs: int = 1,
) -> Optional[ConsistencyWitness]:
    """Return a witness that pi_q is not strongly consistent, or None.

    For q > 1 the witness is built in closed form. Otherwise the boundary
    family and `trials` seeded random pairs are searched; shards are seeded
    by ``(seed, shard)`` so the outcome does not depend on `jobs`.
    """
    q = as_qparam(q)
    if q.q > 1.0:
        x, y = point_mass(2, 1), uniform(2)
        value = (1.0 - q.q) / 2.0
        return ConsistencyWitness(q, x, y, 0, value, -value)

    for x, y in boundary_family():
        witness = strong_consistency_check(q, x, y)
        if not witness.passed:
            logger.warning("boundary pair violates strong consistency at q=%r", q.q)
            return witness

    def run(shard: int) -> Optional[ConsistencyWitness]:
        return _search_shard(q, seed, shard, trials, n_max)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(run, range(SEARCH_SHARDS)))
    else:
        found = [run(shard) for shard in range(SEARCH_SHARDS)]
    for witness in found:
        if witness is not None:
            logger.warning("random pair violates strong consistency at q=%r", q.q)
            return witness
    logger.debug("no strong-consistency violation at q=%r in %d trials", q.q, trials)
    return None
