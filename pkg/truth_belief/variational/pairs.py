"""Candidate (interaction, coder) pairs and the grid test of the minimum at y = x.

Only the canonical pair ``(pi_q, kappa_q)`` puts the minimum of the
complexity at y = x. `DECOY_PAIRS` mixes an interaction from one q with a
coder from another; each fails at ``x = (0.2, 0.8)``.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..dist import Distribution, make_distribution
from ..exceptions import DomainError
from ..qcore import QLike, as_qparam, coder_array, interaction_array
from .oracle import ENUMERATION_CAP, grid_resolution, grid_size, iter_simplex_grid

logger = logging.getLogger(__name__)

InteractionFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
CoderFn = Callable[[np.ndarray], np.ndarray]

MAX_PAIR_ALPHABET = 3
PRINCIPLE_TOLERANCE = 1e-12
CODER_NORMALISATION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class GenericPair:
    """An interaction and a coder, both vectorised over numpy arrays.

    Args:
        interaction_fn: ``(x, y) -> pi(x, y)`` elementwise.
        coder_fn: ``y -> kappa(y)`` elementwise, may return +inf.
        label: Name used in reports.

    The coder must satisfy kappa(1) = 0 (a sure event costs nothing); this is
    checked on construction.
    """

    interaction_fn: InteractionFn
    coder_fn: CoderFn
    label: str = ""

    def __post_init__(self) -> None:
        if not callable(self.interaction_fn):
            raise TypeError(f"interaction_fn must be callable, got {self.interaction_fn!r}")
        if not callable(self.coder_fn):
            raise TypeError(f"coder_fn must be callable, got {self.coder_fn!r}")
        at_one = float(np.asarray(self.coder_fn(np.array([1.0])), dtype=float).ravel()[0])
        if not abs(at_one) <= CODER_NORMALISATION_TOLERANCE:
            raise DomainError(f"coder of pair {self.label!r} must vanish at 1, got {at_one!r}")

    @classmethod
    def canonical(cls, q: QLike) -> "GenericPair":
        q = as_qparam(q)
        return cls(
            functools.partial(interaction_array, q.q),
            functools.partial(coder_array, q.q),
            f"canonical q={q.q!r}",
        )

    @property
    def interaction_parameter(self) -> float:
        """pi(1, 0); for the canonical pair this is q."""
        value = self.interaction_fn(np.array([1.0]), np.array([0.0]))
        return float(np.asarray(value, dtype=float).ravel()[0])

    def complexity_rows(self, x: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Sum over events of ``pi * kappa`` for each row of `ys`, 0 * inf = 0."""
        with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
            pi = np.asarray(self.interaction_fn(np.broadcast_to(x, ys.shape), ys), dtype=float)
            kappa = np.asarray(self.coder_fn(ys), dtype=float)
            terms = np.where(pi == 0.0, 0.0, pi * kappa)
        if np.isnan(terms).any():
            raise DomainError(f"pair {self.label!r} produced an undefined term (inf - inf)")
        return terms.sum(axis=1)


@dataclass(frozen=True)
class PrincipleCheck:
    holds: bool
    truth_value: float
    best_value: float
    counterexample: Optional[Distribution] = None

    def __bool__(self) -> bool:
        return self.holds


def principle_holds(pair: GenericPair, x: Distribution, grid_step: float) -> PrincipleCheck:
    """Is y = x a global minimiser of the pair's complexity on the grid?

    The value at x itself is compared with every grid point of the full
    simplex. When ``pi(1, 0) == 0`` (the q = 0 regime) only beliefs covering
    support(x) are admissible. A grid point beating x by more than a relative
    1e-12 is returned as the counterexample.
    """
    n = len(x)
    if n > MAX_PAIR_ALPHABET:
        raise DomainError(f"alphabet too large for the pair test: {n} > {MAX_PAIR_ALPHABET}")
    m = grid_resolution(grid_step)
    if grid_size(n, m) > ENUMERATION_CAP:
        raise DomainError(f"grid_step {grid_step!r} is too fine for n={n}")

    truth = x.probs
    truth_value = float(pair.complexity_rows(truth, truth[np.newaxis, :])[0])
    needs_cover = pair.interaction_parameter == 0.0
    best_value = math.inf
    best_point = None
    for block in iter_simplex_grid(n, m):
        values = pair.complexity_rows(truth, block)
        if needs_cover:
            covers = np.all(block[:, x.support] > 0.0, axis=1)
            values = np.where(covers, values, math.inf)
        i = int(np.argmin(values))
        if best_point is None or values[i] < best_value:
            best_value, best_point = float(values[i]), block[i].copy()

    slack = PRINCIPLE_TOLERANCE * max(1.0, abs(truth_value))
    if best_value >= truth_value - slack:
        logger.debug("pair %r: y = x is grid-optimal (value %r)", pair.label, truth_value)
        return PrincipleCheck(True, truth_value, best_value)
    counterexample = make_distribution(x.alphabet, best_point, normalize=True)
    logger.info(
        "pair %r beaten at %s: %r < %r",
        pair.label,
        counterexample.as_dict(),
        best_value,
        truth_value,
    )
    return PrincipleCheck(False, truth_value, best_value, counterexample)


# Decoys ---------------------------------------------------------------------


def _truth_only(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return interaction_array(1.0, x, y)


def _doubled_truth(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return interaction_array(2.0, x, y)


def _even_mix(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return interaction_array(0.5, x, y)


def _linear_coder(y: np.ndarray) -> np.ndarray:
    return 1.0 - np.asarray(y, dtype=float)


def _log_coder(y: np.ndarray) -> np.ndarray:
    return coder_array(1.0, y)


DECOY_PAIRS = (
    GenericPair(_truth_only, _linear_coder, "pi_1 with kappa(y) = 1 - y"),
    GenericPair(_doubled_truth, _log_coder, "pi_2 with kappa(y) = -ln y"),
    GenericPair(_even_mix, _linear_coder, "pi_1/2 with kappa(y) = 1 - y"),
)
