"""Exhaustive grid search, the independent check on the solver."""

from __future__ import annotations

import logging
import math
from typing import Iterator, List, Tuple

import numpy as np

from ..dist import Distribution, make_distribution
from ..exceptions import DomainError
from ..qcore import QLike, as_qparam
from ..quantities import complexity_terms, complexity_value

logger = logging.getLogger(__name__)

ENUMERATION_CAP = 10**8
MAX_ORACLE_ALPHABET = 4
MIN_GRID_STEP = 1e-3
CHUNK_ROWS = 1 << 16


def _compositions(k: int, m: int) -> np.ndarray:
    if k == 1:
        return np.array([[m]], dtype=np.int64)
    if k == 2:
        first = np.arange(m + 1, dtype=np.int64)
        return np.column_stack([first, m - first])
    blocks = []
    for i in range(m + 1):
        rest = _compositions(k - 1, m - i)
        blocks.append(np.column_stack([np.full(len(rest), i, dtype=np.int64), rest]))
    return np.vstack(blocks)


def _composition_blocks(k: int, m: int, limit: int) -> Iterator[np.ndarray]:
    # leading coordinates stay fixed until the remainder fits in one block
    if k <= 2 or grid_size(k, m) <= limit:
        yield _compositions(k, m)
        return
    for i in range(m + 1):
        for rest in _composition_blocks(k - 1, m - i, limit):
            yield np.column_stack([np.full(len(rest), i, dtype=np.int64), rest])


def _check_grid_shape(k: int, m: int) -> None:
    if k < 1 or m < 1:
        raise DomainError(f"simplex_grid needs k >= 1 and m >= 1, got k={k!r}, m={m!r}")


def simplex_grid(k: int, m: int) -> np.ndarray:
    """Every point of the k-simplex with coordinates in {0, 1/m, ..., 1}.

    Rows are in lexicographic order of the integer compositions of m.
    """
    _check_grid_shape(k, m)
    return _compositions(k, m) / m


def iter_simplex_grid(k: int, m: int, chunk_rows: int = CHUNK_ROWS) -> Iterator[np.ndarray]:
    """The rows of `simplex_grid(k, m)` in the same order, block by block.

    A block holds fewer than ``2 * chunk_rows + m`` rows, whatever the size
    of the whole grid.
    """
    _check_grid_shape(k, m)
    pending: List[np.ndarray] = []
    rows = 0
    for block in _composition_blocks(k, m, chunk_rows):
        pending.append(block)
        rows += len(block)
        if rows >= chunk_rows:
            yield np.vstack(pending) / m
            pending, rows = [], 0
    if pending:
        yield np.vstack(pending) / m


def grid_resolution(grid_step: float) -> int:
    """Number of grid intervals; `grid_step` must divide 1."""
    if not grid_step >= MIN_GRID_STEP * (1.0 - 1e-12):
        raise DomainError(f"grid_step must be at least {MIN_GRID_STEP:g}, got {grid_step!r}")
    m = int(round(1.0 / grid_step))
    if abs(m * grid_step - 1.0) > 1e-9:
        raise DomainError(f"grid_step must divide 1 evenly, got {grid_step!r}")
    return m


def grid_size(k: int, m: int) -> int:
    return math.comb(m + k - 1, k - 1)


def brute_force_minimum(
    q: QLike, x: Distribution, grid_step: float, restrict_to_support: bool = True
) -> Tuple[Distribution, float]:
    """Minimise Phi_q(x, .) over the grid of spacing `grid_step`.

    The grid covers the face over support(x), or the whole simplex when
    `restrict_to_support` is False. At q = 0 only grid points covering
    support(x) are admissible. Ties go to the first point in grid order.
    """
    q = as_qparam(q)
    n = len(x)
    if n > MAX_ORACLE_ALPHABET:
        raise DomainError(f"alphabet too large for enumeration: {n} > {MAX_ORACLE_ALPHABET}")
    m = grid_resolution(grid_step)
    coords = x.support if restrict_to_support else np.arange(n)
    k = coords.size
    count = grid_size(k, m)
    if count > ENUMERATION_CAP:
        raise DomainError(
            f"grid_step {grid_step!r} gives {count} points, above the cap of {ENUMERATION_CAP}"
        )
    logger.debug("enumerating %d grid points (k=%d, m=%d) at q=%r", count, k, m, q.q)

    truth = x.probs
    on_support = np.isin(coords, x.support)
    best_value = math.inf
    best_point = None
    for block in iter_simplex_grid(k, m, CHUNK_ROWS):
        if q.q == 0.0:
            admissible = np.all(block[:, on_support] > 0.0, axis=1)
            values = np.where(admissible, np.count_nonzero(block, axis=1) - 1.0, math.inf)
        else:
            ys = np.zeros((len(block), n))
            ys[:, coords] = block
            values = complexity_terms(q.q, truth[np.newaxis, :], ys).sum(axis=1)
        i = int(np.argmin(values))
        if best_point is None or values[i] < best_value:
            best_value, best_point = float(values[i]), block[i].copy()

    full = np.zeros(n)
    full[coords] = best_point
    minimizer = make_distribution(x.alphabet, full, normalize=True)
    if q.q == 0.0 or not math.isfinite(best_value):
        return minimizer, best_value
    return minimizer, complexity_value(q.q, truth, minimizer.probs)
