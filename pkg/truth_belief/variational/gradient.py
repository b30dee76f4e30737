from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from ..dist import Distribution, same_alphabet
from ..exceptions import DomainError
from ..qcore import QLike, as_qparam, coder_array, coder_derivative_array, interaction_array

logger = logging.getLogger(__name__)


def complexity_gradient(q: QLike, x: Distribution, y: Distribution) -> np.ndarray:
    """Partial derivatives of Phi_q(x, .) on support(x).

    Component j is ``(1-q) kappa_q(y_j) + pi_q(x_j, y_j) kappa_q'(y_j)``.
    At y = x every component is -1, the first-order condition on the simplex.
    """
    q = as_qparam(q)
    same_alphabet(x, y)
    support = x.support
    xs, ys = x.probs[support], y.probs[support]
    if np.any(ys == 0.0):
        missing = [x.labels[i] for i in support if y.probs[i] == 0.0]
        raise DomainError(f"gradient undefined: y vanishes inside support(x) at {', '.join(missing)}")
    return (1.0 - q.q) * coder_array(q.q, ys) + interaction_array(
        q.q, xs, ys
    ) * coder_derivative_array(q.q, ys)


def excess_gradient(q: float, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Gradient of Phi_q(x, .) shifted by +1: ``q y^(q-2) (y - x)``.

    Same projected steps as `complexity_gradient` without the cancellation
    against -1 near the minimum.
    """
    with np.errstate(over="ignore", divide="ignore"):
        return q * np.power(ys, q - 2.0) * (ys - xs)


def finite_difference_gradient(
    func: Callable[[np.ndarray], float], y: np.ndarray, step: float = 1e-6
) -> np.ndarray:
    """Central differences of `func` at `y`, one coordinate at a time."""
    y0 = np.asarray(y, dtype=float)
    logger.debug("finite difference gradient, n=%d, step=%g", y0.size, step)
    grad = np.zeros(y0.size)
    for j in range(y0.size):
        shifted = y0.copy()
        shifted[j] = y0[j] + step
        f_plus = func(shifted)
        shifted[j] = y0[j] - step
        f_minus = func(shifted)
        grad[j] = (f_plus - f_minus) / (2.0 * step)
    return grad
