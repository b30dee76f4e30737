"""Complexity, entropy and divergence of the canonical pair.

Sums follow the term convention ``0 * (+inf) = 0``: an event the world never
presents (``pi = 0``) costs nothing even when the coder diverges there. At
``q = 0`` the closed forms ``H_0(x) = |supp x| - 1`` and
``Phi_0(x, y) = |supp y| - 1`` are returned exactly; both require
``supp x ⊆ supp y``.
"""

from __future__ import annotations

import math

import numpy as np

from .dist import Distribution, product_distribution, same_alphabet, support_contains
from .exceptions import DomainError
from .qcore import (
    BRANCH_WINDOW,
    ExtendedReal,
    QLike,
    as_qparam,
    coder_array,
    interaction_array,
    q_log,
)


def complexity_terms(q: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Per-event contributions ``pi_q(x_i, y_i) * kappa_q(y_i)``.

    Works on raw arrays of any matching shape (grids included).
    """
    pi = interaction_array(q, x, y)
    kappa = coder_array(q, y)
    terms = np.zeros(pi.shape)
    active = pi != 0.0
    infinite = active & np.isinf(kappa)
    if np.any(infinite & (pi < 0.0)):
        raise DomainError("indeterminate product -inf * inf in complexity")
    finite = active & ~infinite
    terms[finite] = pi[finite] * kappa[finite]
    terms[infinite] = math.inf
    return terms


def complexity_value(q: float, x: np.ndarray, y: np.ndarray) -> float:
    terms = complexity_terms(q, x, y)
    if np.isinf(terms).any():
        return math.inf
    return math.fsum(terms)


def _require_support(x: Distribution, y: Distribution) -> None:
    if not support_contains(x, y):
        missing = [x.labels[i] for i in x.support if y.probs[i] == 0.0]
        raise DomainError(
            "at q = 0 the belief must cover the support of the truth; "
            f"y vanishes on {', '.join(missing)}"
        )


def interaction_vector(q: QLike, x: Distribution, y: Distribution) -> np.ndarray:
    q = as_qparam(q)
    same_alphabet(x, y)
    pi = interaction_array(q.q, x.probs, y.probs)
    pi.flags.writeable = False
    return pi


def complexity(q: QLike, x: Distribution, y: Distribution) -> ExtendedReal:
    """Phi_q(x, y), the interaction-weighted sum of coder values."""
    q = as_qparam(q)
    same_alphabet(x, y)
    if q.q == 0.0:
        _require_support(x, y)
        return ExtendedReal(float(y.support_size - 1))
    return ExtendedReal(complexity_value(q.q, x.probs, y.probs))


def entropy(q: QLike, x: Distribution) -> float:
    """H_q(x) = sum x_i kappa_q(x_i), the Tsallis entropy of x."""
    q = as_qparam(q)
    if q.q == 0.0:
        return float(x.support_size - 1)
    p = x.probs[x.support]
    return math.fsum(p * coder_array(q.q, p))


def divergence(q: QLike, x: Distribution, y: Distribution) -> ExtendedReal:
    """D_q(x, y) = Phi_q(x, y) - H_q(x)."""
    phi = complexity(q, x, y)
    if phi.is_infinite:
        return phi
    return ExtendedReal(float(phi) - entropy(q, x))


frustration = divergence


def max_entropy(q: QLike, n: int) -> float:
    """ln_q(n), the entropy of the uniform distribution on n events."""
    if n < 1:
        raise DomainError(f"alphabet size must be at least 1, got {n!r}")
    return q_log(q, float(n))


def bregman_divergence(q: QLike, x: Distribution, y: Distribution) -> ExtendedReal:
    """D_q recomputed as the Bregman divergence of the concave generator
    ``phi(t) = t * kappa_q(t)``::

        sum_i  phi(y_i) + phi'(y_i) * (x_i - y_i) - phi(x_i)

    with ``phi'(t) = kappa_q(t) - t**(q-1)``. Agrees with `divergence` on
    every valid input.
    """
    q = as_qparam(q)
    same_alphabet(x, y)
    if q.q == 0.0:
        _require_support(x, y)
    xv, yv = x.probs, y.probs
    phi_x = xv * coder_array(q.q, xv)
    phi_x[xv == 0.0] = 0.0
    terms = np.zeros_like(xv)
    pos = yv > 0.0
    yp = yv[pos]
    kappa_y = coder_array(q.q, yp)
    slope = kappa_y - np.power(yp, q.q - 1.0)
    terms[pos] = yp * kappa_y + slope * (xv[pos] - yp) - phi_x[pos]
    boundary = ~pos & (xv > 0.0)
    if np.any(boundary):
        if q.q <= 1.0 or abs(q.q - 1.0) < BRANCH_WINDOW:
            return ExtendedReal(math.inf)
        # phi'(0) = kappa_q(0) = 1/(q-1) for q > 1
        terms[boundary] = xv[boundary] / (q.q - 1.0) - phi_x[boundary]
    return ExtendedReal(math.fsum(terms))


def pseudo_additivity_residual(q: QLike, x: Distribution, y: Distribution) -> float:
    """Defect of ``H(x⊗y) = H(x) + H(y) + (1-q) H(x) H(y)``."""
    q = as_qparam(q)
    joint = product_distribution(x, y)
    hx, hy = entropy(q, x), entropy(q, y)
    return abs(entropy(q, joint) - (hx + hy + (1.0 - q.q) * hx * hy))
