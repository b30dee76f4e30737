from __future__ import annotations

import numpy as np

from ..exceptions import DomainError


def project_simplex(v: np.ndarray, z: float = 1.0) -> np.ndarray:
    """Euclidean projection onto ``{y >= 0, sum(y) = z}``.

    Sort-based: with u sorted decreasingly, rho is the number of entries
    satisfying ``u_j - (cumsum(u)_j - z)/j > 0`` and the threshold is
    ``theta = (cumsum(u)_rho - z)/rho``.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DomainError(f"expected a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DomainError("cannot project a vector with non-finite entries")
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - z
    ind = np.arange(1, v.size + 1)
    rho = np.count_nonzero(u - cssv / ind > 0)
    theta = cssv[rho - 1] / rho
    return np.maximum(v - theta, 0.0)
