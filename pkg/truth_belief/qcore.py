"""Scalar q-deformed primitives.

The canonical pair of the framework is the interaction
``pi_q(x, y) = q*x + (1 - q)*y`` and the coder ``kappa_q(y) = ln_q(1/y)``,
where ``ln_q`` is the q-logarithm. Scalar functions validate their domain and
raise `DomainError`; the ``*_array`` variants are the vectorised kernels the
rest of the package builds on and assume validated input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import DomainError

# |q - 1| below this evaluates the q = 1 branch (natural log).
BRANCH_WINDOW = 1e-9
Q_MAX = 1e6


class ExtendedReal(float):
    """A float in ``(-inf, +inf]``: never NaN, never ``-inf``.

    Coder values and complexities live here because ``kappa_q(0) = +inf``
    for ``q <= 1``. Arithmetic returns plain floats; products in complexity
    sums follow ``0 * (+inf) = 0`` (see `quantities.complexity_terms`).
    """

    def __new__(cls, value: float = 0.0) -> "ExtendedReal":
        v = float(value)
        if math.isnan(v):
            raise DomainError("extended real cannot be NaN")
        if v == -math.inf:
            raise DomainError("extended real cannot be -inf")
        return super().__new__(cls, v)

    @property
    def is_infinite(self) -> bool:
        return self == math.inf

    def __str__(self) -> str:
        return format_extended(self)


def format_extended(value: float) -> str:
    if value == math.inf:
        return "+inf"
    return repr(float(value))


@dataclass(frozen=True)
class QParam:
    """Validated interaction parameter ``q = pi(1, 0)``; finite, ``0 <= q <= Q_MAX``."""

    q: float

    def __post_init__(self) -> None:
        try:
            value = float(self.q)
        except (TypeError, ValueError):
            raise DomainError(f"q must be a real number, got {self.q!r}") from None
        if not math.isfinite(value):
            raise DomainError(f"q must be finite, got {value!r}")
        if value < 0:
            raise DomainError(f"q must be non-negative, got {value!r}")
        if value > Q_MAX:
            raise DomainError(f"q must not exceed {Q_MAX:g}, got {value!r}")
        object.__setattr__(self, "q", value)

    @property
    def is_classical(self) -> bool:
        """True inside the branch window around q = 1."""
        return abs(self.q - 1.0) < BRANCH_WINDOW

    def __float__(self) -> float:
        return self.q


QLike = Union[QParam, float, int]


def as_qparam(q: QLike) -> QParam:
    if isinstance(q, QParam):
        return q
    return QParam(q)


# Vectorised kernels ---------------------------------------------------------


def q_log_array(q: float, x: np.ndarray) -> np.ndarray:
    """ln_q on an array of positive reals."""
    x = np.asarray(x, dtype=float)
    if abs(q - 1.0) < BRANCH_WINDOW:
        return np.log(x)
    a = 1.0 - q
    with np.errstate(over="ignore"):
        # expm1 keeps full precision when x^(1-q) is close to 1
        return np.expm1(a * np.log(x)) / a


def coder_array(q: float, y: np.ndarray) -> np.ndarray:
    """kappa_q on an array of values in [0, 1]; +inf where kappa_q(0) diverges."""
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    zero = y == 0.0
    positive = ~zero
    if abs(q - 1.0) < BRANCH_WINDOW:
        out[positive] = -np.log(y[positive])
        out[zero] = math.inf
    else:
        a = q - 1.0
        with np.errstate(over="ignore"):
            out[positive] = np.expm1(a * np.log(y[positive])) / -a
        out[zero] = math.inf if q < 1.0 else 1.0 / a
    return out + 0.0  # no -0.0 at y = 1


def coder_derivative_array(q: float, y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    with np.errstate(over="ignore", divide="ignore"):
        return -np.power(y, q - 2.0)


def interaction_array(q: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """pi_q(x, y), returning y exactly where x == y (soundness)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.where(x == y, y, q * x + (1.0 - q) * y)


# Scalar operations ----------------------------------------------------------


def _unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def q_log(q: QLike, x: float) -> float:
    """The q-logarithm: ``ln x`` for q = 1, else ``(x**(1-q) - 1)/(1-q)``."""
    q = as_qparam(q)
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError(f"q_log requires a finite x > 0, got {x!r}")
    return float(q_log_array(q.q, np.asarray(x)))


def q_exp(q: QLike, u: float) -> ExtendedReal:
    """Functional inverse of `q_log` on its range.

    For q < 1 the range is ``u >= -1/(1-q)``, for q > 1 it is
    ``u < 1/(q-1)``; q = 1 accepts every finite u.
    """
    q = as_qparam(q)
    u = float(u)
    if not math.isfinite(u):
        raise DomainError(f"q_exp requires a finite argument, got {u!r}")
    if q.is_classical:
        with np.errstate(over="ignore"):
            return ExtendedReal(np.exp(u))
    a = 1.0 - q.q
    if q.q < 1.0 and u < -1.0 / a:
        raise DomainError(f"q_exp argument {u!r} is below -1/(1-q) = {-1.0 / a!r}")
    if q.q > 1.0 and u >= 1.0 / -a:
        raise DomainError(f"q_exp argument {u!r} is not below 1/(q-1) = {1.0 / -a!r}")
    base = a * u
    if base <= -1.0:
        # boundary of the range: 0 for q < 1, the pole for q > 1
        return ExtendedReal(0.0 if q.q < 1.0 else math.inf)
    with np.errstate(over="ignore"):
        return ExtendedReal(np.exp(np.log1p(base) / a))


def coder(q: QLike, y: float) -> ExtendedReal:
    """kappa_q(y) = ln_q(1/y); +inf at y = 0 for q <= 1, 1/(q-1) for q > 1."""
    q = as_qparam(q)
    y = _unit_interval("coder argument y", y)
    return ExtendedReal(float(coder_array(q.q, np.asarray([y]))[0]))


def coder_derivative(q: QLike, y: float) -> float:
    q = as_qparam(q)
    y = float(y)
    if not 0.0 < y <= 1.0:
        raise DomainError(f"coder derivative requires y in (0, 1], got {y!r}")
    return float(coder_derivative_array(q.q, np.asarray(y)))


def interaction(q: QLike, x: float, y: float) -> float:
    q = as_qparam(q)
    x = _unit_interval("truth x", x)
    y = _unit_interval("belief y", y)
    return float(interaction_array(q.q, np.asarray(x), np.asarray(y)))
