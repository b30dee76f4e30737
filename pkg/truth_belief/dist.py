from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import DomainError

INPUT_SUM_TOLERANCE = 1e-9
STORED_SUM_TOLERANCE = 1e-12
PRODUCT_SIZE_CAP = 10**6
PRODUCT_SEPARATOR = "⊗"


def _positive_int(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise DomainError(f"{name} must be at least 1, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free labels of the basic events."""

    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if not labels:
            raise DomainError("an alphabet needs at least one label")
        for label in labels:
            if not isinstance(label, str) or not label:
                raise DomainError(f"labels must be non-empty strings, got {label!r}")
        if len(set(labels)) != len(labels):
            duplicates = sorted(l for l, count in Counter(labels).items() if count > 1)
            raise DomainError(f"duplicate labels: {', '.join(duplicates)}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def default(cls, n: int) -> "Alphabet":
        n = _positive_int("alphabet size", n)
        return cls(tuple(f"s{i}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)


AlphabetLike = Union[Alphabet, Sequence[str]]


def _as_alphabet(alphabet: AlphabetLike) -> Alphabet:
    if isinstance(alphabet, Alphabet):
        return alphabet
    return Alphabet(tuple(alphabet))


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector over an alphabet; immutable.

    Zero entries are stored explicitly. The support is the set of indices
    with a strictly positive stored value.
    """

    alphabet: Alphabet
    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size != len(self.alphabet):
            raise DomainError(
                f"expected {len(self.alphabet)} probabilities, got shape {probs.shape}"
            )
        if not np.all((probs >= 0.0) & (probs <= 1.0)):
            raise DomainError("probabilities must lie in [0, 1]")
        total = math.fsum(probs)
        if abs(total - 1.0) > STORED_SUM_TOLERANCE:
            raise DomainError(f"probabilities sum to {total!r}, not 1")
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.alphabet.labels

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.probs > 0.0)

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.probs > 0.0))

    def is_point_mass(self) -> bool:
        return self.support_size == 1

    def as_dict(self) -> Dict[str, object]:
        return {"labels": list(self.labels), "probs": [float(p) for p in self.probs]}

    def __len__(self) -> int:
        return self.probs.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.probs, other.probs)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.probs.tobytes()))

    def __repr__(self) -> str:
        body = ", ".join(f"{l}={p!r}" for l, p in zip(self.labels, self.probs.tolist()))
        return f"Distribution({body})"


def make_distribution(
    alphabet: AlphabetLike, weights: Iterable[float], normalize: bool = False
) -> Distribution:
    """Build a distribution from non-negative weights.

    Without `normalize` the weights must already sum to 1 within
    `INPUT_SUM_TOLERANCE`. Either way they are divided by their exact sum
    once, so the stored vector sums to 1 within a few ulps.
    """
    alphabet = _as_alphabet(alphabet)
    try:
        w = np.array(list(weights), dtype=float)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"weights must be real numbers: {exc}") from None
    if w.ndim != 1 or w.size != len(alphabet):
        raise DomainError(f"expected {len(alphabet)} weights, got {w.size}")
    if not np.all(np.isfinite(w)):
        raise DomainError("weights must be finite")
    negative = np.flatnonzero(w < 0.0)
    if negative.size:
        i = int(negative[0])
        raise DomainError(f"weight for {alphabet.labels[i]!r} is negative: {w[i]!r}")
    total = math.fsum(w)
    if total <= 0.0:
        raise DomainError("at least one weight must be positive")
    if not normalize and abs(total - 1.0) > INPUT_SUM_TOLERANCE:
        raise DomainError(
            f"probabilities sum to {total!r}; expected 1 within {INPUT_SUM_TOLERANCE:g}"
        )
    return Distribution(alphabet, w / total)


def uniform(n: int, alphabet: Optional[AlphabetLike] = None) -> Distribution:
    n = _positive_int("n", n)
    alphabet = Alphabet.default(n) if alphabet is None else _as_alphabet(alphabet)
    return make_distribution(alphabet, np.ones(n), normalize=True)


def point_mass(n: int, i: int, alphabet: Optional[AlphabetLike] = None) -> Distribution:
    n = _positive_int("n", n)
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 0 <= i < n:
        raise DomainError(f"index {i!r} is out of range for an alphabet of size {n}")
    weights = np.zeros(n)
    weights[i] = 1.0
    alphabet = Alphabet.default(n) if alphabet is None else _as_alphabet(alphabet)
    return make_distribution(alphabet, weights)


def random_distribution(
    n: int, seed: int, support_size: Optional[int] = None
) -> Distribution:
    """Seeded draw from the flat measure on the simplex.

    Normalised exponential spacings. With `support_size`, exactly that many
    seeded positions carry mass and the draw is flat on that face.
    """
    n = _positive_int("n", n)
    rng = np.random.default_rng(seed)
    weights = np.zeros(n)
    if support_size is None:
        positions = np.arange(n)
    else:
        k = _positive_int("support_size", support_size)
        if k > n:
            raise DomainError(f"support_size {k} exceeds alphabet size {n}")
        positions = np.sort(rng.choice(n, size=k, replace=False))
    draws = rng.standard_exponential(positions.size)
    # an exact 0.0 draw would silently shrink the support
    weights[positions] = np.maximum(draws, np.finfo(float).tiny)
    return make_distribution(Alphabet.default(n), weights, normalize=True)


def same_alphabet(x: Distribution, y: Distribution) -> None:
    if x.alphabet != y.alphabet:
        raise DomainError(
            f"alphabet mismatch: {list(x.labels)} vs {list(y.labels)}"
        )


def support_contains(x: Distribution, y: Distribution) -> bool:
    """True iff every index with ``x_i > 0`` has ``y_i > 0``."""
    same_alphabet(x, y)
    return bool(np.all(y.probs[x.support] > 0.0))


def product_distribution(x: Distribution, y: Distribution) -> Distribution:
    """Independent joint distribution on labels ``"a⊗b"`` (lexicographic)."""
    size = len(x) * len(y)
    if size > PRODUCT_SIZE_CAP:
        raise DomainError(
            f"product alphabet has {size} symbols; the cap is {PRODUCT_SIZE_CAP}"
        )
    labels = [f"{a}{PRODUCT_SEPARATOR}{b}" for a in x.labels for b in y.labels]
    joint = np.outer(x.probs, y.probs).ravel()
    return make_distribution(labels, joint, normalize=True)
