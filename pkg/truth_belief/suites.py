"""Verification suites behind ``truth-belief verify``.

Every check draws its inputs from a generator seeded with
``(seed, crc32(check name))``, so one seed reproduces every residual and
every witness bit for bit, whatever the number of workers.
"""

from __future__ import annotations

import logging
import math
import zlib
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy.special import entr, rel_entr

from .consistency import (
    DEFAULT_TRIALS,
    WEAK_TOLERANCE,
    boundary_family,
    find_strong_violation,
    soundness_residual,
    strong_consistency_check,
    weak_consistency_residual,
)
from .dist import Distribution, make_distribution, random_distribution, uniform
from .exceptions import DomainError
from .qcore import interaction
from .quantities import (
    bregman_divergence,
    complexity,
    complexity_value,
    divergence,
    entropy,
    max_entropy,
    pseudo_additivity_residual,
)
from .variational import (
    DECOY_PAIRS,
    GenericPair,
    SolverConfig,
    brute_force_minimum,
    complexity_gradient,
    finite_difference_gradient,
    minimize_many,
    principle_holds,
)

logger = logging.getLogger(__name__)

CONSISTENCY = "consistency"
QUANTITIES = "quantities"
VARIATIONAL = "variational"
ALL = "all"
SUITE_NAMES = (CONSISTENCY, QUANTITIES, VARIATIONAL, ALL)
MAX_N = 16
DEFAULT_N_MAX = 16

SOLVER_QS = (0.25, 0.5, 1.0, 1.5, 2.0, 3.0)
ORACLE_QS = (0.5, 1.0, 2.0)
ORACLE_STEP = 0.01
PAIR_GRID_STEP = 0.005
PAIR_TRUTH = (0.3, 0.7)
DECOY_TRUTH = (0.2, 0.8)


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    residual: float
    witness: Optional[Dict[str, object]] = None
    detail: str = ""

    def as_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "witness": self.witness,
            "detail": self.detail,
        }


class _Worst:
    """Largest residual seen so far and the inputs that produced it."""

    def __init__(self) -> None:
        self.residual = 0.0
        self.witness: Optional[Dict[str, object]] = None

    def update(self, residual: float, **witness: object) -> None:
        if self.witness is None or residual > self.residual:
            self.residual = float(residual)
            self.witness = {k: _plain(v) for k, v in witness.items()}

    def outcome(self, name: str, tolerance: float, detail: str = "") -> CheckOutcome:
        passed = self.residual <= tolerance
        return CheckOutcome(name, passed, self.residual, self.witness, detail or f"tolerance {tolerance:g}")


def _plain(value: object) -> object:
    if isinstance(value, Distribution):
        return [float(p) for p in value.probs]
    if isinstance(value, np.ndarray):
        return [float(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def _stream(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode("utf-8"))])


def _draw(
    rng: np.random.Generator, n_low: int, n_high: int, support_size: Optional[int] = None
) -> Distribution:
    n = int(rng.integers(n_low, n_high + 1))
    if support_size is not None:
        support_size = min(support_size, n)
    return random_distribution(n, int(rng.integers(2**32)), support_size)


def _pair(rng: np.random.Generator, n_low: int, n_high: int):
    n = int(rng.integers(n_low, n_high + 1))
    return (
        random_distribution(n, int(rng.integers(2**32))),
        random_distribution(n, int(rng.integers(2**32))),
    )


# Consistency ----------------------------------------------------------------


def _weak_consistency(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "weak consistency"
    rng = _stream(seed, name)
    qs = [0.0] + list(np.geomspace(1e-2, 100.0, 49))
    worst = _Worst()
    for q in qs:
        for _ in range(100):
            x, y = _pair(rng, 2, n_max)
            worst.update(weak_consistency_residual(q, x, y), q=q, x=x, y=y)
    return [worst.outcome(name, WEAK_TOLERANCE, f"{len(qs)} q values x 100 pairs")]


def _strong_witnesses(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    outcomes = []
    for q in (1.5, 2.0, 3.0, 10.0):
        name = f"strong consistency fails at q={q:g}"
        witness = find_strong_violation(q, seed=seed, n_max=n_max, jobs=jobs)
        if witness is None:
            outcomes.append(CheckOutcome(name, False, math.inf, None, "no witness produced"))
            continue
        i = witness.offending_index
        recomputed = interaction(q, witness.x.probs[i], witness.y.probs[i])
        outcomes.append(
            CheckOutcome(
                name,
                recomputed < -1e-12,
                witness.residual,
                witness.as_dict(),
                f"recomputed pi = {recomputed!r}",
            )
        )
    return outcomes


def _strong_holds(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    outcomes = []
    for q in (0.0, 0.25, 0.5, 0.75, 1.0):
        name = f"strong consistency holds at q={q:g}"
        witness = find_strong_violation(q, seed=seed, trials=DEFAULT_TRIALS, n_max=n_max, jobs=jobs)
        if witness is None:
            outcomes.append(CheckOutcome(name, True, 0.0, None, f"{DEFAULT_TRIALS} trials"))
        else:
            outcomes.append(CheckOutcome(name, False, witness.residual, witness.as_dict()))
    return outcomes


def _strong_grid(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "strong consistency on [0, 1]"
    rng = _stream(seed, name)
    family = boundary_family()
    worst = _Worst()
    failures = 0
    for q in np.linspace(0.0, 1.0, 21):
        pairs = family + [_pair(rng, 2, n_max) for _ in range(1000)]
        for x, y in pairs:
            witness = strong_consistency_check(q, x, y)
            if not witness.passed:
                failures += 1
                worst.update(witness.residual, witness=witness.as_dict())
    if failures:
        return [worst.outcome(name, 0.0, f"{failures} failing pairs")]
    return [CheckOutcome(name, True, 0.0, None, "21 q values, boundary family and 1000 pairs each")]


def _soundness(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    worst = _Worst()
    for q in (0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 10.0):
        worst.update(soundness_residual(q, 1001), q=q)
    return [worst.outcome("soundness", 0.0)]


# Quantities -----------------------------------------------------------------


def _tsallis_closed_form(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "Tsallis closed form"
    rng = _stream(seed, name)
    qs = [round(0.1 * i, 10) for i in range(1, 51) if i != 10]
    worst = _Worst()
    for _ in range(1000):
        x = _draw(rng, 2, n_max)
        for q in qs:
            summed = entropy(q, x)
            closed = (1.0 - math.fsum(x.probs**q)) / (q - 1.0)
            worst.update(abs(summed - closed) / max(abs(closed), abs(summed)), q=q, x=x)
    return [worst.outcome(name, 1e-12, "relative error")]


def _classical_reduction(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "classical reduction"
    rng = _stream(seed, name)
    shannon, kl = _Worst(), _Worst()
    for _ in range(1000):
        x, y = _pair(rng, 2, n_max)
        shannon.update(abs(entropy(1.0, x) - math.fsum(entr(x.probs))), x=x)
        kl.update(abs(float(divergence(1.0, x, y)) - math.fsum(rel_entr(x.probs, y.probs))), x=x, y=y)
    return [
        shannon.outcome("Shannon entropy at q=1", 1e-12),
        kl.outcome("Kullback-Leibler divergence at q=1", 1e-12),
    ]


def _nudge(rng: np.random.Generator, x: Distribution, size: float) -> Distribution:
    direction = rng.standard_normal(len(x))
    direction -= direction.mean()
    direction /= np.max(np.abs(direction))
    weights = np.clip(x.probs + size * direction, 0.0, None)
    return make_distribution(x.alphabet, weights, normalize=True)


def _divergence_sign(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "divergence nonnegativity"
    rng = _stream(seed, name)
    negative, at_truth, identity = _Worst(), _Worst(), _Worst()
    pairs = [_pair(rng, 2, n_max) for _ in range(10_000)]
    for x, _ in pairs[:200]:
        pairs.extend((x, _nudge(rng, x, size)) for size in (1e-3, 1e-7))
    for q in SOLVER_QS:
        for x, y in pairs:
            d = float(divergence(q, x, y))
            negative.update(-d, q=q, x=x, y=y)
            if d <= 1e-10:
                identity.update(float(np.max(np.abs(x.probs - y.probs))), q=q, x=x, y=y, divergence=d)
        for x, _ in pairs[:1000]:
            at_truth.update(abs(float(divergence(q, x, x))), q=q, x=x)
    return [
        negative.outcome(name, 1e-12, "residual is -min D"),
        at_truth.outcome("divergence vanishes at y = x", 1e-12),
        identity.outcome("small divergence forces y close to x", 1e-4),
    ]


def _pseudo_additivity(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "pseudo-additivity"
    rng = _stream(seed, name)
    factor_max = min(n_max, 8)
    worst = _Worst()
    for _ in range(1000):
        x, y = _draw(rng, 1, factor_max), _draw(rng, 1, factor_max)
        for q in (0.5, 1.0, 2.0):
            worst.update(pseudo_additivity_residual(q, x, y), q=q, x=x, y=y)
    return [
        worst.outcome(name, 1e-10),
        _additivity_check(rng, factor_max),
    ]


def _additivity_check(rng: np.random.Generator, factor_max: int) -> CheckOutcome:
    worst = _Worst()
    for _ in range(200):
        x, y = _draw(rng, 1, factor_max), _draw(rng, 1, factor_max)
        worst.update(pseudo_additivity_residual(1.0, x, y), x=x, y=y)
    return worst.outcome("additivity at q=1", 1e-12)


def _q_zero_regime(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "q=0 regime"
    rng = _stream(seed, name)
    closed, counted, rejected = _Worst(), _Worst(), _Worst()
    for _ in range(100):
        n = int(rng.integers(2, n_max + 1))
        k = int(rng.integers(1, n + 1))
        x = random_distribution(n, int(rng.integers(2**32)), k)
        closed.update(abs(entropy(0.0, x) - (x.support_size - 1)), x=x)
        extra = rng.random(n) < 0.5
        cover = (x.probs > 0.0) | extra
        y = make_distribution(x.alphabet, np.where(cover, rng.random(n) + 0.1, 0.0), normalize=True)
        counted.update(abs(float(divergence(0.0, x, y)) - (y.support_size - x.support_size)), x=x, y=y)
        if k >= 2:
            blind = np.where(x.probs > 0.0, 0.0, 1.0)
            blind[x.support[0]] = 1.0
            y_blind = make_distribution(x.alphabet, blind, normalize=True)
            try:
                complexity(0.0, x, y_blind)
            except DomainError:
                continue
            rejected.update(1.0, x=x, y=y_blind)
    return [
        closed.outcome("entropy at q=0 counts the support", 0.0),
        counted.outcome("divergence at q=0 counts extra support", 0.0),
        rejected.outcome("beliefs missing the support are rejected at q=0", 0.0),
    ]


def _bregman_form(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "Bregman form of the divergence"
    rng = _stream(seed, name)
    worst = _Worst()
    for _ in range(1000):
        x, y = _pair(rng, 2, n_max)
        for q in SOLVER_QS:
            d, b = float(divergence(q, x, y)), float(bregman_divergence(q, x, y))
            worst.update(abs(d - b) / max(1.0, abs(d)), q=q, x=x, y=y)
    return [worst.outcome(name, 1e-9)]


def _entropy_bounds(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "entropy bounds"
    rng = _stream(seed, name)
    qs = (0.25, 0.5, 1.0, 2.0, 3.0)
    at_uniform, above_max = _Worst(), _Worst()
    for n in range(2, min(n_max, 8) + 1):
        u = uniform(n)
        candidates = [_nudge(rng, u, 10.0 ** rng.uniform(-4, -1)) for _ in range(1000)]
        candidates += [random_distribution(n, int(rng.integers(2**32))) for _ in range(100)]
        for q in qs:
            top = max_entropy(q, n)
            at_uniform.update(abs(entropy(q, u) - top), q=q, n=n)
            for y in candidates:
                h = entropy(q, y)
                above_max.update(max(h - top, -h), q=q, y=y)
    return [
        at_uniform.outcome("uniform attains ln_q(n)", 1e-12),
        above_max.outcome(name, 1e-12, "residual is the largest excursion outside [0, ln_q(n)]"),
    ]


def _entropy_monotone(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "entropy nonincreasing in q"
    rng = _stream(seed, name)
    qs = [round(0.1 * i, 10) for i in range(51)]
    worst = _Worst()
    for _ in range(100):
        x = _draw(rng, 2, n_max)
        values = np.array([entropy(q, x) for q in qs])
        rise = np.diff(values)
        i = int(np.argmax(rise))
        worst.update(float(rise[i]), q=qs[i], x=x)
    return [worst.outcome(name, 1e-12, "residual is the largest increase")]


def _decomposition(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "complexity = entropy + divergence"
    rng = _stream(seed, name)
    worst = _Worst()
    for _ in range(1000):
        x, y = _pair(rng, 2, n_max)
        for q in SOLVER_QS:
            phi, h = float(complexity(q, x, y)), entropy(q, x)
            d = float(divergence(q, x, y))
            ulp = float(np.spacing(max(abs(phi), abs(h))))
            worst.update(abs(phi - (h + d)) / ulp, q=q, x=x, y=y)
    return [worst.outcome(name, 1.0, "residual in ulps")]


# Variational ----------------------------------------------------------------


def _first_order(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "first-order identity at y = x"
    rng = _stream(seed, name)
    worst = _Worst()
    for q in SOLVER_QS:
        for _ in range(50):
            x = _draw(rng, 2, n_max)
            worst.update(float(np.max(np.abs(complexity_gradient(q, x, x) + 1.0))), q=q, x=x)
    return [worst.outcome(name, 1e-10)]


def _finite_differences(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "gradient against finite differences"
    rng = _stream(seed, name)
    worst = _Worst()
    for i in range(100):
        q = SOLVER_QS[i % len(SOLVER_QS)]
        x = _draw(rng, 2, min(n_max, 8))
        n = len(x)
        y_probs = 0.5 * uniform(n).probs + 0.5 * random_distribution(n, int(rng.integers(2**32))).probs
        y = make_distribution(x.alphabet, y_probs, normalize=True)
        analytic = complexity_gradient(q, x, y)
        numeric = finite_difference_gradient(lambda v: complexity_value(q, x.probs, v), y.probs)
        error = float(np.max(np.abs(analytic - numeric))) / max(1.0, float(np.max(np.abs(analytic))))
        worst.update(error, q=q, x=x, y=y)
    return [worst.outcome(name, 1e-6, "relative error, central step 1e-6")]


def _solver(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "solver reaches the truth"
    rng = _stream(seed, name)
    truths = [random_distribution(n, int(rng.integers(2**32))) for n in range(2, n_max + 1) for _ in range(10)]
    gap, distance, descent, repulsion = _Worst(), _Worst(), _Worst(), _Worst()
    unconverged = 0
    for q in SOLVER_QS:
        for x, result in zip(truths, minimize_many(q, truths, SolverConfig(), jobs)):
            if not result.converged:
                unconverged += 1
                gap.update(math.inf, q=q, x=x, status=result.status)
                continue
            gap.update(abs(result.minimum_value - entropy(q, x)), q=q, x=x)
            distance.update(float(np.max(np.abs(result.minimizer.probs - x.probs))), q=q, x=x)
            rises = int(np.count_nonzero(np.diff(np.array(result.objective_trace)) >= 0.0))
            descent.update(rises, q=q, x=x)
            if q <= 1.0:
                repulsion.update(1e-15 - result.min_coordinate, q=q, x=x)
    detail = f"{len(truths)} truths per q, {unconverged} unconverged"
    return [
        gap.outcome(name, 1e-9, detail),
        distance.outcome("solver minimiser close to the truth", 1e-6),
        descent.outcome("solver trace strictly decreasing", 0.0, "residual counts non-decreasing steps"),
        repulsion.outcome("solver stays off the boundary for q <= 1", 0.0),
    ]


def _oracle(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    name = "solver agrees with the grid oracle"
    rng = _stream(seed, name)
    agreement, floor, location = _Worst(), _Worst(), _Worst()
    for q in ORACLE_QS:
        truths = [random_distribution(n, int(rng.integers(2**32))) for n in (2, 3) for _ in range(10)]
        for x, result in zip(truths, minimize_many(q, truths, SolverConfig(), jobs)):
            best, value = brute_force_minimum(q, x, ORACLE_STEP)
            h = entropy(q, x)
            floor.update(h - value, q=q, x=x)
            location.update(float(np.max(np.abs(best.probs - x.probs))) - ORACLE_STEP, q=q, x=x)
            spread = float(np.max(np.abs(best.probs - result.minimizer.probs))) - ORACLE_STEP - 1e-6
            agreement.update(max(spread, result.minimum_value - value - 1e-9), q=q, x=x, oracle=best)
    return [
        agreement.outcome(name, 1e-12),
        floor.outcome("grid values never undercut the entropy", 1e-12),
        location.outcome("grid minimiser within one step of the truth", 1e-12),
        _full_simplex(rng),
    ]


def _full_simplex(rng: np.random.Generator) -> CheckOutcome:
    """Sparse truths on the whole simplex, where off-support mass is allowed."""
    worst = _Worst()
    for q in (1.5, 2.0, 3.0):
        for _ in range(10):
            x = random_distribution(3, int(rng.integers(2**32)), 2)
            best, value = brute_force_minimum(q, x, ORACLE_STEP, restrict_to_support=False)
            distance = float(np.max(np.abs(best.probs - x.probs))) - ORACLE_STEP
            worst.update(max(distance, entropy(q, x) - value), q=q, x=x, oracle=best)
    return worst.outcome("full-simplex grid minimiser within one step of the truth for q > 1", 1e-12)


def _uniqueness(seed: int, n_max: int, jobs: int) -> List[CheckOutcome]:
    outcomes = []
    pair_truth = make_distribution(("s0", "s1"), PAIR_TRUTH)
    for q in ORACLE_QS:
        check = principle_holds(GenericPair.canonical(q), pair_truth, PAIR_GRID_STEP)
        outcomes.append(
            CheckOutcome(
                f"canonical pair at q={q:g} is minimised at the truth",
                check.holds,
                max(0.0, check.truth_value - check.best_value),
                None if check.holds else {"counterexample": _plain(check.counterexample)},
            )
        )
    decoy_truth = make_distribution(("s0", "s1"), DECOY_TRUTH)
    beaten = 0
    witnesses = []
    for pair in DECOY_PAIRS:
        check = principle_holds(pair, decoy_truth, PAIR_GRID_STEP)
        if not check.holds:
            beaten += 1
            witnesses.append(
                {
                    "pair": pair.label,
                    "x": list(DECOY_TRUTH),
                    "counterexample": _plain(check.counterexample),
                    "gain": check.truth_value - check.best_value,
                }
            )
    outcomes.append(
        CheckOutcome(
            "decoy pairs miss the truth",
            beaten >= 2,
            float(len(DECOY_PAIRS) - beaten),
            {"decoys": witnesses},
            f"{beaten} of {len(DECOY_PAIRS)} decoys beaten",
        )
    )
    return outcomes


Check = Callable[[int, int, int], List[CheckOutcome]]

SUITES: Dict[str, List[Check]] = {
    CONSISTENCY: [_weak_consistency, _strong_witnesses, _strong_holds, _strong_grid, _soundness],
    QUANTITIES: [
        _tsallis_closed_form,
        _classical_reduction,
        _divergence_sign,
        _pseudo_additivity,
        _q_zero_regime,
        _bregman_form,
        _entropy_bounds,
        _entropy_monotone,
        _decomposition,
    ],
    VARIATIONAL: [_first_order, _finite_differences, _solver, _oracle, _uniqueness],
}


def run_suite(
    name: str, seed: int = 0, n_max: int = DEFAULT_N_MAX, jobs: int = 1
) -> List[CheckOutcome]:
    """Run one suite (or ``"all"``) and return every check outcome in order."""
    if name not in SUITE_NAMES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    if not 2 <= n_max <= MAX_N:
        raise DomainError(f"n_max must lie in [2, {MAX_N}], got {n_max!r}")
    names = [CONSISTENCY, QUANTITIES, VARIATIONAL] if name == ALL else [name]
    outcomes: List[CheckOutcome] = []
    for suite in names:
        logger.info("running the %s suite (seed=%d, n_max=%d)", suite, seed, n_max)
        for check in SUITES[suite]:
            for outcome in check(seed, n_max, jobs):
                if outcome.passed:
                    logger.info("PASS %s (residual %r)", outcome.name, outcome.residual)
                else:
                    logger.warning("FAIL %s (residual %r)", outcome.name, outcome.residual)
                outcomes.append(outcome)
    return outcomes
