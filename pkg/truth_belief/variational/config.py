from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple, Union

from ..dist import Distribution
from ..exceptions import DomainError

UNIFORM_ON_SUPPORT = "uniform-on-support"
RANDOM_ON_SUPPORT = "random-on-support"

InitialPoint = Union[Distribution, str]


@dataclass(frozen=True)
class SolverConfig:
    """Settings of the projected-gradient solver.

    Example:
        config = SolverConfig(value_tolerance=1e-10)
        result = minimize_complexity(2.0, x, config)
    """

    max_iterations: int = 100_000
    step_tolerance: float = 1e-10
    value_tolerance: float = 1e-9
    initial_point: InitialPoint = UNIFORM_ON_SUPPORT
    seed: int = 0
    # Line search
    initial_step: float = 1.0
    spectral_steps: bool = True  # Barzilai-Borwein trial step after iteration 1
    armijo_slope: float = 1e-4
    backtrack_factor: float = 0.5

    def __post_init__(self) -> None:
        if isinstance(self.max_iterations, bool) or int(self.max_iterations) != self.max_iterations:
            raise DomainError(f"max_iterations must be an integer, got {self.max_iterations!r}")
        if self.max_iterations < 1:
            raise DomainError(f"max_iterations must be at least 1, got {self.max_iterations!r}")
        for name in ("step_tolerance", "value_tolerance"):
            value = getattr(self, name)
            if not 0.0 < value <= 1e-2:
                raise DomainError(f"{name} must lie in (0, 1e-2], got {value!r}")
        if isinstance(self.initial_point, str) and self.initial_point not in (
            UNIFORM_ON_SUPPORT,
            RANDOM_ON_SUPPORT,
        ):
            raise DomainError(f"unknown initial point {self.initial_point!r}")
        if not self.initial_step > 0.0:
            raise DomainError(f"initial_step must be positive, got {self.initial_step!r}")
        if not 0.0 < self.armijo_slope < 1.0:
            raise DomainError(f"armijo_slope must lie in (0, 1), got {self.armijo_slope!r}")
        if not 0.0 < self.backtrack_factor < 1.0:
            raise DomainError(
                f"backtrack_factor must lie in (0, 1), got {self.backtrack_factor!r}"
            )


@dataclass(frozen=True)
class SolverResult:
    minimizer: Distribution
    minimum_value: float
    iterations_used: int
    converged: bool
    first_order_residual: float
    degenerate_minimum: bool = False
    status: str = ""
    # Phi - H_q(x) after every accepted step, starting point first
    objective_trace: Tuple[float, ...] = field(default=(), repr=False)
    min_coordinate: float = 1.0

    def diagnostics(self) -> Dict[str, object]:
        return {
            "iterations_used": self.iterations_used,
            "converged": self.converged,
            "first_order_residual": self.first_order_residual,
            "degenerate_minimum": self.degenerate_minimum,
            "status": self.status,
            "min_coordinate": self.min_coordinate,
        }
