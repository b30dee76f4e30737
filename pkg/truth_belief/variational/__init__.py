from .config import RANDOM_ON_SUPPORT, UNIFORM_ON_SUPPORT, SolverConfig, SolverResult
from .gradient import complexity_gradient, excess_gradient, finite_difference_gradient
from .projection import project_simplex
from .solver import minimize_complexity, minimize_many
from .oracle import brute_force_minimum, iter_simplex_grid, simplex_grid
from .pairs import DECOY_PAIRS, GenericPair, PrincipleCheck, principle_holds

__all__ = [
    "SolverConfig",
    "SolverResult",
    "UNIFORM_ON_SUPPORT",
    "RANDOM_ON_SUPPORT",
    "complexity_gradient",
    "excess_gradient",
    "finite_difference_gradient",
    "project_simplex",
    "minimize_complexity",
    "minimize_many",
    "brute_force_minimum",
    "simplex_grid",
    "iter_simplex_grid",
    "GenericPair",
    "PrincipleCheck",
    "principle_holds",
    "DECOY_PAIRS",
]
