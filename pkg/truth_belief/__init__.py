"""truth_belief

Truth meets belief: q-deformed complexity, entropy and divergence.

A truth ``x`` and a belief ``y`` interact through ``pi_q`` and every event is
charged by the coder ``kappa_q = ln_q(1/.)``. The package provides the
canonical pair (`qcore`), probability vectors (`dist`), the derived
quantities (`quantities`), the interaction axioms (`consistency`) and a
numerical check that the complexity is smallest when belief equals truth
(`variational`).
"""

__version__ = "0.1.0"

from .exceptions import ConvergenceError, DomainError, ParseError, TruthBeliefError
from .qcore import ExtendedReal, QParam, coder, interaction, q_exp, q_log
from .dist import (
    Alphabet,
    Distribution,
    make_distribution,
    point_mass,
    product_distribution,
    random_distribution,
    support_contains,
    uniform,
)
from .quantities import (
    bregman_divergence,
    complexity,
    divergence,
    entropy,
    frustration,
    max_entropy,
    pseudo_additivity_residual,
)
from .consistency import (
    ConsistencyWitness,
    find_strong_violation,
    soundness_residual,
    strong_consistency_check,
    weak_consistency_residual,
)
from . import variational as variational

__all__ = [
    "__version__",
    "TruthBeliefError",
    "DomainError",
    "ParseError",
    "ConvergenceError",
    "ExtendedReal",
    "QParam",
    "q_log",
    "q_exp",
    "coder",
    "interaction",
    "Alphabet",
    "Distribution",
    "make_distribution",
    "uniform",
    "point_mass",
    "random_distribution",
    "product_distribution",
    "support_contains",
    "complexity",
    "entropy",
    "divergence",
    "frustration",
    "max_entropy",
    "bregman_divergence",
    "pseudo_additivity_residual",
    "ConsistencyWitness",
    "weak_consistency_residual",
    "strong_consistency_check",
    "find_strong_violation",
    "soundness_residual",
    "variational",
]
