"""
Exact evaluation for the docuscle model.

Classical states and events, density matrices and projectors, the boost
and LTP formulas for both, and seeded random instance generators.
"""

from .classical import (
    ClassicalState,
    Event,
    boost_indicators,
    cond_prob,
    condition,
    ltp_residual,
    outcomes_from_uniforms,
    prob,
    sample_outcome,
)
from .quantum import (
    DensityMatrix,
    Projector,
    boost_condition,
    born_prob,
    cond_given_r,
    embed_classical,
    expansion_prob,
    lueders_update,
    ltp_residual_q,
    quantum_equivalence,
)
from .random_instances import (
    derive_generator,
    random_classical_state,
    random_density,
    random_event,
    random_projector,
    random_pure_state,
)
from .tolerances import BOOST_MARGIN, CLASSICAL_TOL, NULL_TOL, QUANTUM_TOL

__all__ = [
    "ClassicalState",
    "Event",
    "prob",
    "cond_prob",
    "condition",
    "ltp_residual",
    "boost_indicators",
    "sample_outcome",
    "outcomes_from_uniforms",
    "DensityMatrix",
    "Projector",
    "born_prob",
    "lueders_update",
    "cond_given_r",
    "expansion_prob",
    "boost_condition",
    "quantum_equivalence",
    "ltp_residual_q",
    "embed_classical",
    "derive_generator",
    "random_density",
    "random_pure_state",
    "random_projector",
    "random_classical_state",
    "random_event",
    "CLASSICAL_TOL",
    "QUANTUM_TOL",
    "NULL_TOL",
    "BOOST_MARGIN",
]
