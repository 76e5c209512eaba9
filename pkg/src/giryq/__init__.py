"""Exact probabilistic quantifiers over finite Markov kernels.

The library models finite measurable spaces, rational-valued probability
distributions and Markov kernels, probabilistic predicates with their
entailment order, and the existential/universal quantifiers along a kernel
in two regimes: exact fiber enumeration and exact linear programming over
the fiber polytope of the lifted kernel.  A seeded law harness checks the
algebraic laws on random instances, and a small CLI evaluates scenario
files.
"""

from .errors import (
    DimensionMismatchError,
    DuplicateAtomError,
    GiryqError,
    MassNotOneError,
    NegativeWeightError,
    NotDeterministicError,
    ProbeSetIncompleteError,
    RationalFormatError,
    ScenarioError,
    ScenarioParseError,
    ScenarioReferenceError,
    ScenarioValidationError,
    SpaceMismatchError,
    ValueOutOfRangeError,
)
from .kernels import (
    Kernel,
    PointFunction,
    compose,
    deterministic_kernel,
    extract_point_function,
    identity_kernel,
    image_measure,
    is_deterministic,
    lift,
    mixture,
    pushforward,
)
from .lp import LinearProgram, LpSolution, LpStatus, Sense, lp_solve
from .measures import (
    Dist,
    FiniteSpace,
    FinSuppMeasure,
    Rational,
    SignedMeasure,
    format_rational,
    parse_rational,
    tv_metric,
    tv_norm,
)
from .predicates import (
    LiftedPredicate,
    Predicate,
    SimplexPredicate,
    TableSimplexPredicate,
    entails,
    expectation,
    substitute,
)
from .quantifiers import (
    AdjunctionReport,
    GaloisReport,
    PointBounds,
    QuantifierResult,
    Regime,
    check_adjunction_bounds,
    check_galois,
    exists_composite,
    exists_fiber,
    exists_lifted,
    forall_composite,
    forall_fiber,
    forall_lifted,
)
from .scenario import (
    Query,
    Scenario,
    load_scenario,
    parse_scenario,
    scenario_from_dict,
    scenario_to_dict,
    serialize_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "AdjunctionReport",
    "DimensionMismatchError",
    "Dist",
    "DuplicateAtomError",
    "FinSuppMeasure",
    "FiniteSpace",
    "GaloisReport",
    "GiryqError",
    "Kernel",
    "LiftedPredicate",
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "MassNotOneError",
    "NegativeWeightError",
    "NotDeterministicError",
    "PointBounds",
    "PointFunction",
    "Predicate",
    "ProbeSetIncompleteError",
    "Query",
    "QuantifierResult",
    "Rational",
    "RationalFormatError",
    "Regime",
    "Scenario",
    "ScenarioError",
    "ScenarioParseError",
    "ScenarioReferenceError",
    "ScenarioValidationError",
    "Sense",
    "SignedMeasure",
    "SimplexPredicate",
    "SpaceMismatchError",
    "TableSimplexPredicate",
    "ValueOutOfRangeError",
    "check_adjunction_bounds",
    "check_galois",
    "compose",
    "deterministic_kernel",
    "entails",
    "exists_composite",
    "exists_fiber",
    "exists_lifted",
    "expectation",
    "extract_point_function",
    "forall_composite",
    "forall_fiber",
    "forall_lifted",
    "format_rational",
    "identity_kernel",
    "image_measure",
    "is_deterministic",
    "lift",
    "load_scenario",
    "lp_solve",
    "mixture",
    "parse_rational",
    "parse_scenario",
    "pushforward",
    "scenario_from_dict",
    "scenario_to_dict",
    "serialize_scenario",
    "substitute",
    "tv_metric",
    "tv_norm",
]
