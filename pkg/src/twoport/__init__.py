"""Exact two-port electrical networks, Pi-equivalent reductions and rectangle tilings."""
from .network import (
    Edge,
    NamedShape,
    Network,
    NetworkError,
    TwoPortNetwork,
    ValidationReport,
    canonical_key,
    classify_shape,
    validate,
)
from .reduction import BudgetExhausted, ReductionResult, reduce, reduce_rational_floor, verify_counterexample
from .response import ResponseSummary, pi_equivalent, response_equivalent, summarize
from .scalars import FieldMismatchError, Scalar, ScalarParseError, field, get_field, parse_scalar, set_field, sqrt_d
from .solver import Circuit, Solution, energy_identity, solve_terminal, solve_two_port
from .transforms import (
    Move,
    MoveError,
    apply_box_h,
    apply_box_h_inverse,
    apply_delta_y,
    apply_parallel,
    apply_series,
    apply_y_delta,
    merge_same_potential,
    replay,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "Circuit",
    "Edge",
    "FieldMismatchError",
    "Move",
    "MoveError",
    "NamedShape",
    "Network",
    "NetworkError",
    "ReductionResult",
    "ResponseSummary",
    "Scalar",
    "ScalarParseError",
    "Solution",
    "TwoPortNetwork",
    "ValidationReport",
    "apply_box_h",
    "apply_box_h_inverse",
    "apply_delta_y",
    "apply_parallel",
    "apply_series",
    "apply_y_delta",
    "canonical_key",
    "classify_shape",
    "energy_identity",
    "field",
    "get_field",
    "merge_same_potential",
    "parse_scalar",
    "pi_equivalent",
    "reduce",
    "reduce_rational_floor",
    "replay",
    "response_equivalent",
    "set_field",
    "solve_terminal",
    "solve_two_port",
    "sqrt_d",
    "summarize",
    "validate",
    "verify_counterexample",
]
