"""Closed-form isotropic correlation function of an arbitrary triangle."""

from .cf_eval import (
    CFValue,
    CorrelationFunction,
    chain_constants,
    correlation,
    eval_profile,
    first_derivative,
    second_derivative,
    third_derivative,
)
from .errors import (
    DomainError,
    NonPositiveSide,
    NonTriangle,
    QuadratureFailure,
    SingularPoint,
    TriangleCFError,
)
from .formfactor import form_factor, normalization_integral
from .geometry import (
    BreakpointLadder,
    ShapeCase,
    SideTriple,
    TriangleMetrics,
    breakpoints,
    classify,
    derive_metrics,
)
from .omega import AngularConstants, angular_constants, omega1, omega2, omega_cap

__version__ = "0.1.0"

__all__ = [
    "AngularConstants",
    "BreakpointLadder",
    "CFValue",
    "CorrelationFunction",
    "DomainError",
    "NonPositiveSide",
    "NonTriangle",
    "QuadratureFailure",
    "ShapeCase",
    "SideTriple",
    "SingularPoint",
    "TriangleCFError",
    "TriangleMetrics",
    "angular_constants",
    "breakpoints",
    "chain_constants",
    "classify",
    "correlation",
    "derive_metrics",
    "eval_profile",
    "first_derivative",
    "form_factor",
    "normalization_integral",
    "omega1",
    "omega2",
    "omega_cap",
    "second_derivative",
    "third_derivative",
]
