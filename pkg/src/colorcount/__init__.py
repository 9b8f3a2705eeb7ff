"""Approximate counting of list colourings on graphs of maximum degree 3."""

__version__ = "0.1.0"

from .counter import CountResult, DepthPolicy, FixedDepth, TargetEpsilon, approx_count
from .errors import (
    CapacityError,
    ColorCountError,
    ContractError,
    DomainError,
    InputError,
    InvalidInstanceError,
    UnsatisfiableError,
)
from .estimator import Estimator, EstimatorConfig, classify_boundary, estimate_marginal
from .exact import count_colorings, exact_marginal, exact_marginals
from .instance import ColorLists, Graph, Instance, check_reachable

__all__ = [
    "CapacityError", "ColorCountError", "ColorLists", "ContractError", "CountResult",
    "DepthPolicy", "DomainError", "Estimator", "EstimatorConfig", "FixedDepth", "Graph",
    "InputError", "Instance", "InvalidInstanceError", "TargetEpsilon", "UnsatisfiableError",
    "approx_count", "check_reachable", "classify_boundary", "count_colorings",
    "estimate_marginal", "exact_marginal", "exact_marginals",
]
