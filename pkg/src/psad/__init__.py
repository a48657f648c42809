"""Gradients and sparse Hessians of partially separable functions.

Forward-mode automatic differentiation over a user-supplied extended
function, column partitioning and symmetric colorings for compression, and
a benchmark harness reporting cost ratios against the function evaluation.
"""
from .adcore import (ExtendedFunction, OpCounter, eval_components,
                     eval_compressed_hessian, eval_compressed_jacobian,
                     eval_hessian_vector, eval_sparse_jacobian)
from .errors import DomainError, PlanInfeasibleError
from .pattern import SparsityPattern

__version__ = "0.1.0"

__all__ = [
    "DomainError", "ExtendedFunction", "OpCounter", "PlanInfeasibleError",
    "SparsityPattern", "eval_components", "eval_compressed_hessian",
    "eval_compressed_jacobian", "eval_hessian_vector", "eval_sparse_jacobian",
]
