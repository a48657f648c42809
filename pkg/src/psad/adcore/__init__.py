"""Abstract-scalar evaluation engine with operation counting."""
from .evaluate import (ExtendedFunction, JacobianStructure, column_sums,
                       default_step, eval_components, eval_compressed_hessian,
                       eval_compressed_jacobian, eval_hessian_vector,
                       eval_sparse_jacobian, structure_at)
from .scalars import (DualVector, EvalContext, Lanes, OpCounter, PlainValue,
                      SecondOrderDual, SparseDual, concat, constant_like, cos,
                      exp, fabs, log, power, sin, sqrt, where)

__all__ = [
    "DualVector", "EvalContext", "ExtendedFunction", "JacobianStructure",
    "Lanes", "OpCounter", "PlainValue", "SecondOrderDual", "SparseDual",
    "column_sums", "concat", "constant_like", "cos", "default_step",
    "eval_components", "eval_compressed_hessian", "eval_compressed_jacobian",
    "eval_hessian_vector", "eval_sparse_jacobian", "exp", "fabs", "log",
    "power", "sin", "sqrt", "structure_at", "where",
]
