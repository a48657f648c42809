"""Gradient and Hessian pipelines for partially separable functions.

The gradient is ``f_E'(x)^T e``: the column sums of the extended Jacobian.
``gradient_sparse`` gets the Jacobian by index-set propagation and needs no
pattern. :func:`prepare_hybrid` learns the pattern once at the starting
point; afterwards ``gradient_compressed`` and :func:`hessian` work from
compressed products only.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .adcore import (ExtendedFunction, JacobianStructure, column_sums, concat,
                     eval_components, eval_compressed_hessian,
                     eval_compressed_jacobian, eval_sparse_jacobian)
from .coloring import (ColumnPartition, SeedMatrix, build_seed, order_columns,
                       partition_columns, recover_jacobian)
from .pattern import SparsityPattern
from .sparsity import (SymmetricPattern, count_hessian_nnz, count_jacobian_nnz,
                       detect_jacobian_pattern, jtj_pattern)
from .symcolor import (acyclic_coloring, color_seed, plan_recovery,
                       recover_hessian, star_coloring)

__all__ = [
    "HybridState", "PatternMissWarning", "gradient_compressed",
    "gradient_sparse", "hessian", "lagrangian_extended", "prepare_hybrid",
]

log = logging.getLogger(__name__)

METHODS = ("direct", "substitution")


class PatternMissWarning(UserWarning):
    """The Jacobian at a later point has entries outside the stored pattern."""


@dataclass(frozen=True, eq=False)
class HybridState:
    """Everything learned at the starting point and reused afterwards."""

    m: int
    pattern: SparsityPattern
    partition: ColumnPartition
    seed: SeedMatrix
    hessian_pattern: SymmetricPattern
    colorings: dict
    plans: dict
    nnz_jacobian: int
    nnz_hessian: int

    @property
    def n(self):
        return self.pattern.cols

    @property
    def rho_max(self):
        return self.pattern.rho_max

    @property
    def p(self):
        return self.partition.p

    @property
    def structure(self):
        return JacobianStructure(self.pattern, self.partition.ngrp, self.partition.p)

    @property
    def hessian_plan(self):
        return self.plans.get("direct")

    def p_hessian(self, method):
        return self.colorings[method].p


def gradient_sparse(F, x, counter=None):
    """Gradient from the sparse Jacobian of the extended function."""
    pattern, values = eval_sparse_jacobian(F, x, counter)
    return column_sums(pattern, values, counter)


def _check_pattern(F, x, state):
    pattern, values = eval_sparse_jacobian(F, x)
    live = values != 0.0
    n = pattern.cols
    found = pattern.row_ids[live] * n + pattern.col_indices[live]
    known = state.pattern.row_ids * n + state.pattern.col_indices
    missing = found[~np.isin(found, known)]
    if missing.size:
        pairs = [(int(k // n), int(k % n)) for k in missing[:5]]
        warnings.warn(PatternMissWarning(
            f"{missing.size} Jacobian entries outside the stored pattern, e.g. {pairs}"),
            stacklevel=3)
    return missing.size


def gradient_compressed(F, x, state, counter=None, debug=False):
    """Gradient from one width-``p`` sweep and direct recovery.

    Contributions outside ``state.pattern`` are dropped; ``debug=True``
    compares against a sparse sweep and warns about them.
    """
    if debug:
        _check_pattern(F, x, state)
    B = eval_compressed_jacobian(F, x, state.seed.dense(), counter)
    values = recover_jacobian(state.pattern, state.partition, B)
    return column_sums(state.pattern, values, counter)


def prepare_hybrid(F, x0, seed=0, ordering="smallest-last"):
    """Learn the structure of ``F`` at ``x0``.

    Evaluates ``f_E(x0)`` (which fixes ``m``), counts the Jacobian entries,
    detects the pattern at a perturbed point, derives the Hessian pattern
    and its entry count, partitions the columns and builds both symmetric
    colorings with their recovery plans.
    """
    x0 = np.asarray(x0, dtype=float)
    m = eval_components(F, x0).size
    nnz_jac = count_jacobian_nnz(F, x0)
    pattern = detect_jacobian_pattern(F, x0, seed)
    nnz_hess = count_hessian_nnz(pattern)
    hpattern = jtj_pattern(pattern)
    if not hpattern.has_full_diagonal():
        hpattern = hpattern.with_diagonal()
    partition = partition_columns(pattern, order_columns(pattern, ordering))
    colorings = {"direct": star_coloring(hpattern),
                 "substitution": acyclic_coloring(hpattern)}
    plans = {k: plan_recovery(hpattern, c) for k, c in colorings.items()}
    log.debug("prepared %s: m=%d nnz(J)=%d rho_max=%d p=%d p_H=%d/%d",
              F.name or "function", m, nnz_jac, pattern.rho_max, partition.p,
              colorings["direct"].p, colorings["substitution"].p)
    return HybridState(m, pattern, partition, build_seed(partition), hpattern,
                       colorings, plans, nnz_jac, nnz_hess)


def hessian(F, x, state, method="direct", mode="exact", step=None, counter=None):
    """Sparse Hessian from the compressed Hessian ``hess f(x) V``.

    ``V`` is the color indicator of the chosen symmetric coloring; the
    result lives on ``state.hessian_pattern``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    coloring = state.colorings[method]
    W = eval_compressed_hessian(F, x, color_seed(coloring), mode, step,
                                state.structure, counter)
    return recover_hessian(state.plans[method], W, counter)


def lagrangian_extended(fE, cE, u):
    """Extended function of ``L(x, u) = f(x) + <u, c(x)>``.

    Its components are those of ``fE`` followed by ``u_k c_k(x)``.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float)).ravel()
    if cE is None or cE.m == 0:
        if u.size:
            raise ValueError("multipliers given but there are no constraints")
        return fE
    if cE.n != fE.n:
        raise ValueError(f"objective has {fE.n} variables, constraints {cE.n}")
    if cE.m is not None and cE.m != u.size:
        raise ValueError(f"{u.size} multipliers for {cE.m} constraints")

    def evaluate(x):
        fx = fE.evaluate(x)
        cx = cE.evaluate(x)
        if isinstance(cx, (list, tuple)):
            cx = concat(cx)
        if len(cx) != u.size:
            raise ValueError(f"{u.size} multipliers for {len(cx)} constraints")
        if len(cx) == 0:
            return fx
        return concat([fx, cx * u])

    m = None if fE.m is None or cE.m is None else fE.m + cE.m
    return ExtendedFunction(fE.n, evaluate, m, np.maximum(fE.lower, cE.lower),
                            np.minimum(fE.upper, cE.upper),
                            name=f"lagrangian({fE.name or 'f'})")
