"""Sweeps of an extended function under the scalar realizations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import DomainError
from ..pattern import SparsityPattern
from .scalars import (DualVector, EvalContext, Lanes, OpCounter, PlainValue,
                      SecondOrderDual, SparseDual, concat)


@dataclass
class ExtendedFunction:
    """A partially separable function given by its component vector.

    ``evaluate`` maps an ``n``-vector of scalars (any :class:`Lanes`
    realization) to the ``m``-vector of component values. ``m`` may be left
    as ``None`` and is filled in by the first evaluation.
    """

    n: int
    evaluate: Callable
    m: Optional[int] = None
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        self.lower = (np.full(self.n, -np.inf) if self.lower is None
                      else np.broadcast_to(np.asarray(self.lower, dtype=float), (self.n,)).copy())
        self.upper = (np.full(self.n, np.inf) if self.upper is None
                      else np.broadcast_to(np.asarray(self.upper, dtype=float), (self.n,)).copy())
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __call__(self, x):
        """f(x) = sum of the components."""
        return float(np.sum(eval_components(self, x)))


def _check_point(F, x):
    x = np.asarray(x, dtype=float).ravel()
    if x.size != F.n:
        raise ValueError(f"point has {x.size} entries, expected {F.n}")
    return x


def _sweep(F, xs):
    with np.errstate(all="ignore"):
        out = F.evaluate(xs)
        if isinstance(out, (list, tuple)):
            out = concat(out)
    if not isinstance(out, Lanes):
        out = concat([xs._constant(np.atleast_1d(np.asarray(out, dtype=float)))])
    if type(out) is not type(xs):
        raise TypeError("evaluate must return scalars of the input realization")
    if F.m is None:
        F.m = len(out)
    elif len(out) != F.m:
        raise ValueError(f"evaluate returned {len(out)} components, expected {F.m}")
    return out


def _check_values(values):
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        k = int(bad[0])
        raise DomainError(f"component {k} evaluated to {values[k]}", component=k)


def _check_lanes(deriv, rows=None):
    """Raise on the first non-finite derivative entry of a dense block."""
    bad = np.argwhere(~np.isfinite(deriv))
    if bad.size:
        k, g = (int(bad[0][0]), int(bad[0][1]))
        comp = k if rows is None else int(rows[k])
        raise DomainError(f"non-finite derivative in component {comp}, group {g}",
                          component=comp, group=g)


def eval_components(F, x, counter=None):
    """Component values ``f_E(x)``; sets ``F.m`` if it was unknown."""
    x = _check_point(F, x)
    ctx = EvalContext(F.n, counter)
    out = _sweep(F, PlainValue(x.copy(), ctx))
    _check_values(out.v)
    return out.v.copy()


def eval_compressed_jacobian(F, x, V, counter=None):
    """The ``m x p`` product ``f_E'(x) V`` by width-``p`` forward propagation."""
    x = _check_point(F, x)
    V = np.asarray(V, dtype=float)
    if V.ndim == 1:
        V = V[:, None]
    if V.shape[0] != F.n or V.shape[1] < 1:
        raise ValueError(f"seed must be {F.n} x p with p >= 1, got {V.shape}")
    ctx = EvalContext(F.n, counter)
    out = _sweep(F, DualVector(x.copy(), V, ctx))
    _check_values(out.v)
    B = np.array(out.d, dtype=float)
    _check_lanes(B)
    return B


def eval_sparse_jacobian(F, x, counter=None):
    """Sparse Jacobian by index-set propagation; no pattern needed up front.

    Returns ``(pattern, values)`` with ``values`` aligned to
    ``pattern.col_indices``. Entries whose partial cancels to zero stay.
    """
    x = _check_point(F, x)
    ctx = EvalContext(F.n, counter)
    n = F.n
    xs = SparseDual(x.copy(), np.arange(n + 1), np.arange(n), np.ones(n), ctx)
    out = _sweep(F, xs)
    _check_values(out.v)
    pattern = SparsityPattern(len(out), n, out.ptr.copy(), out.idx.copy())
    values = np.array(out.dat, dtype=float)
    if not np.all(np.isfinite(values)):
        k = int(np.flatnonzero(~np.isfinite(values))[0])
        comp = int(pattern.row_ids[k])
        raise DomainError(f"non-finite derivative in component {comp}",
                          component=comp, group=int(pattern.col_indices[k]))
    return pattern, values


def column_sums(pattern, values, counter=None):
    """``J^T e`` for a sparse ``J``."""
    if counter is not None:
        counter.record(add=pattern.nnz)
    return np.bincount(pattern.col_indices, weights=values, minlength=pattern.cols)


@dataclass(frozen=True)
class JacobianStructure:
    """Pattern of ``f_E'`` plus a structurally orthogonal column grouping.

    ``ngrp`` holds 1-based group ids; ``p`` is the group count.
    """

    pattern: SparsityPattern
    ngrp: np.ndarray
    p: int

    @property
    def seed(self):
        V = np.zeros((self.pattern.cols, self.p))
        V[np.arange(self.pattern.cols), self.ngrp - 1] = 1.0
        return V

    def recover(self, B):
        """Jacobian values at the pattern entries from ``B = J V``."""
        return B[self.pattern.row_ids, self.ngrp[self.pattern.col_indices] - 1]


def structure_at(F, x):
    """Structural Jacobian pattern at ``x`` and a greedy column grouping."""
    from ..coloring import partition_columns, smallest_last_order

    pattern, _ = eval_sparse_jacobian(F, x)
    part = partition_columns(pattern, smallest_last_order(pattern))
    return JacobianStructure(pattern, part.ngrp, part.p)


def _gradient(F, x, structure, counter):
    if structure is None:
        pattern, values = eval_sparse_jacobian(F, x, counter)
        return column_sums(pattern, values, counter)
    B = eval_compressed_jacobian(F, x, structure.seed, counter)
    return column_sums(structure.pattern, structure.recover(B), counter)


def default_step(x):
    """Forward-difference step ``sqrt(eps) * (1 + ||x||_inf)``."""
    return float(np.sqrt(np.finfo(float).eps) * (1.0 + np.max(np.abs(x), initial=0.0)))


def _exact_hessian_products(F, x, directions, structure, counter):
    """One forward-over-forward sweep per column of ``directions``."""
    n = F.n
    V = structure.seed
    rows = structure.pattern.row_ids
    cols = structure.pattern.col_indices
    lanes = structure.ngrp[cols] - 1
    W = np.empty((n, directions.shape[1]))
    for k in range(directions.shape[1]):
        ctx = EvalContext(n, counter)
        xs = SecondOrderDual(x.copy(), V, directions[:, k].copy(),
                             np.zeros((n, structure.p)), ctx)
        out = _sweep(F, xs)
        _check_values(out.v)
        _check_lanes(out.s)
        contrib = out.s[rows, lanes]
        ctx.counter.record(add=contrib.size)
        W[:, k] = np.bincount(cols, weights=contrib, minlength=n)
    return W


def eval_hessian_vector(F, x, v, mode="exact", step=None, structure=None, counter=None):
    """``hess f(x) v``.

    ``exact`` runs one :class:`SecondOrderDual` sweep whose ``first`` lanes
    follow the column grouping of ``structure`` (computed at ``x`` when not
    given), so ``second`` holds compressed rows of ``hess f_k v``.
    ``difference`` returns ``(grad f(x + h u) - grad f(x)) / h * ||v||``
    with ``u = v / ||v||``.
    """
    x = _check_point(F, x)
    v = np.asarray(v, dtype=float).ravel()
    if v.size != F.n:
        raise ValueError(f"direction has {v.size} entries, expected {F.n}")
    return eval_compressed_hessian(F, x, v[:, None], mode, step, structure, counter)[:, 0]


def eval_compressed_hessian(F, x, V, mode="exact", step=None, structure=None, counter=None):
    """The ``n x p`` product ``hess f(x) V``, one Hessian-vector product per column."""
    x = _check_point(F, x)
    V = np.asarray(V, dtype=float)
    if V.ndim == 1:
        V = V[:, None]
    if V.shape[0] != F.n:
        raise ValueError(f"seed must have {F.n} rows, got {V.shape[0]}")
    if mode == "exact":
        if structure is None:
            structure = structure_at(F, x)
        return _exact_hessian_products(F, x, V, structure, counter)
    if mode != "difference":
        raise ValueError(f"unknown mode {mode!r}")
    h = default_step(x) if step is None else float(step)
    if not h > 0:
        raise ValueError("difference mode needs step > 0")
    norms = np.linalg.norm(V, axis=0)
    if np.any(norms == 0):
        raise ValueError("difference mode needs nonzero directions")
    g0 = _gradient(F, x, structure, counter)
    W = np.empty((F.n, V.shape[1]))
    for k in range(V.shape[1]):
        g1 = _gradient(F, x + h * (V[:, k] / norms[k]), structure, counter)
        W[:, k] = (g1 - g0) / h * norms[k]
    if counter is not None:
        counter.record(add=W.size, div=W.size, mul=W.size)
    return W


__all__ = [
    "ExtendedFunction", "JacobianStructure", "OpCounter", "column_sums",
    "default_step", "eval_components", "eval_compressed_hessian",
    "eval_compressed_jacobian", "eval_hessian_vector", "eval_sparse_jacobian",
    "structure_at",
]
