"""Jacobian pattern detection and the derived Hessian pattern."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .adcore import eval_sparse_jacobian
from .adcore.evaluate import _check_point
from .pattern import SparsityPattern

__all__ = [
    "PerturbationWarning", "SparsityPattern", "SymmetricPattern",
    "count_hessian_nnz", "count_jacobian_nnz", "detect_jacobian_pattern",
    "jtj_pattern", "perturb_point",
]

PERTURB_MIN = 1e-6
PERTURB_MAX = 1e-4


class PerturbationWarning(UserWarning):
    """Some components could not be perturbed inside their bounds."""

    def __init__(self, message, indices):
        super().__init__(message)
        self.indices = indices


@dataclass(frozen=True, eq=False)
class SymmetricPattern:
    """Pattern of a symmetric ``n x n`` matrix, lower triangle stored."""

    n: int
    lower: SparsityPattern

    def __post_init__(self):
        if self.lower.rows != self.n or self.lower.cols != self.n:
            raise ValueError("lower pattern must be n x n")
        if np.any(self.lower.col_indices > self.lower.row_ids):
            raise ValueError("lower pattern has entries above the diagonal")

    @classmethod
    def from_pairs(cls, n, i, j):
        """Build from index pairs in either triangle; duplicates collapse."""
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        hi, lo = np.maximum(i, j), np.minimum(i, j)
        keys = np.unique(hi * n + lo)
        return cls._from_keys(n, keys)

    @classmethod
    def _from_keys(cls, n, keys):
        rows, cols = keys // max(n, 1), keys % max(n, 1)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=offsets[1:])
        return cls(n, SparsityPattern(n, n, offsets, cols))

    @classmethod
    def from_dense(cls, mask):
        mask = np.asarray(mask, dtype=bool)
        i, j = np.nonzero(mask | mask.T)
        return cls.from_pairs(mask.shape[0], i, j)

    @property
    def rows(self):
        """Row index of every stored (lower) entry."""
        return self.lower.row_ids

    @property
    def cols(self):
        return self.lower.col_indices

    @property
    def nnz_lower(self):
        return self.lower.nnz

    @property
    def nnz(self):
        """Entries of the full symmetric pattern."""
        diag = int(np.count_nonzero(self.rows == self.cols))
        return 2 * (self.nnz_lower - diag) + diag

    def has_full_diagonal(self):
        return int(np.count_nonzero(self.rows == self.cols)) == self.n

    def with_diagonal(self):
        d = np.arange(self.n)
        return SymmetricPattern.from_pairs(self.n, np.concatenate([self.rows, d]),
                                           np.concatenate([self.cols, d]))

    def entry_index(self):
        """Mapping ``(i, j) -> position`` of the lower entry, for ``i >= j``."""
        return {(int(i), int(j)): k for k, (i, j) in enumerate(zip(self.rows, self.cols))}

    def adjacency(self):
        """Neighbor lists (CSR) of the graph with an edge per off-diagonal entry."""
        off = self.rows != self.cols
        i, j = self.rows[off], self.cols[off]
        src = np.concatenate([i, j])
        dst = np.concatenate([j, i])
        order = np.lexsort((dst, src))
        ptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=self.n), out=ptr[1:])
        return ptr, dst[order]

    def full(self):
        """The full symmetric pattern as a :class:`SparsityPattern`."""
        i = np.concatenate([self.rows, self.cols])
        j = np.concatenate([self.cols, self.rows])
        return _keys_to_pattern(self.n, np.unique(i * self.n + j))

    def to_dense(self):
        mask = np.zeros((self.n, self.n), dtype=bool)
        mask[self.rows, self.cols] = True
        return mask | mask.T

    def __eq__(self, other):
        if not isinstance(other, SymmetricPattern):
            return NotImplemented
        return self.n == other.n and self.lower == other.lower

    def __repr__(self):
        return f"SymmetricPattern(n={self.n}, nnz={self.nnz})"


def _keys_to_pattern(n, keys):
    rows, cols = keys // n, keys % n
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=offsets[1:])
    return SparsityPattern(n, n, offsets, cols)


def perturb_point(x0, lower=None, upper=None, seed=0):
    """Random small perturbation ``(1 + e) x0 + e`` that stays in the box.

    Each ``|e_i|`` is uniform in ``[1e-6, 1e-4]``; its sign is random unless
    only one sign keeps the component inside ``[lower_i, upper_i]``.
    Components with ``lower_i == upper_i`` are returned unchanged. When
    ``x0_i == -1`` the formula does not move the point and ``x0_i + e_i`` is
    used instead. Components that fit with neither sign are clamped to a
    bound and reported through :class:`PerturbationWarning`.
    """
    x0 = np.asarray(x0, dtype=float).ravel()
    n = x0.size
    lower = np.full(n, -np.inf) if lower is None else np.broadcast_to(
        np.asarray(lower, dtype=float), (n,))
    upper = np.full(n, np.inf) if upper is None else np.broadcast_to(
        np.asarray(upper, dtype=float), (n,))
    if np.any(x0 < lower) or np.any(x0 > upper):
        raise ValueError("x0 lies outside the bounds")

    rng = np.random.default_rng(seed)
    magnitude = rng.uniform(PERTURB_MIN, PERTURB_MAX, size=n)
    sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)

    def step(eps):
        moved = (1.0 + eps) * x0 + eps
        return np.where(moved == x0, x0 + eps, moved)

    first = step(sign * magnitude)
    second = step(-sign * magnitude)
    fits_first = (first >= lower) & (first <= upper)
    fits_second = (second >= lower) & (second <= upper)
    out = np.where(fits_first, first, np.where(fits_second, second, x0))

    fixed = lower == upper
    out[fixed] = x0[fixed]
    clamped = np.flatnonzero(~fixed & ~fits_first & ~fits_second)
    if clamped.size:
        a = np.clip(first[clamped], lower[clamped], upper[clamped])
        b = np.clip(second[clamped], lower[clamped], upper[clamped])
        out[clamped] = np.where(a != x0[clamped], a, b)
        warnings.warn(PerturbationWarning(
            f"{clamped.size} component(s) clamped to a bound", clamped.tolist()),
            stacklevel=2)
    return out


def count_jacobian_nnz(F, x, counter=None):
    """Number of structural entries of ``f_E'(x)``; values are discarded."""
    pattern, _ = eval_sparse_jacobian(F, x, counter)
    return pattern.nnz


def detect_jacobian_pattern(F, x0, seed=0, counter=None):
    """Entries ``(i, j)`` with ``d_j f_i != 0`` at a perturbed copy of ``x0``."""
    x0 = _check_point(F, x0)
    if not F.contains(x0):
        raise ValueError("x0 lies outside the bounds")
    xbar = perturb_point(x0, F.lower, F.upper, seed)
    pattern, values = eval_sparse_jacobian(F, xbar, counter)
    keep = values != 0.0
    counts = np.bincount(pattern.row_ids[keep], minlength=pattern.rows)
    offsets = np.zeros(pattern.rows + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return SparsityPattern(pattern.rows, pattern.cols, offsets, pattern.col_indices[keep])


def _lower_pair_keys(J):
    """Keys ``i * n + j`` (``i >= j``) of every column pair sharing a row."""
    n = J.cols
    lengths = J.row_lengths
    chunks = []
    for r in np.unique(lengths):
        if r == 0:
            continue
        rows = np.flatnonzero(lengths == r)
        block = J.col_indices[J.row_offsets[rows][:, None] + np.arange(r)]
        a, b = np.triu_indices(r)
        # columns sorted within a row, so block[:, b] >= block[:, a]
        chunks.append((block[:, b] * n + block[:, a]).ravel())
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.unique(np.concatenate(chunks))


def jtj_pattern(J):
    """Pattern of ``J^T J``: pairs of columns that share some row of ``J``."""
    return SymmetricPattern._from_keys(J.cols, _lower_pair_keys(J))


def count_hessian_nnz(J):
    """Entries of the full symmetric ``J^T J`` pattern, from the pattern alone."""
    keys = _lower_pair_keys(J)
    diag = int(np.count_nonzero(keys // max(J.cols, 1) == keys % max(J.cols, 1)))
    return 2 * (keys.size - diag) + diag
