"""Structurally orthogonal column partitions and compressed Jacobian recovery."""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ColumnPartition", "SeedMatrix", "build_seed", "incidence_degree_order",
    "is_structurally_orthogonal", "natural_order", "order_columns",
    "partition_columns", "recover_jacobian", "smallest_last_order",
]


@dataclass(frozen=True, eq=False)
class ColumnPartition:
    """Group id (1-based) of every column and the number of groups."""

    ngrp: np.ndarray
    p: int

    def __post_init__(self):
        object.__setattr__(self, "ngrp", np.asarray(self.ngrp, dtype=np.int64))

    @property
    def n(self):
        return self.ngrp.size

    def groups(self):
        return [np.flatnonzero(self.ngrp == g) for g in range(1, self.p + 1)]

    def __eq__(self, other):
        if not isinstance(other, ColumnPartition):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.ngrp, other.ngrp)

    def to_dict(self):
        return {"p": self.p, "ngrp": self.ngrp.tolist()}

    @classmethod
    def from_dict(cls, doc):
        return cls(np.asarray(doc["ngrp"]), int(doc["p"]))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class SeedMatrix:
    """Indicator seed: ``V[j, ngrp[j] - 1] = 1`` and zero elsewhere."""

    ngrp: np.ndarray
    p: int

    @property
    def n(self):
        return self.ngrp.size

    @property
    def shape(self):
        return (self.n, self.p)

    def dense(self):
        V = np.zeros(self.shape)
        V[np.arange(self.n), self.ngrp - 1] = 1.0
        return V

    def __array__(self, dtype=None, copy=None):
        V = self.dense()
        return V if dtype is None else V.astype(dtype)


def _row_lists(pattern):
    offsets = pattern.row_offsets.tolist()
    cols = pattern.col_indices.tolist()
    return [cols[offsets[i]:offsets[i + 1]] for i in range(pattern.rows)]


def _column_neighbors(pattern):
    """Neighbor function of the column intersection graph, by row scan."""
    rows = _row_lists(pattern)
    by_column = _row_lists(pattern.transpose())

    def neighbors(j):
        seen = set()
        for i in by_column[j]:
            seen.update(rows[i])
        seen.discard(j)
        return seen

    return neighbors


def _smallest_last(n, neighbors):
    # repeatedly remove a minimum-degree vertex (largest index on ties);
    # the ordering is the removal sequence reversed
    degree = [len(neighbors(v)) for v in range(n)]
    heap = [(degree[v], -v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    removal = []
    while heap:
        d, neg = heapq.heappop(heap)
        v = -neg
        if removed[v] or d != degree[v]:
            continue
        removed[v] = True
        removal.append(v)
        for w in neighbors(v):
            if not removed[w]:
                degree[w] -= 1
                heapq.heappush(heap, (degree[w], -w))
    return np.array(removal[::-1], dtype=np.int64)


def _incidence_degree(n, neighbors):
    # next vertex has the most already-ordered neighbors (smallest index on ties)
    incidence = [0] * n
    heap = [(0, v) for v in range(n)]
    done = [False] * n
    order = []
    while heap:
        neg, v = heapq.heappop(heap)
        if done[v] or -neg != incidence[v]:
            continue
        done[v] = True
        order.append(v)
        for w in neighbors(v):
            if not done[w]:
                incidence[w] += 1
                heapq.heappush(heap, (-incidence[w], w))
    return np.array(order, dtype=np.int64)


def natural_order(pattern):
    return np.arange(pattern.cols, dtype=np.int64)


def smallest_last_order(pattern):
    """Smallest-last ordering of the columns of ``pattern``.

    Two columns are adjacent when they share a row.
    """
    return _smallest_last(pattern.cols, _column_neighbors(pattern))


def incidence_degree_order(pattern):
    return _incidence_degree(pattern.cols, _column_neighbors(pattern))


_ORDERINGS = {
    "smallest-last": smallest_last_order,
    "natural": natural_order,
    "incidence-degree": incidence_degree_order,
}


def order_columns(pattern, method="smallest-last"):
    try:
        return _ORDERINGS[method](pattern)
    except KeyError:
        raise ValueError(f"unknown ordering {method!r}; "
                         f"choose from {sorted(_ORDERINGS)}") from None


def partition_columns(pattern, ordering=None):
    """Greedy partition of columns into structurally orthogonal groups.

    Columns are visited in ``ordering`` (smallest-last when omitted); each
    takes the smallest group not used by a column it shares a row with.
    """
    n = pattern.cols
    if ordering is None:
        ordering = smallest_last_order(pattern)
    ordering = np.asarray(ordering, dtype=np.int64)
    if ordering.size != n or not np.array_equal(np.sort(ordering), np.arange(n)):
        raise ValueError("ordering must be a permutation of the columns")

    rows = _row_lists(pattern)
    by_column = _row_lists(pattern.transpose())
    ngrp = [0] * n
    stamp = [-1] * (n + 2)  # stamp[g] == j: group g is taken for column j
    p = 0
    for j in ordering.tolist():
        for i in by_column[j]:
            for k in rows[i]:
                stamp[ngrp[k]] = j
        g = 1
        while stamp[g] == j:
            g += 1
        ngrp[j] = g
        p = max(p, g)
    return ColumnPartition(np.array(ngrp, dtype=np.int64), p)


def is_structurally_orthogonal(pattern, part):
    """True when no row holds two columns of the same group."""
    groups = part.ngrp[pattern.col_indices]
    keys = pattern.row_ids * (part.p + 1) + groups
    return np.unique(keys).size == keys.size


def build_seed(part):
    return SeedMatrix(part.ngrp, part.p)


def recover_jacobian(pattern, part, B):
    """Jacobian entries at the pattern positions from ``B = J V``.

    With unit seeds the entry ``(i, j)`` is ``B[i, ngrp[j] - 1]``.
    """
    B = np.asarray(B, dtype=float)
    if B.shape != (pattern.rows, part.p) or part.n != pattern.cols:
        raise ValueError(f"compressed matrix has shape {B.shape}, "
                         f"expected {(pattern.rows, part.p)}")
    return B[pattern.row_ids, part.ngrp[pattern.col_indices] - 1]
