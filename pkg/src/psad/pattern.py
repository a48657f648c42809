"""Compressed row storage of structural nonzero patterns."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SparsityPattern:
    """Row-wise structural pattern of an ``rows x cols`` matrix.

    Column indices are strictly increasing within each row.
    """

    rows: int
    cols: int
    row_offsets: np.ndarray
    col_indices: np.ndarray

    def __post_init__(self):
        offsets = np.ascontiguousarray(self.row_offsets, dtype=np.int64)
        indices = np.ascontiguousarray(self.col_indices, dtype=np.int64)
        object.__setattr__(self, "row_offsets", offsets)
        object.__setattr__(self, "col_indices", indices)
        if offsets.shape != (self.rows + 1,) or offsets[0] != 0:
            raise ValueError("row_offsets must have length rows + 1 and start at 0")
        if np.any(np.diff(offsets) < 0) or offsets[-1] != indices.size:
            raise ValueError("row_offsets must be nondecreasing and end at nnz")
        if indices.size:
            if indices.min() < 0 or indices.max() >= self.cols:
                raise ValueError("column index out of range")
            # strictly increasing inside a row: any non-increase must sit on a row start
            bad = np.flatnonzero(np.diff(indices) <= 0) + 1
            starts = offsets[1:-1]
            if bad.size and not np.all(np.isin(bad, starts)):
                raise ValueError("column indices must be strictly increasing within a row")

    @classmethod
    def from_rows(cls, rows, cols):
        rows = [sorted(set(int(j) for j in r)) for r in rows]
        offsets = np.zeros(len(rows) + 1, dtype=np.int64)
        offsets[1:] = np.cumsum([len(r) for r in rows])
        indices = np.array([j for r in rows for j in r], dtype=np.int64)
        return cls(len(rows), cols, offsets, indices)

    @classmethod
    def from_dense(cls, mask):
        mask = np.asarray(mask, dtype=bool)
        return cls.from_rows([np.flatnonzero(r) for r in mask], mask.shape[1])

    @property
    def nnz(self):
        return int(self.row_offsets[-1])

    @property
    def row_lengths(self):
        return np.diff(self.row_offsets)

    @property
    def rho_max(self):
        """Largest number of entries in any row (0 for an empty pattern)."""
        return int(self.row_lengths.max()) if self.rows else 0

    @property
    def row_ids(self):
        """Row index of every stored entry."""
        return np.repeat(np.arange(self.rows, dtype=np.int64), self.row_lengths)

    def row(self, i):
        return self.col_indices[self.row_offsets[i]:self.row_offsets[i + 1]]

    def to_rows(self):
        return [self.row(i).tolist() for i in range(self.rows)]

    def to_dense(self):
        mask = np.zeros((self.rows, self.cols), dtype=bool)
        mask[self.row_ids, self.col_indices] = True
        return mask

    def transpose(self):
        """Column-wise view, returned as the pattern of the transpose."""
        order = np.lexsort((self.row_ids, self.col_indices))
        counts = np.bincount(self.col_indices, minlength=self.cols)
        offsets = np.zeros(self.cols + 1, dtype=np.int64)
        offsets[1:] = np.cumsum(counts)
        return SparsityPattern(self.cols, self.rows, offsets, self.row_ids[order])

    def __eq__(self, other):
        if not isinstance(other, SparsityPattern):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and np.array_equal(self.row_offsets, other.row_offsets)
                and np.array_equal(self.col_indices, other.col_indices))

    def issubset(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        mine = self.row_ids * self.cols + self.col_indices
        theirs = other.row_ids * other.cols + other.col_indices
        return bool(np.all(np.isin(mine, theirs)))

    def __repr__(self):
        return (f"SparsityPattern(rows={self.rows}, cols={self.cols}, "
                f"nnz={self.nnz}, rho_max={self.rho_max})")

    # JSON document: {"rows", "cols", "row_offsets", "col_indices"}
    def to_dict(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "row_offsets": self.row_offsets.tolist(),
            "col_indices": self.col_indices.tolist(),
        }

    @classmethod
    def from_dict(cls, doc):
        return cls(int(doc["rows"]), int(doc["cols"]),
                   np.asarray(doc["row_offsets"]), np.asarray(doc["col_indices"]))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))
