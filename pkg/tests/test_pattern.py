import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psad.pattern import SparsityPattern


@st.composite
def row_lists(draw, max_rows=8, max_cols=8):
    n = draw(st.integers(1, max_cols))
    m = draw(st.integers(0, max_rows))
    rows = [sorted(draw(st.sets(st.integers(0, n - 1), max_size=n))) for _ in range(m)]
    return rows, n


def test_from_rows_basics():
    P = SparsityPattern.from_rows([[1, 0], [2], []], 3)
    assert P.to_rows() == [[0, 1], [2], []]
    assert P.nnz == 3
    assert P.rho_max == 2
    assert list(P.row_lengths) == [2, 1, 0]


def test_invalid_patterns_rejected():
    with pytest.raises(ValueError):
        SparsityPattern(1, 2, np.array([0, 2]), np.array([1, 0]))
    with pytest.raises(ValueError):
        SparsityPattern(1, 2, np.array([0, 1]), np.array([2]))
    with pytest.raises(ValueError):
        SparsityPattern(2, 2, np.array([0, 2, 1]), np.array([0, 1]))


def test_json_document_shape():
    P = SparsityPattern.from_rows([[0, 1], [2]], 3)
    doc = json.loads(P.to_json())
    assert doc == {"rows": 2, "cols": 3, "row_offsets": [0, 2, 3], "col_indices": [0, 1, 2]}


@given(row_lists())
def test_json_round_trip(data):
    rows, n = data
    P = SparsityPattern.from_rows(rows, n)
    assert SparsityPattern.from_json(P.to_json()) == P


@settings(max_examples=50)
@given(row_lists())
def test_dense_and_transpose_agree(data):
    rows, n = data
    P = SparsityPattern.from_rows(rows, n)
    dense = P.to_dense()
    assert SparsityPattern.from_dense(dense) == P
    assert np.array_equal(P.transpose().to_dense(), dense.T)
    assert P.rho_max == (dense.sum(axis=1).max() if rows else 0)
