import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psad.adcore import ExtendedFunction, concat, sin
from psad.pattern import SparsityPattern
from psad.problems import get_problem
from psad.sparsity import (PerturbationWarning, SymmetricPattern, count_hessian_nnz,
                           count_jacobian_nnz, detect_jacobian_pattern, jtj_pattern,
                           perturb_point)

from conftest import brute_force_jtj


def test_perturb_zero_start():
    x = perturb_point(np.zeros(50), seed=3)
    assert np.all((np.abs(x) >= 1e-6) & (np.abs(x) <= 1e-4))


def test_perturb_leaves_fixed_variables():
    x0 = np.array([3.0, 3.0, 0.5])
    lo = np.array([3.0, 0.0, 0.0])
    hi = np.array([3.0, 10.0, 1.0])
    for seed in range(20):
        x = perturb_point(x0, lo, hi, seed)
        assert x[0] == 3.0
        assert x[1] != 3.0 and x[2] != 0.5


def test_perturb_at_upper_bound_moves_inward():
    for seed in range(50):
        x = perturb_point([1.0], [0.0], [1.0], seed)[0]
        assert 1.0 - (1e-4 + 1e-4) <= x < 1.0


def test_perturb_minus_one_still_moves():
    x = perturb_point([-1.0, -1.0], seed=0)
    assert np.all(x != -1.0)
    assert np.all(np.abs(x + 1.0) <= 1e-4)


def test_perturb_narrow_interval_warns_and_stays_in_bounds():
    with pytest.warns(PerturbationWarning) as record:
        x = perturb_point([0.5], [0.5 - 1e-9], [0.5 + 1e-9], seed=1)
    assert record[0].message.indices == [0]
    assert 0.5 - 1e-9 <= x[0] <= 0.5 + 1e-9


def test_perturb_outside_bounds_rejected():
    with pytest.raises(ValueError):
        perturb_point([2.0], [0.0], [1.0])


@settings(max_examples=60)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=10), st.integers(0, 2**31))
def test_perturb_in_box_and_moves(xs, seed):
    x0 = np.array(xs)
    lo, hi = x0 - np.abs(x0) * 1e-3 - 1e-3, x0 + 2e-3
    lo[0] = x0[0]  # one component sitting on its lower bound
    x = perturb_point(x0, lo, hi, seed)
    assert np.all((x >= lo) & (x <= hi))
    assert np.all(x != x0)


def test_count_jacobian_nnz_examples():
    F = ExtendedFunction(3, lambda x: concat([x[0] * x[1], x[2]]))
    assert count_jacobian_nnz(F, np.ones(3)) == 3
    G = ExtendedFunction(2, lambda x: concat([x[0] + x[1], 7.0]))
    assert count_jacobian_nnz(G, np.ones(2)) == 2
    A, x0 = get_problem("arrowhead").instance(10)
    assert count_jacobian_nnz(A, x0) == 28


def test_detection_sees_through_special_start():
    # f = sin(x0 * x1): both partials vanish at the origin
    F = ExtendedFunction(2, lambda x: sin(x[0] * x[1]))
    P = detect_jacobian_pattern(F, np.zeros(2), seed=7)
    assert P.to_rows() == [[0, 1]]


def test_detection_linear_component():
    F = ExtendedFunction(2, lambda x: concat([3.0 * x[0], x[0] * x[1]]))
    assert detect_jacobian_pattern(F, np.zeros(2)).to_rows()[0] == [0]


def test_detection_rejects_start_outside_bounds():
    F = ExtendedFunction(1, lambda x: x * x, lower=[0.0], upper=[1.0])
    with pytest.raises(ValueError):
        detect_jacobian_pattern(F, [2.0])


def test_jtj_examples():
    H = jtj_pattern(SparsityPattern.from_rows([[0, 1], [2]], 3))
    assert list(zip(H.rows.tolist(), H.cols.tolist())) == [(0, 0), (1, 0), (1, 1), (2, 2)]
    assert count_hessian_nnz(SparsityPattern.from_rows([[0, 1], [2]], 3)) == 5
    A = get_problem("arrowhead")
    J = A.reference_pattern(10)
    dense = jtj_pattern(J).to_dense()
    expected = np.eye(10, dtype=bool)
    expected[0, :] = expected[:, 0] = True
    assert np.array_equal(dense, expected)
    assert count_hessian_nnz(J) == 28


@st.composite
def small_jacobians(draw):
    n = draw(st.integers(1, 8))
    m = draw(st.integers(0, 8))
    rows = [sorted(draw(st.sets(st.integers(0, n - 1), max_size=n))) for _ in range(m)]
    return rows, n


@settings(max_examples=200)
@given(small_jacobians())
def test_jtj_matches_brute_force(data):
    rows, n = data
    J = SparsityPattern.from_rows(rows, n)
    H = jtj_pattern(J)
    assert np.array_equal(H.to_dense(), brute_force_jtj(rows, n))
    diag = int(np.count_nonzero(H.rows == H.cols))
    assert count_hessian_nnz(J) == 2 * (H.nnz_lower - diag) + diag == H.nnz
    assert count_hessian_nnz(J) <= min(len(rows) * J.rho_max ** 2, n * n)


def test_symmetric_pattern_rejects_upper_entries():
    with pytest.raises(ValueError):
        SymmetricPattern(2, SparsityPattern.from_rows([[1], []], 2))


def test_with_diagonal_and_adjacency():
    H = SymmetricPattern.from_pairs(3, [1], [0])
    assert not H.has_full_diagonal()
    D = H.with_diagonal()
    assert D.has_full_diagonal() and D.nnz == 5
    ptr, nbr = D.adjacency()
    assert [nbr[ptr[v]:ptr[v + 1]].tolist() for v in range(3)] == [[1], [0], []]
