import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psad import DomainError
from psad.adcore import (DualVector, EvalContext, ExtendedFunction, OpCounter,
                         PlainValue, SecondOrderDual, SparseDual, concat, cos,
                         default_step, eval_components, eval_compressed_hessian,
                         eval_compressed_jacobian, eval_hessian_vector,
                         eval_sparse_jacobian, exp, fabs, log, power, sin, sqrt,
                         where)
from psad.problems import catalog, dense_hessian, dense_jacobian, get_problem


def product_and_sum(x):
    return concat([x[0] * x[1], x[1] + x[2]])


def test_components_simple():
    F = ExtendedFunction(3, product_and_sum)
    assert np.array_equal(eval_components(F, [1.0, 2.0, 3.0]), [2.0, 5.0])
    assert F.m == 2
    assert F([1.0, 2.0, 3.0]) == 7.0


def test_log_of_negative_is_domain_error():
    F = ExtendedFunction(2, lambda x: concat([log(x[0]), x[1]]))
    with pytest.raises(DomainError) as info:
        eval_components(F, [-1.0, 1.0])
    assert info.value.component == 0


def test_wrong_point_length():
    F = ExtendedFunction(3, product_and_sum)
    with pytest.raises(ValueError):
        eval_components(F, [1.0, 2.0])


def _minimal_surface_by_loops(q):
    # straightforward re-statement of the element formula with scalar math
    h = 1.0 / (q + 1)

    def value(i, j, x):
        if 0 <= i < q and 0 <= j < q:
            return x[i * q + j]
        s, t = (i + 1) * h, (j + 1) * h
        return (s - 0.5) ** 2 - (t - 0.5) ** 2 + 1.0

    def components(x):
        out = []
        for i in range(-1, q):
            for j in range(-1, q):
                a, b = value(i, j, x), value(i + 1, j, x)
                c, d = value(i, j + 1, x), value(i + 1, j + 1, x)
                spread = ((b - a) ** 2 + (d - c) ** 2 + (c - a) ** 2 + (d - b) ** 2) / (2 * h * h)
                out.append(h * h * math.sqrt(1.0 + spread))
        return np.array(out)

    return components


def test_minimal_surface_matches_scalar_loops():
    problem = get_problem("minimal-surface-like")
    n = problem.size(49)
    F = problem.build(n)
    x = np.ones(n)
    np.testing.assert_allclose(eval_components(F, x), _minimal_surface_by_loops(7)(x),
                               rtol=1e-14)


def test_compressed_jacobian_examples():
    F = ExtendedFunction(2, lambda x: x * x)
    np.testing.assert_array_equal(eval_compressed_jacobian(F, [3.0, 4.0], np.eye(2)),
                                  [[6.0, 0.0], [0.0, 8.0]])
    G = ExtendedFunction(2, lambda x: x[0] * x[1])
    np.testing.assert_array_equal(eval_compressed_jacobian(G, [2.0, 5.0], [[1.0], [1.0]]),
                                  [[7.0]])


def test_compressed_jacobian_bad_seed():
    F = ExtendedFunction(2, lambda x: x * x)
    with pytest.raises(ValueError):
        eval_compressed_jacobian(F, [1.0, 2.0], np.ones((3, 1)))


def test_non_finite_derivative_location():
    F = ExtendedFunction(2, lambda x: concat([x[0] * 2.0, sqrt(x[1])]))
    with pytest.raises(DomainError) as info:
        eval_compressed_jacobian(F, [1.0, 0.0], np.eye(2))
    assert info.value.component == 1
    assert info.value.group in (0, 1)


def test_arrowhead_compressed_equals_dense_times_seed():
    problem = get_problem("arrowhead")
    F, x = problem.instance(12)
    V = np.zeros((12, 2))
    V[0, 0] = 1.0
    V[1:, 1] = 1.0
    np.testing.assert_allclose(eval_compressed_jacobian(F, x, V), dense_jacobian(F, x) @ V,
                               rtol=1e-14)


def test_sparse_jacobian_product_rule():
    F = ExtendedFunction(3, lambda x: concat([x[0] * x[1], x[2]]))
    P, vals = eval_sparse_jacobian(F, [2.0, 5.0, 1.0])
    assert P.to_rows() == [[0, 1], [2]]
    np.testing.assert_array_equal(vals, [5.0, 2.0, 1.0])


def test_sparse_jacobian_keeps_cancellation():
    F = ExtendedFunction(2, lambda x: x[0] - x[0] + x[1])
    P, vals = eval_sparse_jacobian(F, [0.3, 0.7])
    assert P.to_rows() == [[0, 1]]
    np.testing.assert_array_equal(vals, [0.0, 1.0])


def test_constant_component_has_empty_row():
    F = ExtendedFunction(2, lambda x: concat([x[0] * 2.0, 4.0]))
    P, _ = eval_sparse_jacobian(F, [1.0, 1.0])
    assert P.to_rows() == [[0], []]


@pytest.mark.parametrize("problem", catalog(), ids=lambda p: p.name)
def test_realizations_share_primal_values(problem, rng):
    F, x0 = problem.instance(60)
    x = x0 + rng.uniform(0.0, 0.05, x0.size)
    plain = eval_components(F, x)
    n = F.n
    ctx = EvalContext(n)
    dual = F.evaluate(DualVector(x, np.eye(n)[:, :3], ctx))
    sparse = F.evaluate(SparseDual(x, np.arange(n + 1), np.arange(n), np.ones(n), ctx))
    second = F.evaluate(SecondOrderDual(x, np.eye(n)[:, :2], np.ones(n),
                                        np.zeros((n, 2)), ctx))
    for out in (dual, sparse, second):
        np.testing.assert_array_equal(out.v, plain)


@pytest.mark.parametrize("problem", catalog(), ids=lambda p: p.name)
def test_sparse_jacobian_matches_central_differences(problem, rng):
    F, x0 = problem.instance(40)
    x = x0 + rng.uniform(0.01, 0.05, x0.size)
    P, vals = eval_sparse_jacobian(F, x)
    h = 1e-6
    J = np.zeros((P.rows, P.cols))
    for j in range(F.n):
        e = np.zeros(F.n)
        e[j] = h
        J[:, j] = (eval_components(F, x + e) - eval_components(F, x - e)) / (2 * h)
    scale = np.maximum(1.0, np.abs(vals))
    assert np.all(np.abs(J[P.row_ids, P.col_indices] - vals) <= 1e-6 * scale)


def test_propagation_is_linear_in_seed(rng):
    F, x = get_problem("channel-flow-like").instance(30)
    V1, V2 = rng.normal(size=(30, 2)), rng.normal(size=(30, 3))
    joint = eval_compressed_jacobian(F, x, np.hstack([V1, V2]))
    np.testing.assert_allclose(joint, np.hstack([eval_compressed_jacobian(F, x, V1),
                                                 eval_compressed_jacobian(F, x, V2)]),
                               rtol=1e-13, atol=1e-15)


def test_hessian_vector_identity(half_square, rng):
    x, v = rng.normal(size=5), rng.normal(size=5)
    np.testing.assert_array_equal(eval_hessian_vector(half_square, x, v), v)


def test_hessian_vector_modes_agree_on_quartic_chain():
    F, x = get_problem("quartic-chain").instance(10)
    v = np.zeros(10)
    v[0] = 1.0
    exact = eval_hessian_vector(F, x, v)
    approx = eval_hessian_vector(F, x, v, mode="difference", step=1e-6)
    np.testing.assert_allclose(approx, exact, atol=1e-5)


def test_difference_mode_rejects_zero_direction(half_square):
    with pytest.raises(ValueError):
        eval_hessian_vector(half_square, np.ones(5), np.zeros(5), mode="difference")
    with pytest.raises(ValueError):
        eval_hessian_vector(half_square, np.ones(5), np.ones(5), mode="difference", step=0.0)


def test_default_step():
    assert default_step(np.array([3.0, -4.0])) == pytest.approx(np.sqrt(np.finfo(float).eps) * 5)


def test_compressed_hessian_examples(half_square):
    V = np.eye(5)[:, :2]
    np.testing.assert_array_equal(eval_compressed_hessian(half_square, np.ones(5), V), V)
    G = ExtendedFunction(2, lambda x: x[0] * x[1])
    np.testing.assert_array_equal(eval_compressed_hessian(G, [0.3, -2.0], np.eye(2)),
                                  [[0.0, 1.0], [1.0, 0.0]])


def test_second_order_matches_differences_of_first(rng):
    F, x0 = get_problem("minimal-surface-like").instance(25)
    x = x0 + rng.uniform(-0.1, 0.1, x0.size)
    v = rng.normal(size=F.n)
    exact = eval_hessian_vector(F, x, v)
    h = 1e-5
    g = lambda y: dense_jacobian(F, y).sum(axis=0)
    central = (g(x + h * v) - g(x - h * v)) / (2 * h)
    np.testing.assert_allclose(exact, central, rtol=1e-5, atol=1e-5 * np.abs(exact).max())


@pytest.mark.parametrize("problem", catalog(), ids=lambda p: p.name)
def test_opcount_gradient_bound_per_width(problem):
    F, x = problem.instance(100)
    base = OpCounter()
    eval_components(F, x, base)
    for p in (1, 3, 8):
        c = OpCounter()
        eval_compressed_jacobian(F, x, np.ones((F.n, p)), c)
        assert c.total <= 5 * (p + 1) * base.total


def test_opcounter_accumulates_and_resets():
    F = ExtendedFunction(3, product_and_sum)
    c = OpCounter()
    eval_components(F, [1.0, 2.0, 3.0], c)
    first = c.total
    assert first == 2
    eval_components(F, [1.0, 2.0, 3.0], c)
    assert c.total == 2 * first
    c.reset()
    assert c.total == 0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 3.0), st.floats(-2.0, 2.0))
def test_elementary_functions_against_calculus(a, b):
    def f(x):
        return concat([exp(x[0]) * sin(x[1]), log(x[0]) + cos(x[1]), sqrt(x[0]) / (1.0 + x[1] ** 2),
                       power(x[0], 2.5) - fabs(x[1]), x[0] ** x[1],
                       where(x[1] > 0.0, x[0] * x[1], x[0] - x[1])])

    F = ExtendedFunction(2, f)
    J = eval_compressed_jacobian(F, [a, b], np.eye(2))
    expected = np.array([
        [math.exp(a) * math.sin(b), math.exp(a) * math.cos(b)],
        [1.0 / a, -math.sin(b)],
        [0.5 / math.sqrt(a) / (1 + b * b), -math.sqrt(a) * 2 * b / (1 + b * b) ** 2],
        [2.5 * a ** 1.5, -np.sign(b)],
        [b * a ** (b - 1), a ** b * math.log(a)],
        [b, a] if b > 0 else [1.0, -1.0],
    ])
    np.testing.assert_allclose(J, expected, rtol=1e-12, atol=1e-12)
    H = dense_hessian(F, np.array([a, b]))
    np.testing.assert_allclose(H, H.T, atol=1e-12)


def test_plain_values_are_not_derivatives():
    x = PlainValue(np.array([2.0, 3.0]), EvalContext(2))
    y = x[0] * x[1] + 1.0
    assert float(y.v[0]) == 7.0
