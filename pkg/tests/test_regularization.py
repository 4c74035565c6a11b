"""Tikhonov solves, the SVD filter shortcut and the parameter sweep."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphtik.discretization import DiscreteOperator, Grid
from graphtik.errors import IllPosedProblemError, ParameterError
from graphtik.regularization import (
    AlphaGrid,
    TikhonovProblem,
    alpha_sweep,
    filter_solution,
    tikhonov_solve,
)

_GRID = Grid(2, "interior")


def _op(matrix, grid=None):
    m = np.asarray(matrix, dtype=float)
    return DiscreteOperator(m, grid or Grid(m.shape[0], "interior"), "penalty")


def _problem(K, A, g):
    return TikhonovProblem(_op(K), _op(A), np.asarray(g, dtype=float))


def test_identity_shrinkage():
    # K = A = I: minimizer of |f-g|^2 + a|f|^2 is g/(1+a)
    g = np.array([3.0, -1.0])
    for a in (0.5, 1.0, 10.0):
        sol = tikhonov_solve(_problem(np.eye(2), np.eye(2), g), a)
        np.testing.assert_allclose(sol.solution, g / (1.0 + a), rtol=1e-12)
        np.testing.assert_allclose(sol.residual_norm, a / (1.0 + a) * np.linalg.norm(g), rtol=1e-10)


def test_partial_penalty():
    # penalty acting on the second coordinate only
    sol = tikhonov_solve(_problem(np.eye(2), np.diag([0.0, 1.0]), [1.0, 1.0]), 1.0)
    np.testing.assert_allclose(sol.solution, [1.0, 0.5], rtol=1e-12)


def test_shrinkage_monotone_in_alpha():
    rng = np.random.default_rng(0)
    K = rng.standard_normal((8, 8))
    g = rng.standard_normal(8)
    p = _problem(K, np.eye(8), g)
    alphas = np.logspace(-4, 4, 9)
    norms = [np.linalg.norm(tikhonov_solve(p, a).solution) for a in alphas]
    residuals = [tikhonov_solve(p, a).residual_norm for a in alphas]
    assert np.all(np.diff(norms) < 0)
    assert np.all(np.diff(residuals) > 0)


def test_solution_linear_in_data():
    rng = np.random.default_rng(1)
    K = rng.standard_normal((6, 6))
    p1 = _problem(K, np.eye(6), rng.standard_normal(6))
    p2 = _problem(K, np.eye(6), rng.standard_normal(6))
    psum = _problem(K, np.eye(6), p1.data + p2.data)
    a = 0.3
    np.testing.assert_allclose(
        tikhonov_solve(psum, a).solution,
        tikhonov_solve(p1, a).solution + tikhonov_solve(p2, a).solution,
        atol=1e-10,
    )


def test_shared_null_direction_rejected():
    with pytest.raises(IllPosedProblemError):
        _problem(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]), [1.0, 1.0])


def test_construction_validation():
    with pytest.raises(ParameterError):
        TikhonovProblem(_op(np.eye(2)), _op(np.eye(2), Grid(2, "midpoint")), np.ones(2))
    with pytest.raises(ParameterError):
        _problem(np.eye(2), np.eye(2), np.ones(3))
    with pytest.raises(ParameterError):
        tikhonov_solve(_problem(np.eye(2), np.eye(2), np.ones(2)), 0.0)


def test_filter_equals_identity_penalty_solve():
    rng = np.random.default_rng(5)
    K = rng.standard_normal((20, 20))
    g = rng.standard_normal(20)
    p = _problem(K, np.eye(20), g)
    svd = np.linalg.svd(K)
    for a in (1e-6, 1e-2, 10.0):
        f_filter = filter_solution(svd, g, a)
        f_solve = tikhonov_solve(p, a).solution
        assert np.linalg.norm(f_filter - f_solve) <= 1e-10 * np.linalg.norm(f_solve)


def test_filter_half_damping():
    # the filter factor t^2/(t^2 + a) equals 1/2 at t = sqrt(a)
    a = 0.37
    svd = (np.eye(1), np.array([np.sqrt(a)]), np.eye(1))
    naive = 1.0 / np.sqrt(a)
    np.testing.assert_allclose(filter_solution(svd, np.array([1.0]), a), 0.5 * naive, rtol=1e-14)


def test_filter_small_alpha_limit():
    rng = np.random.default_rng(9)
    K = rng.standard_normal((5, 5)) + 5.0 * np.eye(5)
    g = rng.standard_normal(5)
    f = filter_solution(np.linalg.svd(K), g, 1e-13)
    np.testing.assert_allclose(f, np.linalg.solve(K, g), rtol=1e-9)
    with pytest.raises(ParameterError):
        filter_solution(np.linalg.svd(K), g, -1.0)


def test_alpha_grid_values():
    grid = AlphaGrid(max=100.0, min=0.01, count=5)
    v = grid.values
    assert v[0] == 100.0 and np.isclose(v[-1], 0.01)
    np.testing.assert_allclose(v[:-1] / v[1:], 10.0 * np.ones(4), rtol=1e-12)
    np.testing.assert_array_equal(AlphaGrid(count=1).values, [1e3])


def test_alpha_grid_validation():
    with pytest.raises(ParameterError):
        AlphaGrid(max=1.0, min=2.0)
    with pytest.raises(ParameterError):
        AlphaGrid(min=-1.0)
    with pytest.raises(ParameterError):
        AlphaGrid(count=0)


def test_sweep_reports_grid_value():
    rng = np.random.default_rng(2)
    K = rng.standard_normal((10, 10))
    f_true = rng.standard_normal(10)
    p = _problem(K, np.eye(10), K @ f_true)
    grid = AlphaGrid(max=10.0, min=1e-8, count=12)
    best, curve = alpha_sweep(p, grid, f_true)
    assert len(curve) == 12
    assert best.alpha in grid.values
    assert best.rre == min(err for _, err in curve)
    # squaring the grid value: the same solution appears at a^2 under the
    # direct rule
    w = best.alpha**2
    direct, _ = alpha_sweep(p, AlphaGrid(max=w, min=w / 10.0, count=1), f_true, weight_rule="direct")
    np.testing.assert_allclose(direct.solution, best.solution, rtol=1e-12)


def test_sweep_tie_takes_smallest_alpha():
    # zero data gives the zero solution at every weight, so every rre ties
    p = _problem(np.eye(4), np.eye(4), np.zeros(4))
    grid = AlphaGrid(max=10.0, min=0.1, count=7)
    best, curve = alpha_sweep(p, grid, np.ones(4))
    assert all(err == 1.0 for _, err in curve)
    assert best.alpha == grid.values.min()


def test_sweep_rejects_unknown_rule():
    p = _problem(np.eye(2), np.eye(2), np.ones(2))
    with pytest.raises(ParameterError):
        alpha_sweep(p, AlphaGrid(), np.ones(2), weight_rule="cubed")


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=2, max_value=6),
    st.integers(min_value=0, max_value=2**31 - 1),
    st.floats(min_value=1e-6, max_value=1e3),
)
def test_normal_equations_satisfied(n, seed, alpha):
    rng = np.random.default_rng(seed)
    K = rng.standard_normal((n, n))
    g = rng.standard_normal(n)
    f = tikhonov_solve(_problem(K, np.eye(n), g), alpha).solution
    M = K.T @ K + alpha * np.eye(n)
    gap = np.linalg.norm(M @ f - K.T @ g)
    assert gap <= 1e-6 * max(np.linalg.norm(K.T @ g), 1e-30)
