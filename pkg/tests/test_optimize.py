import numpy as np
import pytest

from qcorr.optimize import fibonacci_sphere_axes, refine_axis, search_axis


def test_fibonacci_axes_are_unit_and_spread():
    axes = fibonacci_sphere_axes(500)
    assert axes.shape == (500, 3)
    np.testing.assert_allclose(np.linalg.norm(axes, axis=1), 1.0, atol=1e-12)
    # near-uniform coverage: mean close to zero
    assert np.linalg.norm(axes.mean(axis=0)) < 0.01

def test_fibonacci_rejects_bad_count():
    with pytest.raises(ValueError):
        fibonacci_sphere_axes(0)


def quad_form(matrix):
    return lambda axis: float(axis @ matrix @ axis)


def test_search_finds_quadratic_extrema():
    matrix = np.diag([0.9, 0.3, 0.1])
    value, axis = search_axis(quad_form(matrix), maximize=True,
                              grid_points=300, refine_iters=200)
    assert abs(value - 0.9) < 1e-9
    assert abs(abs(axis[0]) - 1.0) < 1e-4
    value, axis = search_axis(quad_form(matrix), maximize=False,
                              grid_points=300, refine_iters=200)
    assert abs(value - 0.1) < 1e-9


def test_search_handles_polar_optimum():
    # optimum along z, where naive spherical coordinates degenerate
    matrix = np.diag([0.1, 0.2, 1.0])
    value, axis = search_axis(quad_form(matrix), maximize=True,
                              grid_points=300, refine_iters=200)
    assert abs(value - 1.0) < 1e-9
    assert abs(abs(axis[2]) - 1.0) < 1e-4


def test_search_uses_batch_objective():
    matrix = np.diag([0.5, 0.25, 0.0])
    calls = {"batch": 0}

    def batch(axes):
        calls["batch"] += 1
        return np.einsum("ki,ij,kj->k", axes, matrix, axes)

    value, _ = search_axis(quad_form(matrix), maximize=True, grid_points=200,
                           refine_iters=150, batch_objective=batch)
    assert calls["batch"] == 1
    assert abs(value - 0.5) < 1e-9


def test_search_off_axis_rotated_form():
    rng = np.random.default_rng(17)
    basis, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    matrix = basis @ np.diag([0.8, 0.5, 0.2]) @ basis.T
    value, axis = search_axis(quad_form(matrix), maximize=True,
                              grid_points=400, refine_iters=200)
    assert abs(value - 0.8) < 1e-9
    assert abs(abs(axis @ basis[:, 0]) - 1.0) < 1e-4


def test_refine_is_deterministic():
    matrix = np.diag([0.7, 0.3, 0.2])
    first = refine_axis(quad_form(matrix), np.array([0.6, 0.8, 0.0]),
                        maximize=True)
    second = refine_axis(quad_form(matrix), np.array([0.6, 0.8, 0.0]),
                         maximize=True)
    assert first[0] == second[0]
    np.testing.assert_array_equal(first[1], second[1])
