"""Direction search over the unit sphere.

Two-stage scheme used by all measurement-axis optimizations: a
Fibonacci-lattice scan of the sphere followed by Nelder-Mead refinement
in spherical coordinates. The spherical frame is rotated so the
incumbent sits on the equator, keeping the parametrization smooth near
the optimum regardless of where the grid stage landed.

The simplex loop is implemented here rather than taken from an
optimization library: refinements run millions of times inside sweeps
and per-call framework overhead was measured to dominate the objective
evaluations themselves.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

DEFAULT_GRID_POINTS = 1000
DEFAULT_REFINE_ITERS = 200
OBJECTIVE_TOL = 1e-10

_GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))


def fibonacci_sphere_axes(count: int) -> np.ndarray:
    """Near-uniform ``count`` x 3 array of unit vectors on the sphere."""
    if count < 1:
        raise ValueError("count must be >= 1")
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    theta = _GOLDEN_ANGLE * i
    return np.stack([r * np.cos(theta), r * np.sin(theta), z], axis=1)


def _nelder_mead_2d(f: Callable[[np.ndarray], float], x0: np.ndarray,
                    step: float, max_iters: int,
                    ftol: float) -> tuple[np.ndarray, float]:
    """Minimize a smooth R^2 -> R function; stops when the simplex
    f-spread drops below ``ftol``. Standard coefficients (1, 2, 1/2, 1/2)."""
    points = [np.array(x0, dtype=float),
              np.array([x0[0] + step, x0[1]]),
              np.array([x0[0], x0[1] + step])]
    values = [f(p) for p in points]

    for _ in range(max_iters):
        order = np.argsort(values)
        points = [points[i] for i in order]
        values = [values[i] for i in order]
        if values[2] - values[0] < ftol:
            break
        centroid = 0.5 * (points[0] + points[1])
        reflected = centroid + (centroid - points[2])
        f_r = f(reflected)
        if f_r < values[0]:
            expanded = centroid + 2.0 * (centroid - points[2])
            f_e = f(expanded)
            if f_e < f_r:
                points[2], values[2] = expanded, f_e
            else:
                points[2], values[2] = reflected, f_r
        elif f_r < values[1]:
            points[2], values[2] = reflected, f_r
        else:
            inside = f_r >= values[2]
            contracted = centroid + 0.5 * ((points[2] if inside else reflected)
                                           - centroid)
            f_c = f(contracted)
            if f_c < min(f_r, values[2]):
                points[2], values[2] = contracted, f_c
            else:
                for i in (1, 2):
                    points[i] = points[0] + 0.5 * (points[i] - points[0])
                    values[i] = f(points[i])

    best = int(np.argmin(values))
    return points[best], values[best]


def _equator_frame(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal (u, v) completing ``axis`` to a right-handed frame."""
    probe = np.zeros(3)
    probe[np.argmin(np.abs(axis))] = 1.0
    u = np.cross(axis, probe)
    u /= np.linalg.norm(u)
    v = np.cross(axis, u)
    return u, v


def refine_axis(
    objective: Callable[[np.ndarray], float],
    axis: np.ndarray,
    *,
    maximize: bool,
    max_iters: int = DEFAULT_REFINE_ITERS,
    simplex_scale: float = 0.15,
) -> tuple[float, np.ndarray]:
    """Polish ``axis`` with Nelder-Mead; returns (objective value, axis).

    Coordinates are spherical angles in a frame where ``axis`` lies on
    the equator at (theta, phi) = (pi/2, 0), so the start is far from
    the polar coordinate singularities.
    """
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    u, v = _equator_frame(axis)
    sign = -1.0 if maximize else 1.0

    def to_axis(angles: np.ndarray) -> np.ndarray:
        theta, phi = angles
        return (np.sin(theta) * np.cos(phi) * axis
                + np.sin(theta) * np.sin(phi) * u
                + np.cos(theta) * v)

    start = np.array([np.pi / 2.0, 0.0])
    best_angles, best_value = _nelder_mead_2d(
        lambda angles: sign * objective(to_axis(angles)),
        start, simplex_scale, max_iters, OBJECTIVE_TOL)
    best_axis = to_axis(best_angles)
    best_axis /= np.linalg.norm(best_axis)
    return sign * best_value, best_axis


def search_axis(
    objective: Callable[[np.ndarray], float],
    *,
    maximize: bool,
    grid_points: int = DEFAULT_GRID_POINTS,
    refine_iters: int = DEFAULT_REFINE_ITERS,
    batch_objective: Callable[[np.ndarray], np.ndarray] | None = None,
    candidates: int = 2,
) -> tuple[float, np.ndarray]:
    """Global grid scan plus local refinement of the best candidates.

    ``batch_objective``, when provided, evaluates a (k, 3) array of axes
    in one call; otherwise the scalar objective is looped over the grid.
    Up to ``candidates`` mutually separated grid points are considered;
    after the best is refined, the others are only refined when their
    grid value is close enough to plausibly belong to a deeper basin.
    Results depend only on the inputs, never on evaluation order.
    """
    axes = fibonacci_sphere_axes(grid_points)
    if batch_objective is not None:
        values = np.asarray(batch_objective(axes), dtype=float)
    else:
        values = np.array([objective(ax) for ax in axes])

    order = np.argsort(values)
    if maximize:
        order = order[::-1]

    picked: list[int] = []
    for idx in order:
        if any(abs(axes[idx] @ axes[j]) > 0.95 for j in picked):
            continue
        picked.append(int(idx))
        if len(picked) >= candidates:
            break

    sign = -1.0 if maximize else 1.0
    best_value, best_axis = refine_axis(objective, axes[picked[0]],
                                        maximize=maximize,
                                        max_iters=refine_iters)
    # How much refinement moved the objective sets the scale below
    # which another grid basin could still hide a better optimum.
    margin = 10.0 * abs(best_value - values[picked[0]]) + 1e-8
    for idx in picked[1:]:
        if sign * (values[idx] - values[picked[0]]) > margin:
            continue
        value, axis = refine_axis(objective, axes[idx],
                                  maximize=maximize, max_iters=refine_iters)
        if sign * (value - best_value) < 0.0:
            best_value, best_axis = value, axis
    return float(best_value), best_axis
