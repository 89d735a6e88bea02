"""Quadrature grids and frames on the unit sphere."""

from functools import lru_cache
from typing import NamedTuple, Tuple

import numpy as np

from quantum_fragments.constants import MIN_RESOLUTION
from quantum_fragments.exceptions import InvalidParameterError


class SphereGrid(NamedTuple):
    points: np.ndarray  # (K, 3) unit vectors
    weights: np.ndarray  # (K,) area elements summing to ~4*pi
    theta: np.ndarray  # (K,) polar angle of each point


def check_resolution(resolution: Tuple[int, int]) -> None:
    n_theta, n_phi = resolution
    if n_theta < MIN_RESOLUTION[0] or n_phi < MIN_RESOLUTION[1]:
        raise InvalidParameterError(
            f"Resolution {n_theta}x{n_phi} is below the minimum "
            f"{MIN_RESOLUTION[0]}x{MIN_RESOLUTION[1]}"
        )


@lru_cache(maxsize=8)
def sphere_grid(n_theta: int, n_phi: int) -> SphereGrid:
    """Midpoint product rule on (theta, phi) with sin(theta) weights."""
    check_resolution((n_theta, n_phi))
    d_theta = np.pi / n_theta
    d_phi = 2 * np.pi / n_phi
    theta = (np.arange(n_theta) + 0.5) * d_theta
    phi = (np.arange(n_phi) + 0.5) * d_phi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    sin_t = np.sin(tt)
    points = np.stack([sin_t * np.cos(pp), sin_t * np.sin(pp), np.cos(tt)], axis=-1).reshape(-1, 3)
    weights = (sin_t * d_theta * d_phi).reshape(-1)
    flat_theta = tt.reshape(-1)
    for array in (points, weights, flat_theta):
        array.setflags(write=False)
    return SphereGrid(points=points, weights=weights, theta=flat_theta)


def frame(axis: np.ndarray) -> np.ndarray:
    """Rotation whose third column is the unit vector axis."""
    axis = np.asarray(axis, dtype=float)
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(helper, axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return np.column_stack([e1, e2, axis])
