import math

import numpy as np
import pytest

from quantum_fragments.exceptions import InvalidParameterError
from quantum_fragments.utils.sphere import check_resolution, frame, sphere_grid


def test_weights_cover_the_sphere():
    grid = sphere_grid(64, 128)
    assert grid.weights.sum() == pytest.approx(4 * math.pi, rel=1e-3)
    assert grid.points.shape == (64 * 128, 3)
    assert np.allclose(np.linalg.norm(grid.points, axis=1), 1.0)


def test_grid_is_read_only():
    grid = sphere_grid(16, 32)
    with pytest.raises(ValueError):
        grid.weights[0] = 0.0


def test_minimum_resolution():
    check_resolution((16, 32))
    with pytest.raises(InvalidParameterError, match="below the minimum 16x32"):
        check_resolution((15, 32))


@pytest.mark.parametrize("axis", [[0, 0, 1], [1, 0, 0], [0.6, 0.0, -0.8]])
def test_frame_is_a_rotation(axis):
    rotation = frame(np.array(axis, dtype=float))
    assert np.allclose(rotation.T @ rotation, np.eye(3))
    assert np.allclose(rotation[:, 2], axis)
